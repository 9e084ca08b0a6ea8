#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ted/dfs_code.hpp"
#include "ted/util.hpp"

namespace ted {

/// Swapping criteria: admit a candidate with benefit score_b against the
/// current minimum loss score_l iff
///   score_b > (1+alpha)*score_l + (1-alpha)*total_coverage/k.
/// Evaluated in exact integer arithmetic. alpha = 1, 0, interior select the
/// three criterion variants.
inline bool swap_decision(long long score_b, long long score_l, const Fraction& alpha,
                          long long total_coverage, long long k) {
  if (alpha.num > alpha.den) throw ConfigError("alpha must be in [0,1], got " + alpha.str());
  if (k < 1) throw ConfigError("k must be >= 1");
  using I = __int128;
  I lhs = I(score_b) * alpha.den * k;
  I rhs = I(alpha.den + alpha.num) * score_l * k + I(alpha.den - alpha.num) * total_coverage;
  return lhs > rhs;
}

/// Loss score of patterns[which] by direct set algebra: edges covered by it
/// and by no other member. Oracle for the indexed computation.
inline long long loss_score_naive(std::span<const Pattern> patterns, size_t which) {
  if (which >= patterns.size()) throw StateError("loss_score_naive: pattern not in set");
  CoverSet others;
  for (size_t i = 0; i < patterns.size(); ++i)
    if (i != which) others = set_union(others, patterns[i].cov);
  return static_cast<long long>(set_difference(patterns[which].cov, others).size());
}

/// Benefit score of a candidate cover set by direct set algebra: its edges
/// not covered by any member. Oracle for the indexed computation.
inline long long benefit_score_naive(std::span<const Pattern> patterns, const CoverSet& cand) {
  CoverSet all;
  for (const Pattern& p : patterns) all = set_union(all, p.cov);
  return static_cast<long long>(set_difference(cand, all).size());
}

/// Coverage index over the current pattern set: total coverage, private
/// coverage per pattern, reverse cover sets per edge, reverse counting cells,
/// and the minimum-private-coverage holder. Single writer; reads may run
/// concurrently with each other but never with a mutation.
class PesIndex {
 public:
  PesIndex(const GraphDatabase& db, int32_t k) : db_(&db), k_(k) {
    if (k < 1) throw ConfigError("k must be >= 1");
    covered_per_graph_.assign(db.size(), 0);
  }

  int32_t capacity() const { return k_; }
  int32_t size() const { return static_cast<int32_t>(by_key_.size()); }
  long long total_coverage() const { return total_coverage_; }

  bool contains_code(const std::string& key) const { return by_key_.count(key) != 0; }

  /// Residents in insertion order (the min-loss tie-break order).
  std::vector<const Pattern*> residents() const {
    std::vector<std::pair<uint64_t, const Pattern*>> seq;
    for (const auto& slot : slots_)
      if (slot) seq.emplace_back(slot->seq, &slot->pattern);
    std::sort(seq.begin(), seq.end());
    std::vector<const Pattern*> out;
    for (auto& [s, p] : seq) out.push_back(p);
    return out;
  }

  void insert(const Pattern& p) {
    ScopeTimer timer(maint_ns_);
    insert_impl(p);
  }

  void erase(const Pattern& p) {
    ScopeTimer timer(maint_ns_);
    erase_impl(p.key());
  }

  /// delete(out) then insert(in), as one maintenance step.
  void swap(const Pattern& out, const Pattern& in) {
    ScopeTimer timer(maint_ns_);
    const std::string out_key = out.key();
    if (!by_key_.count(out_key)) throw StateError("swap: outgoing pattern not present");
    if (by_key_.count(in.key())) throw StateError("swap: incoming pattern already present");
    erase_impl(out_key);
    insert_impl(in);
  }

  /// Least private coverage and its holder; ties go to the earliest-inserted
  /// pattern (then smaller code, which insertion order already implies).
  std::pair<long long, const Pattern*> min_loss() const {
    ScopeTimer timer(maint_ns_);
    if (by_key_.empty()) throw StateError("min_loss on an empty index");
    const auto& cell = *rcnt_.begin();
    int32_t slot = cell.second.begin()->second;
    return {cell.first, &slots_[static_cast<size_t>(slot)]->pattern};
  }

  /// Candidate edges not covered by any resident pattern.
  long long benefit(const CoverSet& cand) const {
    ScopeTimer timer(maint_ns_);
    long long b = 0;
    for (const EdgeRef& e : cand)
      if (!rcov_.count(e)) ++b;
    return b;
  }

  bool covers(const EdgeRef& e) const { return rcov_.count(e) != 0; }

  long long covered_in_graph(int32_t graph_id) const {
    return covered_per_graph_[static_cast<size_t>(graph_id)];
  }

  /// Estimated size of a compact serialization: per covered edge a varint
  /// EdgeRef plus a k-bit owner bitmap, plus the per-pattern tables.
  long long index_size_bytes() const {
    long long bytes = varint_size(static_cast<unsigned long long>(total_coverage_)) +
                      varint_size(static_cast<unsigned long long>(k_)) + 1;  // p_min slot
    for (const auto& slot : slots_) {
      if (!slot) continue;
      bytes += varint_size(static_cast<unsigned long long>(slot->private_cov)) + 1;
    }
    for (const auto& [count, cell] : rcnt_)
      bytes += varint_size(static_cast<unsigned long long>(count)) +
               static_cast<long long>(cell.size());
    long long owner_bytes = (k_ + 7) / 8;
    for (const auto& [ref, owners] : rcov_)
      bytes += varint_size(static_cast<unsigned long long>(ref.graph_id)) +
               varint_size(static_cast<unsigned long long>(ref.edge_id)) + owner_bytes;
    return bytes;
  }

  long long maintenance_nanos() const { return maint_ns_; }

  /// Full state for equality against a from-scratch rebuild.
  struct Snapshot {
    long long total_coverage = 0;
    std::vector<std::pair<std::string, long long>> private_cov;            // by pattern key
    std::vector<std::pair<EdgeRef, std::vector<std::string>>> rcov;        // owner keys sorted
    std::vector<std::pair<long long, std::vector<std::string>>> rcnt;      // cell keys sorted
    std::string p_min;

    bool operator==(const Snapshot&) const = default;
  };

  Snapshot snapshot() const {
    Snapshot s;
    s.total_coverage = total_coverage_;
    for (const auto& slot : slots_)
      if (slot) s.private_cov.emplace_back(slot->key, slot->private_cov);
    std::sort(s.private_cov.begin(), s.private_cov.end());
    for (const auto& [ref, owners] : rcov_) {
      std::vector<std::string> keys;
      for (int32_t o : owners) keys.push_back(slots_[static_cast<size_t>(o)]->key);
      std::sort(keys.begin(), keys.end());
      s.rcov.emplace_back(ref, std::move(keys));
    }
    std::sort(s.rcov.begin(), s.rcov.end());
    for (const auto& [count, cell] : rcnt_) {
      std::vector<std::string> keys;
      for (const auto& [seq, slot] : cell) keys.push_back(slots_[static_cast<size_t>(slot)]->key);
      std::sort(keys.begin(), keys.end());
      s.rcnt.emplace_back(count, std::move(keys));
    }
    if (!by_key_.empty()) s.p_min = min_loss_key();
    return s;
  }

 private:
  struct Entry {
    Pattern pattern;
    std::string key;
    long long private_cov = 0;
    uint64_t seq = 0;
  };

  struct ScopeTimer {
    explicit ScopeTimer(long long& acc)
        : acc_(acc), start_(std::chrono::steady_clock::now()) {}
    ~ScopeTimer() {
      acc_ += std::chrono::duration_cast<std::chrono::nanoseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    }
    long long& acc_;
    std::chrono::steady_clock::time_point start_;
  };

  std::string min_loss_key() const {
    const auto& cell = *rcnt_.begin();
    return slots_[static_cast<size_t>(cell.second.begin()->second)]->key;
  }

  void insert_impl(const Pattern& p) {
    std::string key = p.key();
    if (by_key_.count(key)) throw StateError("insert: pattern already present: " + key);
    if (size() >= k_) throw CapacityError("insert: index already holds k=" + std::to_string(k_) +
                                          " patterns");
    int32_t slot = -1;
    for (size_t i = 0; i < slots_.size(); ++i)
      if (!slots_[i]) {
        slot = static_cast<int32_t>(i);
        break;
      }
    if (slot < 0) {
      slots_.push_back(nullptr);
      slot = static_cast<int32_t>(slots_.size() - 1);
    }
    auto entry = std::make_unique<Entry>();
    entry->pattern = p;
    entry->key = key;
    entry->seq = next_seq_++;
    for (const EdgeRef& e : p.cov) {
      auto& owners = rcov_[e];
      owners.push_back(slot);
      if (owners.size() == 1) {
        ++total_coverage_;
        ++covered_per_graph_[static_cast<size_t>(e.graph_id)];
        ++entry->private_cov;
      } else if (owners.size() == 2) {
        int32_t other = owners[0] == slot ? owners[1] : owners[0];
        move_cell(other, -1);
      }
    }
    rcnt_[entry->private_cov][entry->seq] = slot;
    by_key_[key] = slot;
    slots_[static_cast<size_t>(slot)] = std::move(entry);
  }

  void erase_impl(const std::string& key) {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) throw StateError("delete: pattern not present: " + key);
    int32_t slot = it->second;
    Entry& entry = *slots_[static_cast<size_t>(slot)];
    drop_from_cell(entry.private_cov, entry.seq);
    for (const EdgeRef& e : entry.pattern.cov) {
      auto owners_it = rcov_.find(e);
      auto& owners = owners_it->second;
      owners.erase(std::find(owners.begin(), owners.end(), slot));
      if (owners.empty()) {
        rcov_.erase(owners_it);
        --total_coverage_;
        --covered_per_graph_[static_cast<size_t>(e.graph_id)];
      } else if (owners.size() == 1) {
        move_cell(owners[0], +1);
      }
    }
    by_key_.erase(it);
    slots_[static_cast<size_t>(slot)].reset();
  }

  void move_cell(int32_t slot, int delta) {
    Entry& entry = *slots_[static_cast<size_t>(slot)];
    drop_from_cell(entry.private_cov, entry.seq);
    entry.private_cov += delta;
    rcnt_[entry.private_cov][entry.seq] = slot;
  }

  void drop_from_cell(long long count, uint64_t seq) {
    auto cell = rcnt_.find(count);
    cell->second.erase(seq);
    if (cell->second.empty()) rcnt_.erase(cell);
  }

  const GraphDatabase* db_;
  int32_t k_;
  uint64_t next_seq_ = 0;
  long long total_coverage_ = 0;
  std::vector<std::unique_ptr<Entry>> slots_;
  std::map<std::string, int32_t> by_key_;
  std::unordered_map<EdgeRef, std::vector<int32_t>, EdgeRefHash> rcov_;
  std::map<long long, std::map<uint64_t, int32_t>> rcnt_;  // private count -> (seq -> slot)
  std::vector<long long> covered_per_graph_;
  mutable long long maint_ns_ = 0;
};

}  // namespace ted
