#pragma once

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

#include "ted/mining.hpp"

namespace ted {

/// Materialized candidate set for the greedy and exact searches.
struct CandidatePool {
  enum class Kind { all, frequent };
  std::vector<Pattern> patterns;  // pairwise non-isomorphic, enumeration order
  Kind kind = Kind::all;
  Fraction minsup{1, 1};
};

inline CandidatePool build_candidate_pool(const GraphDatabase& db, const MiningConfig& cfg,
                                          bool frequent, const Deadline& deadline) {
  CandidatePool pool;
  pool.kind = frequent ? CandidatePool::Kind::frequent : CandidatePool::Kind::all;
  pool.minsup = cfg.minsup;
  pool.patterns = frequent
                      ? enum_frequent(db, cfg.emax, cfg.minsup, cfg.embedding_guard, cfg.threads,
                                      cfg.pool_guard, &deadline)
                      : enum_all_subgraphs(db, cfg.emax, cfg.embedding_guard, cfg.threads,
                                           cfg.pool_guard, &deadline);
  return pool;
}

/// Greedy max-k-cover over the pool: k rounds of best marginal coverage,
/// ties to the smaller code. Stops early once the best marginal gain is 0 —
/// zero-gain picks are declined. Returns the picks in selection order.
inline std::vector<Pattern> max_cover(const CandidatePool& pool, int32_t k,
                                      const GraphDatabase& db) {
  if (k < 1) throw ConfigError("k must be >= 1");
  size_t n = pool.patterns.size();
  std::vector<Bits> cov(n);
  for (size_t i = 0; i < n; ++i) {
    Bits b(static_cast<size_t>(db.total_edges));
    for (const EdgeRef& e : pool.patterns[i].cov)
      b.set(static_cast<size_t>(db.global_edge_id(e)));
    cov[i] = std::move(b);
  }
  Bits covered(static_cast<size_t>(db.total_edges));
  std::vector<char> taken(n, 0);
  std::vector<Pattern> picks;
  for (int32_t round = 0; round < k; ++round) {
    size_t best = n;
    size_t best_gain = 0;
    for (size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      size_t gain = cov[i].count_andnot(covered);
      if (gain > best_gain ||
          (gain == best_gain && gain > 0 && best < n &&
           pattern_code_less(pool.patterns[i], pool.patterns[best])))
        best = i, best_gain = gain;
    }
    if (best == n || best_gain == 0) break;
    taken[best] = 1;
    covered.or_assign(cov[best]);
    picks.push_back(pool.patterns[best]);
  }
  return picks;
}

namespace detail {

inline MiningResult result_from_selection(std::vector<Pattern> picks, const GraphDatabase& db,
                                          long long pool_size,
                                          std::chrono::steady_clock::time_point t0) {
  MiningResult r;
  CoverSet all;
  for (const Pattern& p : picks) all = set_union(all, p.cov);
  r.total_coverage = static_cast<long long>(all.size());
  r.total_edges = db.total_edges;
  std::sort(picks.begin(), picks.end(), pattern_code_less);
  r.patterns = std::move(picks);
  r.metrics.patterns_enumerated = pool_size;
  r.metrics.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
  return r;
}

}  // namespace detail

/// Enumerate-everything-then-greedy baseline.
inline MiningResult mine_all_g(const GraphDatabase& db, const MiningConfig& cfg) {
  cfg.validate();
  if (db.size() == 0) throw ConfigError("database is empty");
  auto t0 = std::chrono::steady_clock::now();
  Deadline deadline = cfg.deadline();
  CandidatePool pool = build_candidate_pool(db, cfg, false, deadline);
  return detail::result_from_selection(max_cover(pool, cfg.k, db), db,
                                       static_cast<long long>(pool.patterns.size()), t0);
}

/// Frequent-subgraphs-then-greedy baseline.
inline MiningResult mine_fsg_g(const GraphDatabase& db, const MiningConfig& cfg) {
  cfg.validate();
  if (db.size() == 0) throw ConfigError("database is empty");
  auto t0 = std::chrono::steady_clock::now();
  Deadline deadline = cfg.deadline();
  CandidatePool pool = build_candidate_pool(db, cfg, true, deadline);
  return detail::result_from_selection(max_cover(pool, cfg.k, db), db,
                                       static_cast<long long>(pool.patterns.size()), t0);
}

/// Exact optimum by exhaustive subset search over the full candidate pool.
/// Guarded: the pool may not exceed opt_candidate_cap and the subset count may
/// not exceed 10^7. Subsets are scanned smallest-first in lexicographic code
/// order, so ties go to the smallest subset with the smallest code sequence.
inline MiningResult brute_force_optimal(const GraphDatabase& db, const MiningConfig& cfg) {
  cfg.validate();
  if (db.size() == 0) throw ConfigError("database is empty");
  auto t0 = std::chrono::steady_clock::now();
  Deadline deadline = cfg.deadline();

  std::vector<Pattern> pool;
  {
    SubgraphStream stream(db, cfg.emax, std::nullopt, cfg.embedding_guard, cfg.threads, &deadline);
    while (auto p = stream.next()) {
      pool.push_back(std::move(*p));
      if (static_cast<long long>(pool.size()) > cfg.opt_candidate_cap)
        throw CapacityError("opt: candidate pool exceeds opt_candidate_cap=" +
                            std::to_string(cfg.opt_candidate_cap));
    }
  }
  std::sort(pool.begin(), pool.end(), pattern_code_less);

  size_t n = pool.size();
  size_t m = std::min<size_t>(static_cast<size_t>(cfg.k), n);
  constexpr unsigned long long kMaxSubsets = 10'000'000;
  unsigned long long subsets = 0;
  for (size_t s = 1; s <= m; ++s) {
    unsigned long long c = 1;
    for (size_t i = 0; i < s; ++i) {
      c = c * (n - i) / (i + 1);
      if (c > kMaxSubsets) break;
    }
    subsets += c;
    if (subsets > kMaxSubsets)
      throw CapacityError("opt: subset count for " + std::to_string(n) + " candidates, k=" +
                          std::to_string(cfg.k) + " exceeds " + std::to_string(kMaxSubsets));
  }

  std::vector<Bits> cov(n);
  for (size_t i = 0; i < n; ++i) {
    Bits b(static_cast<size_t>(db.total_edges));
    for (const EdgeRef& e : pool[i].cov) b.set(static_cast<size_t>(db.global_edge_id(e)));
    cov[i] = std::move(b);
  }

  size_t best_count = 0;
  std::vector<size_t> best_subset;
  std::vector<size_t> chosen;
  std::vector<Bits> prefix;  // union of chosen covs, one per depth
  prefix.emplace_back(static_cast<size_t>(db.total_edges));
  long long steps = 0;

  auto scan = [&](auto&& self, size_t start, size_t want) -> void {
    if (want == 0) {
      size_t c = prefix.back().count();
      if (c > best_count) {
        best_count = c;
        best_subset = chosen;
      }
      return;
    }
    for (size_t i = start; i + want <= n; ++i) {
      if ((++steps & 0xfff) == 0) deadline.check();
      chosen.push_back(i);
      Bits next = prefix.back();
      next.or_assign(cov[i]);
      prefix.push_back(std::move(next));
      self(self, i + 1, want - 1);
      prefix.pop_back();
      chosen.pop_back();
    }
  };
  for (size_t s = 1; s <= m; ++s) scan(scan, 0, s);

  std::vector<Pattern> picks;
  for (size_t i : best_subset) picks.push_back(pool[i]);
  return detail::result_from_selection(std::move(picks), db, static_cast<long long>(n), t0);
}

inline MiningResult run_algorithm(const GraphDatabase& db, const MiningConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::base: return mine_ted_base(db, cfg);
    case Algorithm::prm: return mine_ted_prm(db, cfg);
    case Algorithm::ips: return mine_ted_ips(db, cfg);
    case Algorithm::ted: return mine_ted(db, cfg);
    case Algorithm::all_t: return mine_all_t(db, cfg);
    case Algorithm::fsg_t: return mine_fsg_t(db, cfg);
    case Algorithm::all_g: return mine_all_g(db, cfg);
    case Algorithm::fsg_g: return mine_fsg_g(db, cfg);
    case Algorithm::opt: return brute_force_optimal(db, cfg);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace ted
