#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "ted/dfs_code.hpp"
#include "ted/parallel.hpp"
#include "ted/util.hpp"

namespace ted {

inline constexpr long long kDefaultPoolGuard = 1'000'000;

/// Builds the Pattern for a code: coverage and containment are computed over
/// `candidates` only (growth never adds containing graphs, so children pass
/// their parent's containing set here). Per-graph work may run concurrently.
inline Pattern materialize_pattern(const DfsCode& code, const GraphDatabase& db,
                                   std::span<const int32_t> candidates, long long guard,
                                   int threads = 1) {
  Pattern p;
  p.code = code;
  p.graph = graph_from_code(code);
  std::vector<CoverSet> per(candidates.size());
  parallel_for(candidates.size(), threads,
               [&](size_t i) { per[i] = cover_set(p.graph, db[static_cast<size_t>(candidates[i])], guard); });
  std::vector<EdgeRef> refs;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (per[i].empty()) continue;
    p.containing_ids.push_back(candidates[i]);
    refs.insert(refs.end(), per[i].begin(), per[i].end());
  }
  p.support_count = static_cast<int32_t>(p.containing_ids.size());
  p.cov = CoverSet::from_sorted(std::move(refs));
  return p;
}

/// All isomorphism-distinct 1-edge patterns of the database, sorted by code.
inline std::vector<Pattern> seed_edge_patterns(const GraphDatabase& db, long long guard,
                                               int threads = 1) {
  auto cmp = [](const DfsCode& a, const DfsCode& b) { return code_less(a, b); };
  std::set<DfsCode, decltype(cmp)> codes(cmp);
  for (const Graph& g : db.graphs) {
    for (const Graph::Edge& e : g.edges) {
      VertexLabel lu = g.vlabel(e.u), lv = g.vlabel(e.v);
      if (label_less(lv, lu)) std::swap(lu, lv);
      codes.insert(DfsCode({DfsTuple{0, 1, lu, e.label, lv}}));
    }
  }
  std::vector<int32_t> all_ids;
  for (size_t i = 0; i < db.size(); ++i) all_ids.push_back(static_cast<int32_t>(i));
  std::vector<DfsCode> ordered(codes.begin(), codes.end());
  std::vector<Pattern> seeds(ordered.size());
  parallel_for(ordered.size(), threads,
               [&](size_t i) { seeds[i] = materialize_pattern(ordered[i], db, all_ids, guard, 1); });
  return seeds;
}

/// Raw right-most extension tuples of p, grounded in its embeddings: backward
/// tuples from the right-most vertex to right-most-path vertices, forward
/// tuples from right-most-path vertices to a fresh vertex. Sorted, unique.
inline std::vector<DfsTuple> collect_extension_tuples(const Pattern& p, const GraphDatabase& db,
                                                      long long guard) {
  std::set<DfsTuple, decltype(&tuple_less)> tuples(&tuple_less);
  std::vector<int32_t> rmpath = p.code.rightmost_path();
  int32_t rm = p.graph.n_vertices() - 1;
  int32_t fresh = p.graph.n_vertices();
  std::vector<char> mapped;
  for (int32_t gid : p.containing_ids) {
    const Graph& g = db[static_cast<size_t>(gid)];
    for_each_embedding(p.graph, g, guard, [&](const Embedding& f) {
      // backward: data edge exists between the images, pattern edge does not
      for (int32_t j : rmpath) {
        if (j == rm || p.graph.find_edge(rm, j) >= 0) continue;
        int32_t eid = g.find_edge(f[static_cast<size_t>(rm)], f[static_cast<size_t>(j)]);
        if (eid < 0) continue;
        tuples.insert(DfsTuple{rm, j, p.graph.vlabel(rm),
                               g.edges[static_cast<size_t>(eid)].label, p.graph.vlabel(j)});
      }
      // forward: edge to a data vertex outside the embedding image
      mapped.assign(static_cast<size_t>(g.n_vertices()), 0);
      for (int32_t v : f) mapped[static_cast<size_t>(v)] = 1;
      for (int32_t x : rmpath) {
        for (const Graph::Incidence& inc : g.incidence(f[static_cast<size_t>(x)])) {
          if (mapped[static_cast<size_t>(inc.nbr)]) continue;
          tuples.insert(DfsTuple{x, fresh, p.graph.vlabel(x),
                                 g.edges[static_cast<size_t>(inc.edge)].label, g.vlabel(inc.nbr)});
        }
      }
      return true;
    });
  }
  return std::vector<DfsTuple>(tuples.begin(), tuples.end());
}

/// The (m+1)-edge children of p: one per extension tuple whose extended code
/// is canonical, in tuple order, each fully materialized. Children of a
/// max-size pattern must not be requested.
inline std::vector<Pattern> rightmost_extensions(const Pattern& p, const GraphDatabase& db,
                                                 int emax, long long guard, int threads = 1) {
  if (p.graph.n_edges() >= emax)
    throw StateError("rightmost_extensions called on a pattern of maximum size");
  std::vector<DfsTuple> tuples = collect_extension_tuples(p, db, guard);
  std::vector<std::optional<Pattern>> slots(tuples.size());
  parallel_for(tuples.size(), threads, [&](size_t i) {
    DfsCode child = p.code;
    child.push(tuples[i]);
    if (!is_min_code(child)) return;
    slots[i] = materialize_pattern(child, db, p.containing_ids, guard, 1);
  });
  std::vector<Pattern> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

inline double support(const Pattern& p, const GraphDatabase& db) {
  return static_cast<double>(p.support_count) / static_cast<double>(db.size());
}

/// support_count / |db| >= minsup, compared exactly.
inline bool meets_support(const Pattern& p, const GraphDatabase& db, const Fraction& minsup) {
  return static_cast<long long>(p.support_count) * minsup.den >=
         minsup.num * static_cast<long long>(db.size());
}

/// Single-consumer stream of every isomorphism-distinct connected subgraph
/// pattern with 1..emax edges, each exactly once, in DFS pre-order over the
/// extension tree. With minsup set, infrequent subtrees are pruned
/// (anti-monotone) and only frequent patterns are emitted.
class SubgraphStream {
 public:
  SubgraphStream(const GraphDatabase& db, int emax, std::optional<Fraction> minsup,
                 long long guard, int threads = 1, const Deadline* deadline = nullptr)
      : db_(db), emax_(emax), minsup_(minsup), guard_(guard), threads_(threads),
        deadline_(deadline) {
    std::vector<Pattern> seeds = seed_edge_patterns(db, guard, threads);
    for (auto it = seeds.rbegin(); it != seeds.rend(); ++it) {
      if (minsup_ && !meets_support(*it, db_, *minsup_)) continue;
      stack_.push_back(std::move(*it));
    }
  }

  std::optional<Pattern> next() {
    if (stack_.empty()) return std::nullopt;
    if (deadline_) deadline_->check();
    Pattern g = std::move(stack_.back());
    stack_.pop_back();
    if (g.graph.n_edges() < emax_) {
      std::vector<Pattern> kids = rightmost_extensions(g, db_, emax_, guard_, threads_);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
        if (minsup_ && !meets_support(*it, db_, *minsup_)) continue;
        stack_.push_back(std::move(*it));
      }
    }
    return g;
  }

 private:
  const GraphDatabase& db_;
  int emax_;
  std::optional<Fraction> minsup_;
  long long guard_;
  int threads_;
  const Deadline* deadline_;
  std::vector<Pattern> stack_;
};

namespace detail {
inline std::vector<Pattern> drain_stream(SubgraphStream& stream, long long pool_guard) {
  std::vector<Pattern> out;
  while (auto p = stream.next()) {
    out.push_back(std::move(*p));
    if (static_cast<long long>(out.size()) > pool_guard)
      throw ResourceError("candidate pool exceeded " + std::to_string(pool_guard) + " patterns");
  }
  return out;
}
}  // namespace detail

inline std::vector<Pattern> enum_all_subgraphs(const GraphDatabase& db, int emax,
                                               long long guard = kDefaultEmbeddingGuard,
                                               int threads = 1,
                                               long long pool_guard = kDefaultPoolGuard,
                                               const Deadline* deadline = nullptr) {
  SubgraphStream s(db, emax, std::nullopt, guard, threads, deadline);
  return detail::drain_stream(s, pool_guard);
}

inline std::vector<Pattern> enum_frequent(const GraphDatabase& db, int emax, const Fraction& minsup,
                                          long long guard = kDefaultEmbeddingGuard, int threads = 1,
                                          long long pool_guard = kDefaultPoolGuard,
                                          const Deadline* deadline = nullptr) {
  if (minsup.num <= 0 || minsup.num > minsup.den)
    throw ConfigError("minsup must be in (0,1], got " + minsup.str());
  SubgraphStream s(db, emax, minsup, guard, threads, deadline);
  return detail::drain_stream(s, pool_guard);
}

}  // namespace ted
