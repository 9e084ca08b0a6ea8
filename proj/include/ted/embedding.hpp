#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ted/cover.hpp"
#include "ted/graph.hpp"
#include "ted/parallel.hpp"

namespace ted {

/// mapping[i] = data-graph vertex assigned to pattern vertex i. Injective,
/// label-preserving, and every pattern edge maps to a data edge of equal label.
using Embedding = std::vector<int32_t>;

inline constexpr long long kDefaultEmbeddingGuard = 10'000'000;

namespace detail {

/// Backtracking matcher. Pattern vertices are matched in index order; the
/// candidates for each vertex are scanned in ascending data-vertex order, so
/// emission order is deterministic. After the first vertex, candidates come
/// from the neighborhood of an already-matched pattern neighbor when one
/// exists (patterns are connected, so after materialization one always does).
class Matcher {
 public:
  Matcher(const Graph& p, const Graph& g, long long guard)
      : p_(p), g_(g), guard_(guard), map_(p.n_vertices(), -1), used_(g.n_vertices(), 0) {
    anchors_.resize(static_cast<size_t>(p.n_vertices()), -1);
    back_edges_.resize(static_cast<size_t>(p.n_vertices()));
    for (int32_t i = 0; i < p.n_vertices(); ++i) {
      for (const Graph::Incidence& inc : p.incidence(i)) {
        if (inc.nbr < i) {
          if (anchors_[static_cast<size_t>(i)] < 0) anchors_[static_cast<size_t>(i)] = inc.nbr;
          back_edges_[static_cast<size_t>(i)].push_back({inc.nbr, inc.edge});
        }
      }
    }
  }

  // fn(const Embedding&) -> bool; false stops the whole enumeration.
  template <class Fn>
  void run(Fn&& fn) {
    rec(0, fn);
  }

 private:
  template <class Fn>
  bool rec(int32_t i, Fn&& fn) {
    if (i == p_.n_vertices()) return fn(static_cast<const Embedding&>(map_));
    int32_t anchor = anchors_[static_cast<size_t>(i)];
    if (anchor >= 0) {
      for (const Graph::Incidence& inc : g_.incidence(map_[static_cast<size_t>(anchor)])) {
        if (!try_vertex(i, inc.nbr)) continue;
        if (!descend(i, inc.nbr, fn)) return false;
      }
    } else {
      for (int32_t w = 0; w < g_.n_vertices(); ++w) {
        if (!try_vertex(i, w)) continue;
        if (!descend(i, w, fn)) return false;
      }
    }
    return true;
  }

  template <class Fn>
  bool descend(int32_t i, int32_t w, Fn&& fn) {
    map_[static_cast<size_t>(i)] = w;
    used_[static_cast<size_t>(w)] = 1;
    bool go_on = rec(i + 1, fn);
    used_[static_cast<size_t>(w)] = 0;
    map_[static_cast<size_t>(i)] = -1;
    return go_on;
  }

  bool try_vertex(int32_t i, int32_t w) {
    if (++steps_ > guard_)
      throw ResourceError("embedding guard exceeded (" + std::to_string(guard_) +
                          " steps) matching a " + std::to_string(p_.n_edges()) +
                          "-edge pattern in graph " + std::to_string(g_.id));
    if (used_[static_cast<size_t>(w)]) return false;
    if (!(p_.vlabel(i) == g_.vlabel(w))) return false;
    for (const auto& [j, pe] : back_edges_[static_cast<size_t>(i)]) {
      int32_t ge = g_.find_edge(map_[static_cast<size_t>(j)], w);
      if (ge < 0) return false;
      if (!(g_.edges[static_cast<size_t>(ge)].label == p_.edges[static_cast<size_t>(pe)].label))
        return false;
    }
    return true;
  }

  const Graph& p_;
  const Graph& g_;
  long long guard_;
  long long steps_ = 0;
  Embedding map_;
  std::vector<char> used_;
  std::vector<int32_t> anchors_;
  std::vector<std::vector<std::pair<int32_t, int32_t>>> back_edges_;  // (pattern vertex, pattern edge)
};

}  // namespace detail

template <class Fn>
void for_each_embedding(const Graph& p, const Graph& g, long long guard, Fn&& fn) {
  detail::Matcher m(p, g, guard);
  m.run(fn);
}

/// Every subgraph isomorphism of p into g, automorphic variants included,
/// in deterministic (lexicographic) order.
inline std::vector<Embedding> enumerate_embeddings(const Graph& p, const Graph& g,
                                                   long long guard = kDefaultEmbeddingGuard) {
  std::vector<Embedding> out;
  for_each_embedding(p, g, guard, [&](const Embedding& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

/// True iff at least one embedding exists; stops at the first one.
inline bool contains(const Graph& p, const Graph& g, long long guard = kDefaultEmbeddingGuard) {
  if (p.n_vertices() > g.n_vertices() || p.n_edges() > g.n_edges()) return false;
  bool found = false;
  for_each_embedding(p, g, guard, [&](const Embedding&) {
    found = true;
    return false;
  });
  return found;
}

/// Union over all embeddings of the images of p's edges, as EdgeRefs with
/// graph_id = g.id. Empty iff contains(p, g) is false.
inline CoverSet cover_set(const Graph& p, const Graph& g, long long guard = kDefaultEmbeddingGuard) {
  std::vector<char> hit(static_cast<size_t>(g.n_edges()), 0);
  for_each_embedding(p, g, guard, [&](const Embedding& f) {
    for (const Graph::Edge& pe : p.edges) {
      int32_t ge = g.find_edge(f[static_cast<size_t>(pe.u)], f[static_cast<size_t>(pe.v)]);
      hit[static_cast<size_t>(ge)] = 1;
    }
    return true;
  });
  std::vector<EdgeRef> refs;
  for (int32_t e = 0; e < g.n_edges(); ++e)
    if (hit[static_cast<size_t>(e)]) refs.push_back({g.id, e});
  return CoverSet::from_sorted(std::move(refs));
}

/// Union of cover_set(p, G) over all G in db. Per-graph cover sets may be
/// computed concurrently; the merged result is identical to the sequential run.
inline CoverSet cover_set_db(const Graph& p, const GraphDatabase& db,
                             long long guard = kDefaultEmbeddingGuard, int threads = 1) {
  std::vector<CoverSet> per(db.size());
  parallel_for(db.size(), threads, [&](size_t i) { per[i] = cover_set(p, db[i], guard); });
  std::vector<EdgeRef> refs;
  for (const CoverSet& c : per) refs.insert(refs.end(), c.begin(), c.end());
  return CoverSet::from_sorted(std::move(refs));
}

}  // namespace ted
