#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "ted/cover.hpp"
#include "ted/embedding.hpp"
#include "ted/graph.hpp"

namespace ted {

/// One edge of a DFS code. `from`/`to` are discovery indices; forward tuples
/// discover a new vertex (from < to), backward tuples close a cycle back to
/// the right-most path (from > to).
struct DfsTuple {
  int32_t from = 0;
  int32_t to = 0;
  VertexLabel from_label;
  EdgeLabel edge_label;
  VertexLabel to_label;

  bool forward() const { return from < to; }
  bool operator==(const DfsTuple&) const = default;
};

/// Total order on code tuples. Backward before forward out of the same
/// vertex; backward tuples ascending by target, forward tuples by target then
/// deeper source first; labels break remaining ties lexicographically.
inline int tuple_cmp(const DfsTuple& a, const DfsTuple& b) {
  bool fa = a.forward(), fb = b.forward();
  if (!fa && fb) return a.from < b.to ? -1 : 1;
  if (fa && !fb) return a.to <= b.from ? -1 : 1;
  if (!fa && !fb) {
    if (a.from != b.from) return a.from < b.from ? -1 : 1;
    if (a.to != b.to) return a.to < b.to ? -1 : 1;
  } else {
    if (a.to != b.to) return a.to < b.to ? -1 : 1;
    if (a.from != b.from) return a.from > b.from ? -1 : 1;
  }
  if (int c = label_cmp(a.from_label, b.from_label)) return c;
  if (int c = label_cmp(a.edge_label, b.edge_label)) return c;
  return label_cmp(a.to_label, b.to_label);
}

inline bool tuple_less(const DfsTuple& a, const DfsTuple& b) { return tuple_cmp(a, b) < 0; }

/// Edge-tuple sequence of one DFS subscripting of a connected graph.
class DfsCode {
 public:
  DfsCode() = default;
  explicit DfsCode(std::vector<DfsTuple> tuples) : tuples_(std::move(tuples)) {}

  const std::vector<DfsTuple>& tuples() const { return tuples_; }
  size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  const DfsTuple& operator[](size_t i) const { return tuples_[i]; }

  void push(const DfsTuple& t) { tuples_.push_back(t); }

  int32_t n_vertices() const {
    int32_t m = -1;
    for (const DfsTuple& t : tuples_) m = std::max(m, std::max(t.from, t.to));
    return m + 1;
  }

  /// Vertices on the path from the root to the right-most vertex, root first.
  std::vector<int32_t> rightmost_path() const {
    int32_t n = n_vertices();
    std::vector<int32_t> parent(static_cast<size_t>(n), -1);
    for (const DfsTuple& t : tuples_)
      if (t.forward()) parent[static_cast<size_t>(t.to)] = t.from;
    std::vector<int32_t> path;
    for (int32_t v = n - 1; v >= 0; v = parent[static_cast<size_t>(v)]) {
      path.push_back(v);
      if (v == 0) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  bool has_edge(int32_t a, int32_t b) const {
    for (const DfsTuple& t : tuples_)
      if ((t.from == a && t.to == b) || (t.from == b && t.to == a)) return true;
    return false;
  }

  std::string str() const {
    std::ostringstream out;
    for (const DfsTuple& t : tuples_)
      out << "(" << t.from << "," << t.to << "," << t.from_label.str() << ","
          << t.edge_label.str() << "," << t.to_label.str() << ")";
    return out.str();
  }

  bool operator==(const DfsCode&) const = default;

 private:
  std::vector<DfsTuple> tuples_;
};

inline int code_cmp(const DfsCode& a, const DfsCode& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    return tuple_cmp(a[i], b[i]);
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

inline bool code_less(const DfsCode& a, const DfsCode& b) { return code_cmp(a, b) < 0; }

/// Materializes the graph a code describes. Vertex ids equal discovery
/// indices and edge ids equal tuple positions.
inline Graph graph_from_code(const DfsCode& code) {
  if (code.empty()) throw StateError("cannot materialize an empty code");
  Graph g;
  g.vertex_labels.assign(static_cast<size_t>(code.n_vertices()), VertexLabel());
  for (size_t i = 0; i < code.size(); ++i) {
    const DfsTuple& t = code[i];
    if (i == 0) {
      if (t.from != 0 || t.to != 1) throw StateError("code must start with (0,1,...)");
      g.vertex_labels[0] = t.from_label;
      g.vertex_labels[1] = t.to_label;
    } else if (t.forward()) {
      g.vertex_labels[static_cast<size_t>(t.to)] = t.to_label;
    }
    g.edges.push_back({t.from, t.to, t.edge_label});
  }
  g.finalize();
  return g;
}

/// Lexicographically smallest DFS code over all DFS subscriptings of g: the
/// canonical form (isomorphic graphs get equal codes). Built greedily by
/// keeping every partial subscripting that realizes the minimal prefix and
/// appending the minimal extension tuple at each step.
inline DfsCode min_dfs_code(const Graph& g) {
  if (g.n_edges() == 0) throw StateError("min_dfs_code requires at least one edge");

  struct State {
    std::vector<int32_t> map;     // discovery index -> g vertex
    std::vector<char> used_edge;  // g edge ids consumed by the code so far
    bool maps(int32_t v) const {
      for (int32_t m : map)
        if (m == v) return true;
      return false;
    }
  };

  DfsCode code;
  std::vector<State> states;

  // Minimal first tuple over all oriented edges.
  {
    DfsTuple best{};
    bool have = false;
    for (int32_t e = 0; e < g.n_edges(); ++e) {
      const Graph::Edge& ed = g.edges[static_cast<size_t>(e)];
      for (int o = 0; o < 2; ++o) {
        int32_t a = o ? ed.v : ed.u;
        int32_t b = o ? ed.u : ed.v;
        DfsTuple t{0, 1, g.vlabel(a), ed.label, g.vlabel(b)};
        int c = have ? tuple_cmp(t, best) : -1;
        if (c < 0) {
          best = t;
          have = true;
          states.clear();
        }
        if (c <= 0) {
          State s;
          s.map = {a, b};
          s.used_edge.assign(static_cast<size_t>(g.n_edges()), 0);
          s.used_edge[static_cast<size_t>(e)] = 1;
          states.push_back(std::move(s));
        }
      }
    }
    code.push(best);
  }

  while (static_cast<int32_t>(code.size()) < g.n_edges()) {
    std::vector<int32_t> rmpath = code.rightmost_path();
    int32_t rm = code.n_vertices() - 1;
    int32_t fresh = code.n_vertices();

    struct Ext {
      size_t state;
      int32_t eid;
      int32_t new_vertex;  // -1 for backward
    };
    DfsTuple best{};
    bool have = false;
    std::vector<Ext> exts;

    auto consider = [&](const DfsTuple& t, const Ext& e) {
      int c = have ? tuple_cmp(t, best) : -1;
      if (c < 0) {
        best = t;
        have = true;
        exts.clear();
      }
      if (c <= 0) exts.push_back(e);
    };

    for (size_t si = 0; si < states.size(); ++si) {
      const State& st = states[si];
      int32_t rm_v = st.map[static_cast<size_t>(rm)];
      for (int32_t j : rmpath) {
        if (j == rm || code.has_edge(rm, j)) continue;
        int32_t eid = g.find_edge(rm_v, st.map[static_cast<size_t>(j)]);
        if (eid < 0 || st.used_edge[static_cast<size_t>(eid)]) continue;
        DfsTuple t{rm, j, g.vlabel(rm_v), g.edges[static_cast<size_t>(eid)].label,
                   g.vlabel(st.map[static_cast<size_t>(j)])};
        consider(t, Ext{si, eid, -1});
      }
      for (int32_t x : rmpath) {
        int32_t x_v = st.map[static_cast<size_t>(x)];
        for (const Graph::Incidence& inc : g.incidence(x_v)) {
          if (st.used_edge[static_cast<size_t>(inc.edge)] || st.maps(inc.nbr)) continue;
          DfsTuple t{x, fresh, g.vlabel(x_v), g.edges[static_cast<size_t>(inc.edge)].label,
                     g.vlabel(inc.nbr)};
          consider(t, Ext{si, inc.edge, inc.nbr});
        }
      }
    }

    if (!have) throw StateError("min_dfs_code: no extension found on a connected graph");
    code.push(best);
    std::vector<State> next;
    next.reserve(exts.size());
    for (const Ext& e : exts) {
      State s = states[e.state];
      if (e.new_vertex >= 0) s.map.push_back(e.new_vertex);
      s.used_edge[static_cast<size_t>(e.eid)] = 1;
      next.push_back(std::move(s));
    }
    states = std::move(next);
  }
  return code;
}

inline bool is_min_code(const DfsCode& code) {
  return min_dfs_code(graph_from_code(code)) == code;
}

/// A mined pattern: canonical code, materialized graph, cached coverage over
/// the database, and the ids of the graphs containing it.
struct Pattern {
  DfsCode code;
  Graph graph;
  CoverSet cov;
  int32_t support_count = 0;
  std::vector<int32_t> containing_ids;

  std::string key() const { return code.str(); }
};

inline bool pattern_code_less(const Pattern& a, const Pattern& b) {
  return code_cmp(a.code, b.code) < 0;
}

}  // namespace ted
