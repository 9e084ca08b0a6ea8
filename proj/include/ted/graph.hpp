#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ted/errors.hpp"
#include "ted/labels.hpp"

namespace ted {

/// Identity of one data edge: position of the graph in its database plus the
/// position of the edge in that graph's edge list. Ordered lexicographically.
struct EdgeRef {
  int32_t graph_id = 0;
  int32_t edge_id = 0;

  auto operator<=>(const EdgeRef&) const = default;
};

struct EdgeRefHash {
  size_t operator()(const EdgeRef& e) const {
    return (static_cast<uint64_t>(static_cast<uint32_t>(e.graph_id)) << 32) |
           static_cast<uint32_t>(e.edge_id);
  }
};

/// Labeled undirected simple connected graph. Vertices are 0..n-1; the edge
/// list position is the stable edge id. Call finalize() after construction;
/// it validates the invariants and builds the adjacency structure.
class Graph {
 public:
  struct Edge {
    int32_t u;
    int32_t v;
    EdgeLabel label;
  };

  struct Incidence {
    int32_t nbr;
    int32_t edge;
  };

  int32_t id = -1;
  std::vector<VertexLabel> vertex_labels;
  std::vector<Edge> edges;

  int32_t n_vertices() const { return static_cast<int32_t>(vertex_labels.size()); }
  int32_t n_edges() const { return static_cast<int32_t>(edges.size()); }

  VertexLabel vlabel(int32_t v) const { return vertex_labels[static_cast<size_t>(v)]; }

  /// Incident edges of v sorted by (neighbor, edge id).
  const std::vector<Incidence>& incidence(int32_t v) const { return adj_[static_cast<size_t>(v)]; }

  /// Edge id between u and v, or -1.
  int32_t find_edge(int32_t u, int32_t v) const {
    auto it = edge_by_pair_.find(pair_key(u, v));
    return it == edge_by_pair_.end() ? -1 : it->second;
  }

  bool finalized() const { return finalized_; }

  void finalize() {
    const std::string who = name();
    if (vertex_labels.empty()) throw StructuralError(who + ": no vertices");
    for (const VertexLabel& l : vertex_labels)
      if (!l.valid()) throw StructuralError(who + ": invalid vertex label");
    adj_.assign(vertex_labels.size(), {});
    edge_by_pair_.clear();
    edge_by_pair_.reserve(edges.size() * 2);
    for (int32_t e = 0; e < n_edges(); ++e) {
      const Edge& ed = edges[static_cast<size_t>(e)];
      if (ed.u < 0 || ed.u >= n_vertices() || ed.v < 0 || ed.v >= n_vertices())
        throw StructuralError(who + ": edge " + std::to_string(e) + " references an undeclared vertex");
      if (ed.u == ed.v)
        throw StructuralError(who + ": self-loop at vertex " + std::to_string(ed.u));
      if (!ed.label.valid()) throw StructuralError(who + ": edge without label");
      auto [it, inserted] = edge_by_pair_.try_emplace(pair_key(ed.u, ed.v), e);
      if (!inserted)
        throw StructuralError(who + ": duplicate edge {" + std::to_string(ed.u) + "," +
                              std::to_string(ed.v) + "}");
      adj_[static_cast<size_t>(ed.u)].push_back({ed.v, e});
      adj_[static_cast<size_t>(ed.v)].push_back({ed.u, e});
    }
    for (auto& inc : adj_)
      std::sort(inc.begin(), inc.end(), [](const Incidence& a, const Incidence& b) {
        return std::tie(a.nbr, a.edge) < std::tie(b.nbr, b.edge);
      });
    check_connected(who);
    finalized_ = true;
  }

 private:
  std::string name() const {
    return id >= 0 ? "graph " + std::to_string(id) : std::string("pattern graph");
  }

  static uint64_t pair_key(int32_t u, int32_t v) {
    uint32_t a = static_cast<uint32_t>(std::min(u, v));
    uint32_t b = static_cast<uint32_t>(std::max(u, v));
    return (static_cast<uint64_t>(a) << 32) | b;
  }

  void check_connected(const std::string& who) const {
    std::vector<char> seen(vertex_labels.size(), 0);
    std::vector<int32_t> stack = {0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      int32_t v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : adj_[static_cast<size_t>(v)]) {
        if (!seen[static_cast<size_t>(inc.nbr)]) {
          seen[static_cast<size_t>(inc.nbr)] = 1;
          ++reached;
          stack.push_back(inc.nbr);
        }
      }
    }
    if (reached != vertex_labels.size()) {
      for (size_t v = 0; v < seen.size(); ++v)
        if (!seen[v])
          throw StructuralError(who + ": disconnected (vertex " + std::to_string(v) +
                                " unreachable)");
    }
  }

  std::vector<std::vector<Incidence>> adj_;
  std::unordered_map<uint64_t, int32_t> edge_by_pair_;
  bool finalized_ = false;
};

/// Convenience builder. An empty edge-label string means "derive from the
/// endpoint labels".
inline Graph make_graph(const std::vector<std::string>& vlabels,
                        const std::vector<std::tuple<int, int, std::string>>& edges,
                        int id = -1) {
  Graph g;
  g.id = id;
  g.vertex_labels.reserve(vlabels.size());
  for (const std::string& l : vlabels) g.vertex_labels.push_back(Label::intern(l));
  for (const auto& [u, v, l] : edges) {
    EdgeLabel lab;
    if (l.empty()) {
      if (u < 0 || u >= static_cast<int>(vlabels.size()) || v < 0 ||
          v >= static_cast<int>(vlabels.size()))
        throw StructuralError("edge references an undeclared vertex");
      lab = derive_edge_label(g.vertex_labels[static_cast<size_t>(u)],
                              g.vertex_labels[static_cast<size_t>(v)]);
    } else {
      lab = Label::intern(l);
    }
    g.edges.push_back({u, v, lab});
  }
  g.finalize();
  return g;
}

/// Ordered collection of data graphs. Graph ids equal list positions.
struct GraphDatabase {
  std::vector<Graph> graphs;
  long long total_edges = 0;
  std::vector<long long> edge_offset;  // prefix sums; global edge numbering

  size_t size() const { return graphs.size(); }
  const Graph& operator[](size_t i) const { return graphs[i]; }

  void finalize() {
    total_edges = 0;
    edge_offset.assign(graphs.size() + 1, 0);
    for (size_t i = 0; i < graphs.size(); ++i) {
      graphs[i].id = static_cast<int32_t>(i);
      edge_offset[i] = total_edges;
      total_edges += graphs[i].n_edges();
    }
    edge_offset[graphs.size()] = total_edges;
  }

  long long global_edge_id(const EdgeRef& e) const {
    return edge_offset[static_cast<size_t>(e.graph_id)] + e.edge_id;
  }
};

inline GraphDatabase make_database(std::vector<Graph> graphs) {
  GraphDatabase db;
  db.graphs = std::move(graphs);
  db.finalize();
  return db;
}

}  // namespace ted
