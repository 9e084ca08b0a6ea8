#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ted/graph.hpp"

namespace ted {

// Line-based interchange format:
//   t # <int>          starts a graph (the int is ignored; ids are reassigned)
//   v <vid> <label>    declares vertex <vid>; ids must be sequential from 0
//   e <u> <v> [<label>]  declares an edge; label derived from endpoints if absent
//   # ...              comment
// Blank lines are skipped. Vertices must precede the edges that use them.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline int parse_int(std::string_view tok, int line_no, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0)
    throw ParseError(line_no, std::string("expected non-negative integer for ") + what +
                                  ", got '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

inline GraphDatabase parse_database(std::istream& in) {
  GraphDatabase db;
  Graph cur;
  bool open = false;
  int graph_start_line = 0;
  int line_no = 0;
  std::string line;

  auto flush = [&]() {
    if (!open) return;
    cur.id = static_cast<int32_t>(db.graphs.size());
    try {
      cur.finalize();
    } catch (const StructuralError& e) {
      throw StructuralError(std::string(e.what()) + " (declared at line " +
                            std::to_string(graph_start_line) + ")");
    }
    db.graphs.push_back(std::move(cur));
    cur = Graph();
    open = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0][0] == '#') continue;
    if (toks[0] == "t") {
      if (toks.size() != 3 || toks[1] != "#")
        throw ParseError(line_no, "malformed graph header, expected 't # <int>'");
      detail::parse_int(toks[2], line_no, "graph id");
      flush();
      open = true;
      graph_start_line = line_no;
    } else if (toks[0] == "v") {
      if (!open) throw ParseError(line_no, "vertex outside of a graph");
      if (toks.size() != 3) throw ParseError(line_no, "malformed vertex line, expected 'v <id> <label>'");
      int vid = detail::parse_int(toks[1], line_no, "vertex id");
      if (vid != cur.n_vertices())
        throw ParseError(line_no, "vertex ids must be sequential, expected " +
                                      std::to_string(cur.n_vertices()) + " got " +
                                      std::to_string(vid));
      cur.vertex_labels.push_back(Label::intern(toks[2]));
    } else if (toks[0] == "e") {
      if (!open) throw ParseError(line_no, "edge outside of a graph");
      if (toks.size() != 3 && toks.size() != 4)
        throw ParseError(line_no, "malformed edge line, expected 'e <u> <v> [<label>]'");
      int u = detail::parse_int(toks[1], line_no, "edge endpoint");
      int v = detail::parse_int(toks[2], line_no, "edge endpoint");
      if (u >= cur.n_vertices() || v >= cur.n_vertices())
        throw StructuralError("line " + std::to_string(line_no) + ": edge references undeclared vertex " +
                              std::to_string(std::max(u, v)));
      EdgeLabel lab = toks.size() == 4
                          ? Label::intern(toks[3])
                          : derive_edge_label(cur.vertex_labels[static_cast<size_t>(u)],
                                              cur.vertex_labels[static_cast<size_t>(v)]);
      cur.edges.push_back({u, v, lab});
    } else {
      throw ParseError(line_no, "unrecognized line '" + std::string(toks[0]) + " ...'");
    }
  }
  flush();
  db.finalize();
  return db;
}

inline GraphDatabase parse_database(const std::string& text) {
  std::istringstream in(text);
  return parse_database(in);
}

inline GraphDatabase parse_database_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_database(in);
}

/// Emits the interchange format. Annotations become "# key=value" lines
/// before the graph header. Round-trips through parse_database up to id
/// reassignment.
inline std::string serialize_graph(const Graph& g,
                                   const std::vector<std::pair<std::string, std::string>>& annotations = {},
                                   int id_override = -1) {
  std::ostringstream out;
  for (const auto& [k, v] : annotations) out << "# " << k << "=" << v << "\n";
  int id = id_override >= 0 ? id_override : (g.id >= 0 ? g.id : 0);
  out << "t # " << id << "\n";
  for (int32_t v = 0; v < g.n_vertices(); ++v) out << "v " << v << " " << g.vlabel(v).str() << "\n";
  for (const Graph::Edge& e : g.edges)
    out << "e " << e.u << " " << e.v << " " << e.label.str() << "\n";
  return out.str();
}

}  // namespace ted
