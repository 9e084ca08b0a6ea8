#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ted/dfs_code.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace ted;

namespace {

Graph permuted(const Graph& g, const std::vector<int32_t>& where) {
  Graph h;
  h.vertex_labels.assign(g.n_vertices(), VertexLabel());
  for (int32_t v = 0; v < g.n_vertices(); ++v)
    h.vertex_labels[static_cast<size_t>(where[v])] = g.vlabel(v);
  for (const Graph::Edge& e : g.edges)
    h.edges.push_back({where[static_cast<size_t>(e.u)], where[static_cast<size_t>(e.v)], e.label});
  h.finalize();
  return h;
}

}  // namespace

TEST_CASE("min code of a single edge orients the smaller label first") {
  DfsCode c = min_dfs_code(ted_test::edge_pattern("B", "A"));
  REQUIRE(c.size() == 1);
  CHECK(c[0].from == 0);
  CHECK(c[0].to == 1);
  CHECK(c[0].from_label.str() == "A");
  CHECK(c[0].edge_label.str() == "A.B");
  CHECK(c[0].to_label.str() == "B");
}

TEST_CASE("isomorphic graphs share one minimum code") {
  Graph tri = ted_test::db_toy()[0];
  DfsCode base = min_dfs_code(tri);
  std::vector<int32_t> perm = {0, 1, 2};
  do {
    CHECK(min_dfs_code(permuted(tri, perm)) == base);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("non-isomorphic paths get distinct codes") {
  Graph aba = ted_test::path_pattern("A", "B", "A");
  Graph aab = ted_test::path_pattern("A", "A", "B");
  // oracle: these are genuinely non-isomorphic
  REQUIRE(ted_oracle::perm_canonical(aba) != ted_oracle::perm_canonical(aab));
  CHECK_FALSE(min_dfs_code(aba) == min_dfs_code(aab));
}

TEST_CASE("minimum codes are canonical on random graphs") {
  std::mt19937_64 rng(31337);
  for (int round = 0; round < 60; ++round) {
    int m = ted_test::rand_int(rng, 1, 7);
    int n = ted_test::rand_int(rng, 2, m + 1);
    Graph g = ted_test::random_connected_graph(rng, n, m, ted_test::rand_int(rng, 1, 3));
    DfsCode code = min_dfs_code(g);
    // reconstructible, same size
    Graph h = graph_from_code(code);
    REQUIRE(h.n_edges() == g.n_edges());
    REQUIRE(h.n_vertices() == g.n_vertices());
    CHECK(ted_oracle::perm_canonical(h) == ted_oracle::perm_canonical(g));
    // invariant under relabeling
    std::vector<int32_t> where(g.n_vertices());
    for (int32_t v = 0; v < g.n_vertices(); ++v) where[v] = v;
    std::shuffle(where.begin(), where.end(), rng);
    CHECK(min_dfs_code(permuted(g, where)) == code);
    // idempotent: the materialized graph's min code is the code itself
    CHECK(min_dfs_code(h) == code);
  }
}

TEST_CASE("distinct iso classes get distinct codes") {
  std::mt19937_64 rng(555);
  std::map<std::string, DfsCode> by_canon;
  for (int round = 0; round < 50; ++round) {
    int m = ted_test::rand_int(rng, 1, 6);
    Graph g = ted_test::random_connected_graph(rng, ted_test::rand_int(rng, 2, m + 1), m, 2);
    std::string canon = ted_oracle::perm_canonical(g);
    DfsCode code = min_dfs_code(g);
    auto [it, fresh] = by_canon.try_emplace(canon, code);
    if (!fresh) CHECK(it->second == code);
  }
  // pairwise distinct codes across distinct canonical forms
  std::set<std::string> code_keys;
  for (auto& [canon, code] : by_canon) code_keys.insert(code.str());
  CHECK(code_keys.size() == by_canon.size());
}

TEST_CASE("code order: backward tuples precede forward ones") {
  Label a = Label::intern("A");
  Label e = Label::intern("A.A");
  DfsTuple back{2, 0, a, e, a};
  DfsTuple fwd{2, 3, a, e, a};
  CHECK(tuple_less(back, fwd));
  CHECK_FALSE(tuple_less(fwd, back));
  // forward from a deeper vertex sorts first
  DfsTuple shallow{0, 3, a, e, a};
  CHECK(tuple_less(fwd, shallow));
  // prefix order
  DfsCode p({back});
  DfsCode q({back, fwd});
  CHECK(code_less(p, q));
  CHECK_FALSE(code_less(q, p));
}

TEST_CASE("rightmost path follows the forward-edge tree") {
  Graph tri = ted_test::db_toy()[0];
  DfsCode code = min_dfs_code(tri);
  REQUIRE(code.size() == 3);
  auto path = code.rightmost_path();
  REQUIRE(path.size() == 3);
  CHECK(path[0] == 0);
  CHECK(path[2] == 2);
}

TEST_CASE("graph_from_code rejects malformed codes") {
  Label a = Label::intern("A");
  Label e = Label::intern("A.A");
  CHECK_THROWS_AS(graph_from_code(DfsCode()), StateError);
  CHECK_THROWS_AS(graph_from_code(DfsCode({DfsTuple{1, 2, a, e, a}})), StateError);
}
