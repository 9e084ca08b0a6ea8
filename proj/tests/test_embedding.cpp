#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ted/embedding.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace ted;

namespace {

std::vector<EdgeRef> refs(std::initializer_list<std::pair<int, int>> xs) {
  std::vector<EdgeRef> out;
  for (auto [g, e] : xs) out.push_back({g, e});
  return out;
}

Graph permuted(const Graph& g, const std::vector<int32_t>& where) {
  Graph h;
  h.id = g.id;
  h.vertex_labels.assign(g.n_vertices(), VertexLabel());
  for (int32_t v = 0; v < g.n_vertices(); ++v)
    h.vertex_labels[static_cast<size_t>(where[v])] = g.vlabel(v);
  for (const Graph::Edge& e : g.edges)
    h.edges.push_back({where[static_cast<size_t>(e.u)], where[static_cast<size_t>(e.v)], e.label});
  h.finalize();
  return h;
}

}  // namespace

TEST_CASE("embeddings of an edge pattern in the toy triangle") {
  GraphDatabase db = ted_test::db_toy();
  Graph p = ted_test::edge_pattern("A", "B");
  // Oracle: exhaustive injective mappings satisfying both conditions.
  auto expected = ted_oracle::all_embeddings_bruteforce(p, db[0]);
  auto got = enumerate_embeddings(p, db[0]);
  REQUIRE(got.size() == expected.size());
  CHECK(got.size() == 2);  // the A-labeled endpoint maps to either A vertex
  for (const Embedding& f : got) CHECK(ted_oracle::valid_mapping(p, db[0], f));

  Graph paa = ted_test::edge_pattern("A", "A");
  auto got_aa = enumerate_embeddings(paa, db[0]);
  CHECK(got_aa.size() == ted_oracle::all_embeddings_bruteforce(paa, db[0]).size());
  CHECK(got_aa.size() == 2);  // one data edge, two orientations
}

TEST_CASE("pattern equal to the graph embeds via the identity") {
  GraphDatabase db = ted_test::db_toy();
  for (const Graph& g : db.graphs) {
    auto got = enumerate_embeddings(g, g);
    REQUIRE(!got.empty());
    bool has_identity = false;
    for (const Embedding& f : got) {
      bool id = true;
      for (int32_t v = 0; v < g.n_vertices(); ++v) id = id && f[static_cast<size_t>(v)] == v;
      has_identity = has_identity || id;
    }
    CHECK(has_identity);
  }
}

TEST_CASE("no label match means no embeddings") {
  Graph p = ted_test::edge_pattern("C", "C");
  Graph g = ted_test::edge_pattern("A", "B");
  CHECK(enumerate_embeddings(p, g).empty());
  CHECK_FALSE(contains(p, g));
  CHECK(cover_set(p, g).empty());
}

TEST_CASE("contains: toy examples") {
  GraphDatabase db = ted_test::db_toy();
  Graph p_ab = ted_test::edge_pattern("A", "B");
  CHECK(contains(p_ab, db[0]));
  CHECK_FALSE(contains(db[0], db[1]));  // pattern larger than graph
  CHECK(contains(db[0], db[0]));
  CHECK(contains(db[1], db[1]));
}

TEST_CASE("cover sets on the toy database") {
  GraphDatabase db = ted_test::db_toy();
  Graph p_ab = ted_test::edge_pattern("A", "B");
  Graph p_aa = ted_test::edge_pattern("A", "A");

  CHECK(cover_set(p_ab, db[0]) == ted_oracle::cover_bruteforce(p_ab, db[0]));
  CHECK(cover_set(p_ab, db[0]).refs() == refs({{0, 1}, {0, 2}}));
  CHECK(cover_set(p_aa, db[0]).refs() == refs({{0, 0}}));
  CHECK(cover_set(db[0], db[0]).size() == static_cast<size_t>(db[0].n_edges()));

  CHECK(cover_set_db(p_ab, db).refs() == refs({{0, 1}, {0, 2}, {1, 0}}));
  CHECK(cover_set_db(p_ab, db).size() == 3);
  Graph absent = ted_test::edge_pattern("Q", "Q");
  CHECK(cover_set_db(absent, db).empty());
  CHECK(cover_set_db(db[0], db).size() <= static_cast<size_t>(db.total_edges));
}

TEST_CASE("cover set is invariant under pattern vertex relabeling") {
  GraphDatabase db = ted_test::db_toy();
  Graph p = ted_test::path_pattern("A", "A", "B");
  Graph q = permuted(p, {2, 0, 1});
  CHECK(cover_set_db(p, db) == cover_set_db(q, db));
}

TEST_CASE("matcher agrees with the exhaustive oracle on random pairs") {
  std::mt19937_64 rng(4242);
  int checked = 0;
  for (int round = 0; round < 40; ++round) {
    Graph g = ted_test::random_connected_graph(rng, ted_test::rand_int(rng, 2, 6),
                                               ted_test::rand_int(rng, 1, 8),
                                               ted_test::rand_int(rng, 1, 3));
    g.id = 0;
    Graph p = ted_test::random_connected_graph(rng, ted_test::rand_int(rng, 2, 4),
                                               ted_test::rand_int(rng, 1, 4),
                                               ted_test::rand_int(rng, 1, 3));
    p.id = -1;
    auto expected = ted_oracle::all_embeddings_bruteforce(p, g);
    auto got = enumerate_embeddings(p, g);
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
    CHECK(cover_set(p, g) == ted_oracle::cover_bruteforce(p, g));
    ++checked;
  }
  REQUIRE(checked == 40);
}

TEST_CASE("embedding guard trips on pathological enumerations") {
  // star with identical labels: factorially many embeddings
  std::vector<std::string> labels(9, "A");
  std::vector<std::tuple<int, int, std::string>> edges;
  for (int v = 1; v < 9; ++v) edges.push_back({0, v, ""});
  Graph star = make_graph(labels, edges, 0);
  CHECK_THROWS_AS(enumerate_embeddings(star, star, 1000), ResourceError);
}

TEST_CASE("cover_set_db is identical across thread counts") {
  std::mt19937_64 rng(99);
  GraphDatabase db = ted_test::random_db(rng, 4, 3, 8, 2);
  Graph p = ted_test::edge_pattern("A", "B");
  CHECK(cover_set_db(p, db, kDefaultEmbeddingGuard, 1) ==
        cover_set_db(p, db, kDefaultEmbeddingGuard, 4));
}
