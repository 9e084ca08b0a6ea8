#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ted/enumerate.hpp"
#include "ted/mining.hpp"
#include "ted/pes_index.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace ted;

namespace {

Pattern mk(const GraphDatabase& db, const Graph& g) {
  std::vector<int32_t> ids;
  for (size_t i = 0; i < db.size(); ++i) ids.push_back(static_cast<int32_t>(i));
  return materialize_pattern(min_dfs_code(g), db, ids, kDefaultEmbeddingGuard);
}

std::vector<Pattern> residents_copy(const PesIndex& idx) {
  std::vector<Pattern> out;
  for (const Pattern* p : idx.residents()) out.push_back(*p);
  return out;
}

}  // namespace

TEST_CASE("insert maintains all five components on the toy database") {
  GraphDatabase db = ted_test::db_toy();
  Pattern p_ab = mk(db, ted_test::edge_pattern("A", "B"));
  Pattern p_aa = mk(db, ted_test::edge_pattern("A", "A"));
  Pattern p_aba = mk(db, ted_test::path_pattern("A", "B", "A"));
  REQUIRE(p_ab.cov.size() == 3);
  REQUIRE(p_aa.cov.size() == 1);
  REQUIRE(p_aba.cov.size() == 2);  // {G0.e1, G0.e2}

  PesIndex idx(db, 3);
  idx.insert(p_ab);
  CHECK(idx.total_coverage() == 3);
  {
    auto snap = idx.snapshot();
    CHECK(snap.private_cov == decltype(snap.private_cov){{p_ab.key(), 3}});
    REQUIRE(snap.rcnt.size() == 1);
    CHECK(snap.rcnt[0].first == 3);
  }

  idx.insert(p_aa);
  CHECK(idx.total_coverage() == 4);
  CHECK(idx.min_loss().first == 1);
  CHECK(idx.min_loss().second->key() == p_aa.key());

  idx.insert(p_aba);
  CHECK(idx.total_coverage() == 4);  // full overlap with p_ab on two edges
  auto snap = idx.snapshot();
  for (auto& [key, pcov] : snap.private_cov) {
    if (key == p_ab.key()) CHECK(pcov == 1);   // dropped 3 -> 1
    if (key == p_aba.key()) CHECK(pcov == 0);
  }
  CHECK(snap == ted_oracle::naive_snapshot(residents_copy(idx)));
}

TEST_CASE("delete undoes insert exactly") {
  GraphDatabase db = ted_test::db_toy();
  Pattern p_ab = mk(db, ted_test::edge_pattern("A", "B"));
  Pattern p_aa = mk(db, ted_test::edge_pattern("A", "A"));
  Pattern p_aba = mk(db, ted_test::path_pattern("A", "B", "A"));

  PesIndex idx(db, 3);
  idx.insert(p_ab);
  idx.insert(p_aa);
  auto before = idx.snapshot();
  idx.insert(p_aba);
  idx.erase(p_aba);
  CHECK(idx.snapshot() == before);

  // deleting p_ab: the A-B-A path regains two privates; G1.e0 loses coverage
  idx.insert(p_aba);
  idx.erase(p_ab);
  CHECK(idx.total_coverage() == 3);
  auto snap = idx.snapshot();
  for (auto& [key, pcov] : snap.private_cov)
    if (key == p_aba.key()) CHECK(pcov == 2);
  CHECK(snap == ted_oracle::naive_snapshot(residents_copy(idx)));
}

TEST_CASE("index misuse errors") {
  GraphDatabase db = ted_test::db_toy();
  Pattern p_ab = mk(db, ted_test::edge_pattern("A", "B"));
  Pattern p_aa = mk(db, ted_test::edge_pattern("A", "A"));
  PesIndex idx(db, 1);
  CHECK_THROWS_AS(idx.erase(p_ab), StateError);
  CHECK_THROWS_AS(idx.min_loss(), StateError);
  idx.insert(p_ab);
  CHECK_THROWS_AS(idx.insert(p_ab), StateError);     // duplicate
  CHECK_THROWS_AS(idx.insert(p_aa), CapacityError);  // full
  CHECK_THROWS_AS(idx.swap(p_aa, p_ab), StateError); // out absent / in present
}

TEST_CASE("min_loss on a single pattern is its whole coverage") {
  GraphDatabase db = ted_test::db_toy();
  Pattern p_ab = mk(db, ted_test::edge_pattern("A", "B"));
  PesIndex idx(db, 2);
  idx.insert(p_ab);
  CHECK(idx.min_loss().first == static_cast<long long>(p_ab.cov.size()));
}

TEST_CASE("min_loss ties go to the earlier insertion") {
  // On the triangle alone, the A-B edge and the A-B-A path cover the same
  // two edges, so both privates are zero.
  GraphDatabase db = make_database({ted_test::db_toy()[0]});
  Pattern p_ab = mk(db, ted_test::edge_pattern("A", "B"));
  Pattern p_aba = mk(db, ted_test::path_pattern("A", "B", "A"));
  REQUIRE(p_ab.cov == p_aba.cov);
  PesIndex idx(db, 2);
  idx.insert(p_aba);
  idx.insert(p_ab);
  CHECK(idx.min_loss().first == 0);
  CHECK(idx.min_loss().second->key() == p_aba.key());
}

TEST_CASE("benefit counts uncovered candidate edges") {
  GraphDatabase db = ted_test::db_toy();
  Pattern p_ab = mk(db, ted_test::edge_pattern("A", "B"));
  Pattern p_aa = mk(db, ted_test::edge_pattern("A", "A"));
  PesIndex idx(db, 2);
  CHECK(idx.benefit(p_ab.cov) == 3);  // empty index: everything is new
  idx.insert(p_ab);
  CHECK(idx.benefit(p_aa.cov) == 1);
  CHECK(idx.benefit(p_ab.cov) == 0);  // fully redundant
}

TEST_CASE("swap_decision evaluates the criterion exactly") {
  CHECK(swap_decision(7, 2, Fraction{1, 1}, 33, 3));        // 7 > 4
  CHECK_FALSE(swap_decision(4, 2, Fraction{1, 1}, 100, 5)); // strict: 4 > 4 fails
  CHECK(swap_decision(5, 0, Fraction{0, 1}, 12, 3));        // 5 > 12/3
  CHECK_FALSE(swap_decision(4, 0, Fraction{0, 1}, 12, 3));  // 4 > 4 fails
  CHECK(swap_decision(5, 2, Fraction{1, 2}, 6, 3));         // 5 > 3 + 1
  CHECK_FALSE(swap_decision(4, 2, Fraction{1, 2}, 6, 3));   // 4 > 4 fails
  CHECK_THROWS_AS(swap_decision(1, 0, Fraction{3, 2}, 0, 1), ConfigError);
}

TEST_CASE("worked swap: scores 2/10/8, benefit 7, coverage 33 to 38") {
  GraphDatabase db = ted_test::db_flower();
  REQUIRE(db.total_edges == 40);
  Pattern g1 = mk(db, ted_test::edge_pattern("S", "D"));
  Pattern p1 = mk(db, ted_test::path_pattern("A", "S", "B"));
  Pattern p3 = mk(db, ted_test::path_pattern("C", "S", "B"));
  Pattern p2 = mk(db, ted_test::edge_pattern("S", "E"));
  REQUIRE(g1.cov.size() == 2);
  REQUIRE(p1.cov.size() == 23);
  REQUIRE(p3.cov.size() == 21);
  REQUIRE(p2.cov.size() == 7);

  PesIndex idx(db, 3);
  idx.insert(g1);
  idx.insert(p1);
  idx.insert(p3);
  CHECK(idx.total_coverage() == 33);
  auto snap = idx.snapshot();
  std::map<std::string, long long> pcov(snap.private_cov.begin(), snap.private_cov.end());
  CHECK(pcov[g1.key()] == 2);
  CHECK(pcov[p1.key()] == 10);
  CHECK(pcov[p3.key()] == 8);
  auto [score_l, victim] = idx.min_loss();
  CHECK(score_l == 2);
  CHECK(victim->key() == g1.key());
  CHECK(idx.benefit(p2.cov) == 7);
  CHECK(swap_decision(7, score_l, Fraction{1, 1}, idx.total_coverage(), 3));

  // intermediate state after the delete half
  {
    PesIndex copy(db, 3);
    copy.insert(g1);
    copy.insert(p1);
    copy.insert(p3);
    copy.erase(g1);
    CHECK(copy.total_coverage() == 31);
  }

  idx.swap(g1, p2);
  CHECK(idx.total_coverage() == 38);
  CHECK(idx.snapshot() == ted_oracle::naive_snapshot(residents_copy(idx)));
  CHECK_FALSE(idx.contains_code(g1.key()));
  CHECK(idx.contains_code(p2.key()));
}

TEST_CASE("random mutation sequences match the from-scratch rebuild") {
  std::mt19937_64 rng(13579);
  int states_checked = 0;
  for (int round = 0; round < 25; ++round) {
    GraphDatabase db = ted_test::random_db(rng, ted_test::rand_int(rng, 1, 3), 3, 8, 2);
    auto pool = enum_all_subgraphs(db, 3);
    if (pool.size() < 2) continue;
    int k = ted_test::rand_int(rng, 1, 3);
    PesIndex idx(db, k);
    std::vector<Pattern> in_order;
    for (int step = 0; step < 14; ++step) {
      int op = ted_test::rand_int(rng, 0, 2);
      auto resident_pos = [&]() { return ted_test::rand_int(rng, 0, (int)in_order.size() - 1); };
      auto pick_new = [&]() -> const Pattern* {
        for (int t = 0; t < 30; ++t) {
          const Pattern& c = pool[ted_test::rand_int(rng, 0, (int)pool.size() - 1)];
          if (!idx.contains_code(c.key())) return &c;
        }
        return nullptr;
      };
      if (op == 0 && idx.size() < k) {
        if (const Pattern* c = pick_new()) {
          idx.insert(*c);
          in_order.push_back(*c);
        }
      } else if (op == 1 && !in_order.empty()) {
        int at = resident_pos();
        idx.erase(in_order[at]);
        in_order.erase(in_order.begin() + at);
      } else if (op == 2 && idx.size() == k && k > 0) {
        const Pattern* c = pick_new();
        if (c) {
          int at = resident_pos();
          idx.swap(in_order[at], *c);
          in_order.erase(in_order.begin() + at);
          in_order.push_back(*c);
        }
      } else {
        continue;
      }
      CHECK(idx.snapshot() == ted_oracle::naive_snapshot(in_order));
      // score oracles on the same state
      if (!in_order.empty()) {
        auto [score_l, victim] = idx.min_loss();
        size_t at = 0;
        while (in_order[at].key() != victim->key()) ++at;
        CHECK(score_l == loss_score_naive(in_order, at));
      }
      const Pattern& probe = pool[ted_test::rand_int(rng, 0, (int)pool.size() - 1)];
      if (!idx.contains_code(probe.key()))
        CHECK(idx.benefit(probe.cov) == benefit_score_naive(in_order, probe.cov));
      ++states_checked;
    }
  }
  REQUIRE(states_checked > 100);
}

TEST_CASE("loss and benefit naive oracles on boundary cases") {
  GraphDatabase db = ted_test::db_toy();
  Pattern p_ab = mk(db, ted_test::edge_pattern("A", "B"));
  Pattern p_aa = mk(db, ted_test::edge_pattern("A", "A"));
  std::vector<Pattern> set = {p_ab};
  CHECK(loss_score_naive(set, 0) == 3);  // only pattern: loss = coverage
  CHECK(benefit_score_naive(set, p_aa.cov) == 1);  // disjoint: full coverage
  CHECK(benefit_score_naive(std::vector<Pattern>{}, p_ab.cov) == 3);
  CHECK_THROWS_AS(loss_score_naive(set, 5), StateError);
}

TEST_CASE("accepted swaps with alpha=1 strictly increase coverage") {
  std::mt19937_64 rng(8642);
  int accepted = 0;
  for (int round = 0; round < 20; ++round) {
    GraphDatabase db = ted_test::random_db(rng, 2, 3, 8, 2);
    auto pool = enum_all_subgraphs(db, 3);
    int k = std::min<int>(2, (int)pool.size());
    if (k == 0) continue;
    PesIndex idx(db, k);
    for (int i = 0; i < k; ++i) idx.insert(pool[static_cast<size_t>(i)]);
    for (const Pattern& cand : pool) {
      if (idx.contains_code(cand.key())) continue;
      auto [score_l, victim] = idx.min_loss();
      long long before = idx.total_coverage();
      if (swap_decision(idx.benefit(cand.cov), score_l, Fraction{1, 1}, before, k)) {
        Pattern out = *victim;
        idx.swap(out, cand);
        CHECK(idx.total_coverage() > before);
        ++accepted;
      }
    }
  }
  CHECK(accepted > 0);
}
