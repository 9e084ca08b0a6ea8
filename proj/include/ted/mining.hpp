#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "ted/enumerate.hpp"
#include "ted/pes_index.hpp"

namespace ted {

enum class Algorithm { base, prm, ips, ted, all_g, fsg_g, all_t, fsg_t, opt };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::base: return "base";
    case Algorithm::prm: return "prm";
    case Algorithm::ips: return "ips";
    case Algorithm::ted: return "ted";
    case Algorithm::all_g: return "all_g";
    case Algorithm::fsg_g: return "fsg_g";
    case Algorithm::all_t: return "all_t";
    case Algorithm::fsg_t: return "fsg_t";
    case Algorithm::opt: return "opt";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::base, Algorithm::prm, Algorithm::ips, Algorithm::ted,
                      Algorithm::all_g, Algorithm::fsg_g, Algorithm::all_t, Algorithm::fsg_t,
                      Algorithm::opt})
    if (name == algorithm_name(a)) return a;
  throw ConfigError("unknown algorithm '" + name + "'");
}

struct MiningConfig {
  int32_t k = 5;
  int32_t emax = 10;
  Fraction alpha{1, 1};
  Fraction minsup{1, 5};
  Algorithm algorithm = Algorithm::ted;
  long long embedding_guard = kDefaultEmbeddingGuard;
  long long opt_candidate_cap = 25;
  long long pool_guard = kDefaultPoolGuard;
  int threads = 1;
  std::optional<double> time_limit_seconds;

  void validate() const {
    if (k < 1) throw ConfigError("k must be >= 1");
    if (emax < 1) throw ConfigError("emax must be >= 1");
    if (alpha.num > alpha.den) throw ConfigError("alpha must be in [0,1], got " + alpha.str());
    if (minsup.num <= 0 || minsup.num > minsup.den)
      throw ConfigError("minsup must be in (0,1], got " + minsup.str());
    if (embedding_guard < 1) throw ConfigError("embedding guard must be >= 1");
    if (opt_candidate_cap < 1) throw ConfigError("opt candidate cap must be >= 1");
    if (pool_guard < 1) throw ConfigError("pool guard must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (time_limit_seconds && *time_limit_seconds < 0)
      throw ConfigError("time limit must be >= 0");
  }

  Deadline deadline() const {
    return time_limit_seconds ? Deadline::after_seconds(*time_limit_seconds) : Deadline::none();
  }
};

struct MiningMetrics {
  long long elapsed_ms = 0;
  long long swaps = 0;
  long long patterns_enumerated = 0;
  long long prm_pruned = 0;
  long long index_size_bytes = 0;
  long long index_time_ms = 0;
};

struct MiningResult {
  std::vector<Pattern> patterns;  // sorted by canonical code
  long long total_coverage = 0;
  long long total_edges = 0;
  MiningMetrics metrics;

  double coverage_rate() const {
    return total_edges == 0 ? 0.0
                            : static_cast<double>(total_coverage) / static_cast<double>(total_edges);
  }
};

/// One maintenance step: fill the set while |P| < k, otherwise swap the
/// minimum-loss pattern out when the candidate passes the swapping criteria.
/// A candidate isomorphic to a resident is a no-op. Returns whether the set
/// changed.
inline bool pattern_maintain(PesIndex& idx, const Pattern& g, const Fraction& alpha) {
  if (idx.contains_code(g.key())) return false;
  if (idx.size() < idx.capacity()) {
    idx.insert(g);
    return true;
  }
  auto [score_l, victim] = idx.min_loss();
  long long score_b = idx.benefit(g.cov);
  if (swap_decision(score_b, score_l, alpha, idx.total_coverage(), idx.capacity())) {
    idx.swap(*victim, g);
    return true;
  }
  return false;
}

namespace detail {
inline bool prm_threshold_met(long long lhs, long long score_l, const Fraction& alpha,
                              long long total, long long k) {
  using I = __int128;
  return I(lhs) * alpha.den * k >=
         I(alpha.den + alpha.num) * score_l * k + I(alpha.den - alpha.num) * total;
}
}  // namespace detail

/// Admission test for extending `parent` to `child`. An upper bound on the
/// benefit any descendant of `child` can still reach — the uncovered edges of
/// the graphs containing `parent`, minus (for a non-resident parent) the
/// parent-covered edges the child already fails to cover — is compared
/// against the swapping threshold. Children below it are pruned together
/// with their whole subtree. All children are admitted during the fill phase.
inline bool prm_admit(const Pattern& parent, const Pattern& child, const PesIndex& idx,
                      const GraphDatabase& db, const Fraction& alpha) {
  if (idx.size() < idx.capacity()) return true;
  auto [score_l, victim] = idx.min_loss();
  (void)victim;
  bool parent_resident = idx.contains_code(parent.key());
  long long lhs = 0;
  for (int32_t gid : parent.containing_ids) {
    long long uncovered = db[static_cast<size_t>(gid)].n_edges() - idx.covered_in_graph(gid);
    if (parent_resident) {
      lhs += uncovered;
      continue;
    }
    auto [lo, hi] = parent.cov.graph_range(gid);
    long long lost_uncovered = 0;
    for (auto it = lo; it != hi; ++it)
      if (!child.cov.contains(*it) && !idx.covers(*it)) ++lost_uncovered;
    lhs += uncovered - lost_uncovered;
  }
  return detail::prm_threshold_met(lhs, score_l, alpha, idx.total_coverage(), idx.capacity());
}

/// Seed selection: hill-climb each 1-edge root towards larger database
/// coverage along right-most extensions, then keep the k grown patterns with
/// the largest coverage (ties to the smaller code).
inline std::vector<Pattern> ips_initial(const GraphDatabase& db, const MiningConfig& cfg,
                                        const Deadline& deadline = Deadline::none()) {
  std::vector<Pattern> climbed;
  for (Pattern& root : seed_edge_patterns(db, cfg.embedding_guard, cfg.threads)) {
    Pattern cur = std::move(root);
    while (cur.graph.n_edges() < cfg.emax) {
      deadline.check();
      std::vector<Pattern> kids =
          rightmost_extensions(cur, db, cfg.emax, cfg.embedding_guard, cfg.threads);
      if (kids.empty()) break;
      size_t best = 0;  // kids are code-ascending, so > keeps the smaller code on ties
      for (size_t i = 1; i < kids.size(); ++i)
        if (kids[i].cov.size() > kids[best].cov.size()) best = i;
      if (kids[best].cov.size() <= cur.cov.size()) break;
      cur = std::move(kids[best]);
    }
    climbed.push_back(std::move(cur));
  }
  std::sort(climbed.begin(), climbed.end(), [](const Pattern& a, const Pattern& b) {
    if (a.cov.size() != b.cov.size()) return a.cov.size() > b.cov.size();
    return pattern_code_less(a, b);
  });
  if (static_cast<int32_t>(climbed.size()) > cfg.k) climbed.resize(static_cast<size_t>(cfg.k));
  return climbed;
}

namespace detail {

/// Swapping-based miner shared by base/prm/ips/ted/all_t/fsg_t: DFS over the
/// extension tree seeded with all 1-edge patterns sorted by code, maintaining
/// the pattern set on every pop.
inline MiningResult mine_swapping(const GraphDatabase& db, const MiningConfig& cfg, bool use_prm,
                                  bool use_ips, std::optional<Fraction> minsup_gate) {
  cfg.validate();
  if (db.size() == 0) throw ConfigError("database is empty");
  auto t0 = std::chrono::steady_clock::now();
  Deadline deadline = cfg.deadline();

  PesIndex idx(db, cfg.k);
  MiningMetrics m;

  if (use_ips)
    for (const Pattern& p : ips_initial(db, cfg, deadline)) idx.insert(p);

  std::vector<Pattern> stack;
  {
    std::vector<Pattern> seeds = seed_edge_patterns(db, cfg.embedding_guard, cfg.threads);
    for (auto it = seeds.rbegin(); it != seeds.rend(); ++it) {
      if (minsup_gate && !meets_support(*it, db, *minsup_gate)) continue;
      stack.push_back(std::move(*it));
    }
  }

  while (!stack.empty()) {
    deadline.check();
    Pattern g = std::move(stack.back());
    stack.pop_back();
    ++m.patterns_enumerated;
    bool was_full = idx.size() == idx.capacity();
    bool changed = pattern_maintain(idx, g, cfg.alpha);
    if (changed && was_full) ++m.swaps;
    if (g.graph.n_edges() >= cfg.emax) continue;
    std::vector<Pattern> kids =
        rightmost_extensions(g, db, cfg.emax, cfg.embedding_guard, cfg.threads);
    if (minsup_gate) {
      std::erase_if(kids, [&](const Pattern& c) { return !meets_support(c, db, *minsup_gate); });
    }
    if (use_prm && idx.size() == idx.capacity()) {
      std::vector<Pattern> admitted;
      for (Pattern& c : kids) {
        if (prm_admit(g, c, idx, db, cfg.alpha))
          admitted.push_back(std::move(c));
        else
          ++m.prm_pruned;
      }
      kids = std::move(admitted);
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
  }

  MiningResult result;
  for (const Pattern* p : idx.residents()) result.patterns.push_back(*p);
  std::sort(result.patterns.begin(), result.patterns.end(), pattern_code_less);
  result.total_coverage = idx.total_coverage();
  result.total_edges = db.total_edges;
  m.index_size_bytes = idx.index_size_bytes();
  m.index_time_ms = idx.maintenance_nanos() / 1'000'000;
  m.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  if (m.index_time_ms > m.elapsed_ms) m.elapsed_ms = m.index_time_ms;
  result.metrics = m;
  return result;
}

}  // namespace detail

inline MiningResult mine_ted_base(const GraphDatabase& db, const MiningConfig& cfg) {
  return detail::mine_swapping(db, cfg, false, false, std::nullopt);
}

inline MiningResult mine_ted_prm(const GraphDatabase& db, const MiningConfig& cfg) {
  return detail::mine_swapping(db, cfg, true, false, std::nullopt);
}

inline MiningResult mine_ted_ips(const GraphDatabase& db, const MiningConfig& cfg) {
  return detail::mine_swapping(db, cfg, false, true, std::nullopt);
}

/// Both optimizations: IPS-seeded pattern set, PRM-filtered extensions.
inline MiningResult mine_ted(const GraphDatabase& db, const MiningConfig& cfg) {
  return detail::mine_swapping(db, cfg, true, true, std::nullopt);
}

/// Streaming baselines: the full (resp. frequent) enumeration piped through
/// the same maintenance step, no optimizations.
inline MiningResult mine_all_t(const GraphDatabase& db, const MiningConfig& cfg) {
  return detail::mine_swapping(db, cfg, false, false, std::nullopt);
}

inline MiningResult mine_fsg_t(const GraphDatabase& db, const MiningConfig& cfg) {
  return detail::mine_swapping(db, cfg, false, false, cfg.minsup);
}

}  // namespace ted
