#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ted/baselines.hpp"
#include "ted/graph_io.hpp"

namespace ted {

/// matrix[i][j] = 1 iff pattern j is contained in graph i. Patterns come from
/// grounded enumeration, so each must be contained somewhere.
inline std::vector<std::vector<int>> containment_matrix(const std::vector<Pattern>& patterns,
                                                        const GraphDatabase& db) {
  std::vector<std::vector<int>> m(db.size(), std::vector<int>(patterns.size(), 0));
  for (size_t j = 0; j < patterns.size(); ++j) {
    if (patterns[j].containing_ids.empty())
      throw StateError("containment matrix: pattern contained in no graph");
    for (int32_t gid : patterns[j].containing_ids) m[static_cast<size_t>(gid)][j] = 1;
  }
  return m;
}

/// Text form: a header row of pattern indices, one 0/1 row per graph, and a
/// final row counting how many graphs each pattern prunes (does not occur in).
inline std::string containment_matrix_text(const std::vector<Pattern>& patterns,
                                           const GraphDatabase& db) {
  auto m = containment_matrix(patterns, db);
  std::ostringstream out;
  out << "graph";
  for (size_t j = 0; j < patterns.size(); ++j) out << " p" << j;
  out << "\n";
  std::vector<long long> prune(patterns.size(), 0);
  for (size_t i = 0; i < db.size(); ++i) {
    out << "G" << i;
    for (size_t j = 0; j < patterns.size(); ++j) {
      out << " " << m[i][j];
      if (!m[i][j]) ++prune[j];
    }
    out << "\n";
  }
  out << "prune";
  for (long long p : prune) out << " " << p;
  out << "\n";
  return out.str();
}

/// Pattern file: interchange format, one annotated graph per pattern.
/// `marginal` is the pattern's coverage not provided by the patterns emitted
/// before it.
inline std::string patterns_to_text(const MiningResult& result, const GraphDatabase& db) {
  std::ostringstream out;
  CoverSet seen;
  for (size_t i = 0; i < result.patterns.size(); ++i) {
    const Pattern& p = result.patterns[i];
    long long marginal = static_cast<long long>(set_difference(p.cov, seen).size());
    seen = set_union(seen, p.cov);
    std::vector<std::pair<std::string, std::string>> ann = {
        {"cov", std::to_string(p.cov.size())},
        {"support", std::to_string(p.support_count) + "/" + std::to_string(db.size())},
        {"marginal", std::to_string(marginal)},
    };
    out << serialize_graph(p.graph, ann, static_cast<int>(i));
  }
  return out.str();
}

inline std::string coverage_fraction(const MiningResult& r) {
  return std::to_string(r.total_coverage) + "/" + std::to_string(r.total_edges);
}

inline nlohmann::ordered_json config_to_json(const MiningConfig& cfg) {
  nlohmann::ordered_json j;
  j["algorithm"] = algorithm_name(cfg.algorithm);
  j["k"] = cfg.k;
  j["emax"] = cfg.emax;
  j["alpha"] = cfg.alpha.str();
  j["alpha_decimal"] = cfg.alpha.value();
  j["minsup"] = cfg.minsup.str();
  j["minsup_decimal"] = cfg.minsup.value();
  j["threads"] = cfg.threads;
  j["embedding_guard"] = cfg.embedding_guard;
  j["opt_candidate_cap"] = cfg.opt_candidate_cap;
  j["pool_guard"] = cfg.pool_guard;
  if (cfg.time_limit_seconds)
    j["time_limit_seconds"] = *cfg.time_limit_seconds;
  else
    j["time_limit_seconds"] = nullptr;
  return j;
}

/// Metrics document, schema 1. Key set is stable; timing fields
/// (elapsed_ms, index_time_ms) vary between runs, everything else is
/// deterministic for a given input and config.
inline nlohmann::ordered_json run_report(const MiningResult& r, const MiningConfig& cfg,
                                         const GraphDatabase& db, const std::string& input_path) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["kind"] = "mine";
  j["algorithm"] = algorithm_name(cfg.algorithm);
  j["config"] = config_to_json(cfg);
  j["input"] = {{"path", input_path},
                {"graphs", db.size()},
                {"total_edges", db.total_edges}};
  j["result"] = {{"patterns", r.patterns.size()},
                 {"total_coverage", r.total_coverage},
                 {"total_edges", r.total_edges},
                 {"coverage_rate", coverage_fraction(r)},
                 {"coverage_rate_decimal", r.coverage_rate()}};
  j["metrics"] = {{"elapsed_ms", r.metrics.elapsed_ms},
                  {"index_time_ms", r.metrics.index_time_ms},
                  {"index_size_bytes", r.metrics.index_size_bytes},
                  {"swaps", r.metrics.swaps},
                  {"patterns_enumerated", r.metrics.patterns_enumerated},
                  {"prm_pruned", r.metrics.prm_pruned}};
  j["incomplete"] = false;
  return j;
}

/// Report written when the time limit expires before the run finishes.
inline nlohmann::ordered_json partial_report(const MiningConfig& cfg, const std::string& input_path,
                                             long long elapsed_ms) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["kind"] = "mine";
  j["algorithm"] = algorithm_name(cfg.algorithm);
  j["config"] = config_to_json(cfg);
  j["input"] = {{"path", input_path}};
  j["metrics"] = {{"elapsed_ms", elapsed_ms}};
  j["incomplete"] = true;
  return j;
}

}  // namespace ted
