// Command-line driver: mine patterns, benchmark algorithms, export the
// pattern containment matrix.
//
// Exit codes: 0 ok, 2 usage, 3 unreadable/invalid input, 4 bad config,
// 5 resource guard, 6 capacity guard, 7 time limit.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ted/ted.hpp"

namespace {

struct CliOptions {
  std::string input;
  std::string algo = "ted";
  std::string algos;
  std::string k = "5";
  std::string emax = "10";
  std::string alpha = "1.0";
  std::string minsup = "0.2";
  std::string output;
  std::string metrics;
  std::string matrix;
  int threads = 1;
  std::optional<double> time_limit;
  long long opt_candidate_cap = 25;
  long long embedding_guard = ted::kDefaultEmbeddingGuard;
};

long long parse_positive_int(const std::string& text, const char* what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(text, &pos);
    if (pos != text.size() || v < 1) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw ted::ConfigError(std::string(what) + " must be a positive integer, got '" + text + "'");
  }
}

ted::MiningConfig build_config(const CliOptions& opt) {
  ted::MiningConfig cfg;
  cfg.algorithm = ted::parse_algorithm(opt.algo);
  cfg.k = static_cast<int32_t>(parse_positive_int(opt.k, "k"));
  cfg.emax = static_cast<int32_t>(parse_positive_int(opt.emax, "emax"));
  cfg.alpha = ted::Fraction::parse(opt.alpha);
  cfg.minsup = ted::Fraction::parse(opt.minsup);
  cfg.threads = opt.threads;
  cfg.time_limit_seconds = opt.time_limit;
  cfg.opt_candidate_cap = opt.opt_candidate_cap;
  cfg.embedding_guard = opt.embedding_guard;
  cfg.validate();
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ted::IoError("cannot write '" + path + "'");
  out << content;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    write_file(path, content);
}

int run_mine(const CliOptions& opt, bool matrix_only) {
  ted::MiningConfig cfg = build_config(opt);
  ted::GraphDatabase db = ted::parse_database_file(opt.input);
  auto t0 = std::chrono::steady_clock::now();
  try {
    ted::MiningResult result = ted::run_algorithm(db, cfg);
    if (matrix_only) {
      emit(opt.matrix, ted::containment_matrix_text(result.patterns, db));
      return 0;
    }
    emit(opt.output, ted::patterns_to_text(result, db));
    emit(opt.metrics, ted::run_report(result, cfg, db, opt.input).dump(2) + "\n");
    if (!opt.matrix.empty()) write_file(opt.matrix, ted::containment_matrix_text(result.patterns, db));
    if (!opt.output.empty() && !opt.metrics.empty())
      std::cout << "algorithm=" << ted::algorithm_name(cfg.algorithm)
                << " patterns=" << result.patterns.size()
                << " coverage=" << ted::coverage_fraction(result) << "\n";
    return 0;
  } catch (const ted::TimeLimitError&) {
    long long elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    emit(opt.metrics, ted::partial_report(cfg, opt.input, elapsed).dump(2) + "\n");
    std::cerr << "time limit exceeded, partial metrics written\n";
    return 7;
  }
}

int run_bench(const CliOptions& opt) {
  ted::GraphDatabase db = ted::parse_database_file(opt.input);

  std::vector<std::string> names;
  {
    std::stringstream ss(opt.algos.empty() ? opt.algo : opt.algos);
    std::string item;
    std::set<std::string> seen;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (!seen.insert(item).second) {
        std::cerr << "warning: duplicate algorithm '" << item << "' ignored\n";
        continue;
      }
      names.push_back(item);
    }
  }
  if (names.empty()) throw ted::ConfigError("no algorithms given");

  struct Row {
    std::string name;
    bool ok = false;
    std::string note;
    ted::MiningResult result;
    ted::MiningConfig cfg;
  };
  std::vector<Row> rows;
  for (const std::string& name : names) {
    CliOptions one = opt;
    one.algo = name;
    Row row;
    row.name = name;
    row.cfg = build_config(one);
    try {
      row.result = ted::run_algorithm(db, row.cfg);
      row.ok = true;
    } catch (const ted::CapacityError& e) {
      row.note = e.what();
      std::cerr << "warning: " << name << " skipped: " << e.what() << "\n";
    }
    rows.push_back(std::move(row));
  }

  std::ostringstream table;
  table << "algorithm coverage_rate total_coverage total_edges patterns elapsed_ms "
           "enumerated swaps prm_pruned index_size_bytes index_time_ms\n";
  for (const Row& r : rows) {
    if (!r.ok) {
      table << r.name << " INF - - - - - - - - -\n";
      continue;
    }
    table << r.name << " " << ted::coverage_fraction(r.result) << " " << r.result.total_coverage
          << " " << r.result.total_edges << " " << r.result.patterns.size() << " "
          << r.result.metrics.elapsed_ms << " " << r.result.metrics.patterns_enumerated << " "
          << r.result.metrics.swaps << " " << r.result.metrics.prm_pruned << " "
          << r.result.metrics.index_size_bytes << " " << r.result.metrics.index_time_ms << "\n";
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = i + 1; j < rows.size(); ++j) {
      if (!rows[i].ok || !rows[j].ok || rows[j].result.total_coverage == 0) continue;
      double ratio = static_cast<double>(rows[i].result.total_coverage) /
                     static_cast<double>(rows[j].result.total_coverage);
      table << "ratio " << rows[i].name << "/" << rows[j].name << " = " << ratio << "\n";
    }
  }
  emit(opt.output, table.str());

  if (!opt.metrics.empty()) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = "bench";
    j["runs"] = nlohmann::ordered_json::array();
    for (const Row& r : rows) {
      if (r.ok)
        j["runs"].push_back(ted::run_report(r.result, r.cfg, db, opt.input));
      else
        j["runs"].push_back({{"algorithm", r.name}, {"skipped", r.note}});
    }
    write_file(opt.metrics, j.dump(2) + "\n");
  }
  return 0;
}

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--input", opt.input, "input database file")->required();
  cmd->add_option("--k", opt.k, "number of patterns");
  cmd->add_option("--emax", opt.emax, "maximum pattern size in edges");
  cmd->add_option("--alpha", opt.alpha, "swapping threshold in [0,1]");
  cmd->add_option("--minsup", opt.minsup, "minimum support in (0,1], fsg algorithms only");
  cmd->add_option("--threads", opt.threads, "worker threads for parallel phases");
  cmd->add_option("--time-limit", opt.time_limit, "wall-clock budget in seconds");
  cmd->add_option("--opt-candidate-cap", opt.opt_candidate_cap, "candidate cap for the exact search");
  cmd->add_option("--embedding-guard", opt.embedding_guard, "per pattern-graph matching work cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"top-k edge-diversified pattern miner"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* mine = app.add_subcommand("mine", "mine patterns with one algorithm");
  add_common_options(mine, opt);
  mine->add_option("--algo", opt.algo, "algorithm: base|prm|ips|ted|all_g|fsg_g|all_t|fsg_t|opt");
  mine->add_option("--output", opt.output, "pattern file path (stdout if omitted)");
  mine->add_option("--metrics", opt.metrics, "metrics report path (stdout if omitted)");
  mine->add_option("--matrix", opt.matrix, "containment matrix path");

  CLI::App* bench = app.add_subcommand("bench", "run several algorithms and compare coverage");
  add_common_options(bench, opt);
  bench->add_option("--algos", opt.algos, "comma-separated algorithm list")->required();
  bench->add_option("--output", opt.output, "table path (stdout if omitted)");
  bench->add_option("--metrics", opt.metrics, "metrics report path");

  CLI::App* matrix = app.add_subcommand("matrix", "mine and emit the containment matrix");
  add_common_options(matrix, opt);
  matrix->add_option("--algo", opt.algo, "algorithm used to mine the patterns");
  matrix->add_option("--matrix", opt.matrix, "matrix path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(mine)) return run_mine(opt, false);
    if (app.got_subcommand(bench)) return run_bench(opt);
    return run_mine(opt, true);
  } catch (const ted::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const ted::StructuralError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const ted::IoError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const ted::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 4;
  } catch (const ted::ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 5;
  } catch (const ted::CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 6;
  } catch (const ted::TimeLimitError& e) {
    std::cerr << "time limit: " << e.what() << "\n";
    return 7;
  }
}
