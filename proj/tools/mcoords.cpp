// Command-line driver: solve, unpack, table, stats, tradeoff.
// Exit codes: 0 success, 2 config error, 3 oracle/tracking failure,
// 4 query budget exhausted.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcoords/cli.hpp"
#include "mcoords/errors.hpp"

namespace {

std::uint64_t parse_alpha(const std::string& text) {
  if (text == "inf" || text == "infinity") return mc::kAlphaInfinity;
  std::uint64_t v = std::stoull(text);
  return v;  // 0 is accepted as the infinity encoding
}

std::vector<std::uint64_t> parse_alpha_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(parse_alpha(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw mc::InvalidArgument("empty alpha list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed monodromy representations of solution fibers"};
  app.require_subcommand(1);

  mc::SolveOptions solve_opts;
  std::string solve_alpha = "inf", solve_stop = "count";
  auto* solve = app.add_subcommand("solve", "Discover a fiber and write a tree");
  solve->add_option("--backend", solve_opts.backend,
                    "synthetic | example2 | parametric");
  solve->add_option("--d", solve_opts.d, "fiber size (synthetic)");
  solve->add_option("--n", solve_opts.n, "ambient dimension (synthetic)");
  solve->add_option("--degree", solve_opts.degree, "degree (parametric)");
  solve->add_option("--alpha", solve_alpha, "storage stride, or 'inf'");
  solve->add_option("--seed", solve_opts.seed, "base RNG seed");
  solve->add_option("--stop", solve_stop, "count[=N] | trace[=TOL] | budget=N");
  solve->add_option("--accumulate", solve_opts.accumulators,
                    "accumulators: count, real_count, trace");
  solve->add_flag("--classic", solve_opts.classic,
                  "full in-memory solve, then encode");
  solve->add_option("--rep", solve_opts.rep, "classic encode target (I..V)");
  solve->add_option("--tree-out", solve_opts.tree_out, ".mtree output path");
  solve->add_option("--json-out", solve_opts.json_out, "run record path");

  mc::UnpackOptions unpack_opts;
  auto* unpack = app.add_subcommand("unpack", "Stream solutions from a tree");
  unpack->add_option("tree", unpack_opts.tree_path, ".mtree file")->required();
  unpack->add_option("--accumulate", unpack_opts.accumulators,
                     "accumulators: count, real_count, trace");
  unpack->add_option("--emit", unpack_opts.emit_path,
                     "write solutions in discovery order");
  unpack->add_option("--json-out", unpack_opts.json_out, "run record path");

  mc::TableOptions table_opts;
  std::string table_alphas = "100000,1000,10,2,1";
  auto* table = app.add_subcommand("table", "Expected cost table");
  table->add_option("--d", table_opts.d, "fiber size");
  table->add_option("--n", table_opts.n, "ambient dimension");
  table->add_option("--k", table_opts.k, "parameter dimension");
  table->add_option("--alpha", table_alphas, "comma-separated strides");
  table->add_option("--csv-out", table_opts.csv_out, "CSV output path");
  table->add_option("--json-out", table_opts.json_out, "JSON output path");

  mc::StatsOptions stats_opts;
  auto* stats = app.add_subcommand("stats", "Monte Carlo statistics");
  stats->add_option("--trials", stats_opts.trials, "trial count");
  stats->add_option("--d", stats_opts.d, "fiber size");
  stats->add_option("--seed", stats_opts.seed, "base RNG seed");
  stats->add_option("--parallel", stats_opts.workers,
                    "worker threads (0 = hardware)");
  stats->add_option("--csv-out", stats_opts.csv_out, "histogram CSV path");
  stats->add_option("--json-out", stats_opts.json_out, "JSON output path");

  mc::TradeoffOptions tradeoff_opts;
  std::string tradeoff_alphas = "1,4,16,64,256";
  auto* tradeoff = app.add_subcommand("tradeoff", "Query/storage curve vs alpha");
  tradeoff->add_option("--d", tradeoff_opts.d, "fiber size");
  tradeoff->add_option("--alpha", tradeoff_alphas, "comma-separated strides");
  tradeoff->add_option("--trials", tradeoff_opts.trials, "instances per alpha");
  tradeoff->add_option("--seed", tradeoff_opts.seed, "base RNG seed");
  tradeoff->add_option("--csv-out", tradeoff_opts.csv_out, "CSV output path");
  tradeoff->add_option("--json-out", tradeoff_opts.json_out, "JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    nlohmann::json rec;
    if (solve->parsed()) {
      solve_opts.alpha = parse_alpha(solve_alpha);
      solve_opts.stop = mc::StopSpec::parse(solve_stop);
      rec = mc::cmd_solve(solve_opts);
    } else if (unpack->parsed()) {
      rec = mc::cmd_unpack(unpack_opts);
    } else if (table->parsed()) {
      table_opts.alphas = parse_alpha_list(table_alphas);
      rec = mc::cmd_table(table_opts);
    } else if (stats->parsed()) {
      stats_opts.parallel = true;
      rec = mc::cmd_stats(stats_opts);
    } else if (tradeoff->parsed()) {
      tradeoff_opts.alphas = parse_alpha_list(tradeoff_alphas);
      rec = mc::cmd_tradeoff(tradeoff_opts);
    }
    std::cout << rec.dump(2) << "\n";
    return 0;
  } catch (const mc::BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const mc::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mc::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mc::Error& e) {
    // tracking failure, unknown solution, ambiguous match, descriptor mismatch
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
