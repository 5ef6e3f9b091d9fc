#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcoords/tree.hpp"

namespace mc {

/// Resolves `path` against the MCOORDS_OUT_DIR environment variable when it
/// is relative and the variable is set; absolute paths pass through.
std::string resolve_output_path(const std::string& path);

struct StopSpec {
  std::string kind = "count";  // count | trace | budget
  std::uint64_t count = 0;     // 0: the oracle's fiber size
  double tolerance = 1e-6;
  std::uint64_t budget = 0;

  /// Parses "count", "count=N", "trace=TOL", "budget=N".
  static StopSpec parse(const std::string& text);
};

struct SolveOptions {
  std::string backend = "synthetic";  // synthetic | example2 | parametric
  std::uint64_t d = 12;
  std::uint64_t n = 1;
  std::uint64_t degree = 8;  // parametric
  std::uint64_t alpha = kAlphaInfinity;
  std::uint64_t seed = 1;
  StopSpec stop;
  std::vector<std::string> accumulators;
  bool classic = false;       // Algorithm 1 + encode instead of streaming
  std::string rep = "V";      // classic encode target: I..V
  std::string tree_out;       // .mtree path ("" = skip)
  std::string json_out;       // run record path ("" = stdout only)
};

/// Solves one instance, writes the tree and a run record, returns the record.
nlohmann::json cmd_solve(const SolveOptions& opts);

struct UnpackOptions {
  std::string tree_path;
  std::vector<std::string> accumulators;
  std::string emit_path;  // solutions in monodromy order ("" = skip)
  std::string json_out;
};

nlohmann::json cmd_unpack(const UnpackOptions& opts);

struct TableOptions {
  std::uint64_t d = 666841088;
  std::uint64_t n = 10;
  std::uint64_t k = 90;
  std::vector<std::uint64_t> alphas = {100000, 1000, 10, 2, 1};
  std::string csv_out;
  std::string json_out;
};

/// Expected storage/unpack-cost table: rows I-IV plus one V row per alpha.
nlohmann::json cmd_table(const TableOptions& opts);

struct StatsOptions {
  std::uint64_t trials = 1000;
  std::uint64_t d = 100;
  std::uint64_t seed = 1;
  bool parallel = true;
  unsigned workers = 0;
  std::string csv_out;
  std::string json_out;
};

nlohmann::json cmd_stats(const StatsOptions& opts);

struct TradeoffOptions {
  std::uint64_t d = 10000;
  std::vector<std::uint64_t> alphas = {1, 4, 16, 64, 256};
  std::uint64_t trials = 10;
  std::uint64_t seed = 1;
  std::string csv_out;
  std::string json_out;
};

/// Streaming solves across alpha on common instances; per-alpha means of
/// queries, peak stored points, and tree size.
nlohmann::json cmd_tradeoff(const TradeoffOptions& opts);

}  // namespace mc
