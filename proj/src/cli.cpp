#include "mcoords/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mcoords/accumulators.hpp"
#include "mcoords/errors.hpp"
#include "mcoords/homotopy.hpp"
#include "mcoords/serialize.hpp"
#include "mcoords/solve.hpp"
#include "mcoords/stream.hpp"

namespace mc {

namespace {

constexpr const char* kSeedSplitFunction = "splitmix64(base ^ index)";

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

RepType parse_rep(const std::string& text) {
  if (text == "I" || text == "1") return RepType::I;
  if (text == "II" || text == "2") return RepType::II;
  if (text == "III" || text == "3") return RepType::III;
  if (text == "IV" || text == "4") return RepType::IV;
  if (text == "V" || text == "5") return RepType::V;
  throw InvalidArgument("unknown representation '" + text + "' (want I..V)");
}

const char* rep_name(RepType t) {
  switch (t) {
    case RepType::I: return "I";
    case RepType::II: return "II";
    case RepType::III: return "III";
    case RepType::IV: return "IV";
    case RepType::V: return "V";
  }
  return "?";
}

std::unique_ptr<Oracle> make_backend(const SolveOptions& opts) {
  if (opts.backend == "synthetic")
    return make_synthetic(opts.d, opts.n, opts.seed);
  if (opts.backend == "example2") return make_example2();
  if (opts.backend == "parametric") {
    Rng rng(opts.seed);
    std::vector<std::complex<double>> roots(opts.degree);
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 100)
        throw TrackingFailure("failed to sample well-separated roots");
      for (auto& r : roots) r = 2.0 * rng.complex_normal();
      bool ok = true;
      for (std::size_t i = 0; i < roots.size() && ok; ++i)
        for (std::size_t j = i + 1; j < roots.size() && ok; ++j)
          if (std::abs(roots[i] - roots[j]) < 1e-3) ok = false;
      if (ok) break;
    }
    return make_numeric_oracle(family_from_roots(roots, derive_seed(opts.seed, 1)));
  }
  throw InvalidArgument("unknown backend '" + opts.backend + "'");
}

StoppingCriterion make_stop(const StopSpec& spec, std::uint64_t fiber_size) {
  if (spec.kind == "count")
    return StoppingCriterion::target_count(spec.count ? spec.count : fiber_size);
  if (spec.kind == "trace") return trace_test_stop(spec.tolerance);
  if (spec.kind == "budget") return StoppingCriterion::query_budget(spec.budget);
  throw InvalidArgument("unknown stop kind '" + spec.kind + "'");
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  std::string full = resolve_output_path(path);
  std::ofstream out(full);
  if (!out) throw FormatError("cannot open '" + full + "' for writing");
  out << j.dump(2) << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::string full = resolve_output_path(path);
  std::ofstream out(full);
  if (!out) throw FormatError("cannot open '" + full + "' for writing");
  out << text;
}

nlohmann::json query_record(std::uint64_t q0, std::uint64_t q1,
                            std::uint64_t slices) {
  return {{"sigma0", q0},
          {"sigma1", q1},
          {"slices", slices},
          {"total", q0 + q1}};
}

std::string emit_solutions_text(const std::vector<Solution>& sols) {
  // One solution per line: tag, then re/im pairs with full precision.
  std::string out = "# tag re0 im0 [re1 im1 ...]\n";
  char buf[64];
  for (const Solution& s : sols) {
    out += std::to_string(s.tag);
    for (const auto& z : s.coords) {
      std::snprintf(buf, sizeof buf, " %.17g %.17g", z.real(), z.imag());
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace

std::string resolve_output_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  const char* dir = std::getenv("MCOORDS_OUT_DIR");
  if (!dir || !*dir) return path;
  return (std::filesystem::path(dir) / p).string();
}

StopSpec StopSpec::parse(const std::string& text) {
  StopSpec spec;
  auto eq = text.find('=');
  std::string kind = text.substr(0, eq);
  std::string arg = eq == std::string::npos ? "" : text.substr(eq + 1);
  if (kind == "count") {
    spec.kind = "count";
    if (!arg.empty()) spec.count = std::stoull(arg);
  } else if (kind == "trace") {
    spec.kind = "trace";
    if (!arg.empty()) spec.tolerance = std::stod(arg);
  } else if (kind == "budget") {
    spec.kind = "budget";
    if (arg.empty()) throw InvalidArgument("budget stop needs a query count");
    spec.budget = std::stoull(arg);
  } else {
    throw InvalidArgument("unknown stop '" + text +
                          "' (want count[=N], trace[=TOL], budget=N)");
  }
  return spec;
}

nlohmann::json cmd_solve(const SolveOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  auto oracle = make_backend(opts);
  StoppingCriterion stop = make_stop(opts.stop, oracle->fiber_size());

  std::vector<std::unique_ptr<Accumulator>> owned;
  std::vector<Accumulator*> accs;
  for (const std::string& name : opts.accumulators) {
    owned.push_back(make_accumulator(name));
    accs.push_back(owned.back().get());
  }

  nlohmann::json rec;
  rec["command"] = "solve";
  rec["backend"] = opts.backend;
  rec["seed"] = opts.seed;
  rec["alpha"] = opts.alpha;  // 0 encodes infinity
  rec["rng_id"] = Rng::kAlgorithmId;
  rec["seed_split_function"] = kSeedSplitFunction;

  std::optional<MonodromyTree> tree;
  if (opts.classic) {
    if (stop.kind != StopKind::TargetCount)
      throw InvalidArgument("--classic supports count stops only");
    SolveResult result = monodromy_solve(*oracle, oracle->seed_solution(), stop);
    for (const Solution& s : result.ordered_solutions)
      for (Accumulator* acc : accs) acc->add(s, *oracle);
    tree = encode(result, parse_rep(opts.rep), opts.alpha);
    rec["d"] = result.degree();
    rec["r"] = result.cycle_count();
    rec["M"] = result.cycle_sizes;
    rec["F"] = result.founder_indices;
    rec["j_star"] = result.j_star;
    rec["complete"] = result.complete;
    rec["queries"] = query_record(result.queries_sigma0, result.queries_sigma1,
                                  oracle->count_slices());
    rec["peak_points"] = result.degree();  // Algorithm 1 holds the full fiber
  } else {
    StreamResult result = streaming_solve(*oracle, oracle->seed_solution(),
                                          opts.alpha, stop, accs);
    tree = result.tree;
    rec["d"] = result.found_count;
    rec["j_star"] = result.j_star;
    rec["complete"] = result.tree.has_value();
    rec["queries"] = query_record(result.queries_sigma0, result.queries_sigma1,
                                  result.queries_slices);
    rec["peak_points"] = result.peak_points_stored;
    const auto* sizes = result.tree ? &result.tree->cycle_sizes
                                    : &result.partial->cycle_sizes;
    const auto* founders = result.tree ? &result.tree->founders
                                       : &result.partial->founders;
    rec["r"] = sizes->size();
    rec["M"] = *sizes;
    rec["F"] = *founders;
    for (const auto& [name, value] : result.accumulator_values)
      rec["accumulators"][name] = value;
  }
  if (opts.classic)
    for (Accumulator* acc : accs) rec["accumulators"][acc->id()] = acc->value();

  if (tree) {
    rec["rep_type"] = rep_name(tree->rep_type);
    rec["memory_bits"] = memory_bits(*tree);
    if (!opts.tree_out.empty()) {
      std::string path = resolve_output_path(opts.tree_out);
      write_tree_file(path, *tree);
      write_tree_json(path + ".json", *tree);
      rec["tree_file"] = path;
    }
  }
  if (opts.backend == "parametric") {
    auto* numeric = dynamic_cast<NumericOracle*>(oracle.get());
    rec["max_fiber_residual"] = numeric->max_fiber_residual();
  }
  rec["wall_time_s"] = seconds_since(t0);
  write_json_file(opts.json_out, rec);
  return rec;
}

nlohmann::json cmd_unpack(const UnpackOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  MonodromyTree tree = read_tree_file(opts.tree_path);
  auto oracle = oracle_from_descriptor(tree.descriptor);

  std::vector<std::unique_ptr<Accumulator>> owned;
  std::vector<Accumulator*> accs;
  for (const std::string& name : opts.accumulators) {
    owned.push_back(make_accumulator(name));
    accs.push_back(owned.back().get());
  }

  nlohmann::json rec;
  rec["command"] = "unpack";
  rec["rep_type"] = rep_name(tree.rep_type);
  rec["d"] = tree.d;
  rec["alpha"] = tree.alpha;

  std::uint64_t queries = 0;
  std::vector<Solution> emitted;
  const bool want_emit = !opts.emit_path.empty();
  if (tree.rep_type == RepType::IV || tree.rep_type == RepType::V) {
    // Iterate lazily; per-solution live state stays O(tree size).
    for (TreeIterator it(tree, *oracle); !it.done(); it.advance()) {
      for (Accumulator* acc : accs) acc->add(it.current(), *oracle);
      if (want_emit) emitted.push_back(it.current());
      queries = it.queries();
    }
  } else {
    UnpackResult result = unpack(tree, *oracle);
    for (const Solution& s : result.solutions)
      for (Accumulator* acc : accs) acc->add(s, *oracle);
    if (want_emit) emitted = std::move(result.solutions);
    queries = result.queries;
  }
  rec["queries"] = queries;
  for (Accumulator* acc : accs) rec["accumulators"][acc->id()] = acc->value();
  if (want_emit) {
    write_text_file(opts.emit_path, emit_solutions_text(emitted));
    rec["emit_file"] = resolve_output_path(opts.emit_path);
  }
  rec["wall_time_s"] = seconds_since(t0);
  write_json_file(opts.json_out, rec);
  return rec;
}

nlohmann::json cmd_table(const TableOptions& opts) {
  if (opts.d == 0 || opts.n == 0 || opts.k == 0)
    throw InvalidArgument("table needs positive d, n, k");
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "rep,alpha,space_bits,time_queries\n";
  auto add_row = [&](RepType rep, std::uint64_t alpha) {
    ExpectedCosts c = expected_costs(opts.d, opts.n, opts.k, rep, alpha);
    rows.push_back({{"rep", rep_name(rep)},
                    {"alpha", alpha},
                    {"space_bits", c.bits},
                    {"time_queries", c.queries}});
    csv += std::string(rep_name(rep)) + "," +
           (alpha == kAlphaInfinity ? "inf" : std::to_string(alpha)) + "," +
           std::to_string(static_cast<std::uint64_t>(c.bits)) + "," +
           std::to_string(static_cast<std::uint64_t>(c.queries)) + "\n";
  };
  add_row(RepType::I, kAlphaInfinity);
  add_row(RepType::II, kAlphaInfinity);
  add_row(RepType::III, kAlphaInfinity);
  add_row(RepType::IV, kAlphaInfinity);
  for (std::uint64_t alpha : opts.alphas) add_row(RepType::V, alpha);

  nlohmann::json rec;
  rec["command"] = "table";
  rec["d"] = opts.d;
  rec["n"] = opts.n;
  rec["k"] = opts.k;
  rec["rows"] = std::move(rows);
  if (!opts.csv_out.empty()) write_text_file(opts.csv_out, csv);
  write_json_file(opts.json_out, rec);
  return rec;
}

nlohmann::json cmd_stats(const StatsOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  StatisticsReport solve_rep = solve_statistics(opts.trials, opts.d, opts.seed,
                                                opts.parallel, opts.workers);
  PermutationStatsReport perm_rep = permutation_statistics(
      opts.trials, opts.d, derive_seed(opts.seed, 0x9e55), opts.parallel,
      opts.workers);

  const double dd = static_cast<double>(opts.d);
  nlohmann::json rec;
  rec["command"] = "stats";
  rec["trials"] = opts.trials;
  rec["d"] = opts.d;
  rec["seed"] = opts.seed;
  rec["seed_split_function"] = kSeedSplitFunction;
  rec["permutations"] = {
      {"transitive_rate", perm_rep.transitive_rate},
      {"transitive_rate_reference", 1.0 - 1.0 / dd},
      {"mean_cycle_count", perm_rep.mean_cycle_count},
      {"mean_cycle_count_reference", harmonic_number(opts.d)},
      {"mean_largest_cycle", perm_rep.mean_largest_cycle},
      {"mean_largest_cycle_reference", 0.6243 * dd}};
  rec["solver"] = {{"mean_j_star", solve_rep.mean_j_star},
                   {"se_j_star", solve_rep.se_j_star},
                   {"mean_j_star_reference", (dd + 1.0) / 2.0},
                   {"mean_total_queries", solve_rep.mean_total_queries},
                   {"mean_total_queries_reference", (3.0 * dd - 1.0) / 2.0},
                   {"mean_cycle_count", solve_rep.mean_cycle_count},
                   {"mean_resamples", solve_rep.mean_resamples},
                   {"j_star_chi_square", solve_rep.j_star_chi_square},
                   {"j_star_p_value", solve_rep.j_star_p_value},
                   {"j_star_uniformity_gating", false}};
  if (!opts.csv_out.empty()) {
    std::string csv = "j_star,count\n";
    for (std::size_t j = 0; j < solve_rep.j_star_histogram.size(); ++j)
      csv += std::to_string(j + 1) + "," +
             std::to_string(solve_rep.j_star_histogram[j]) + "\n";
    write_text_file(opts.csv_out, csv);
  }
  rec["wall_time_s"] = seconds_since(t0);
  write_json_file(opts.json_out, rec);
  return rec;
}

nlohmann::json cmd_tradeoff(const TradeoffOptions& opts) {
  if (opts.d < 2 || opts.trials == 0 || opts.alphas.empty())
    throw InvalidArgument("tradeoff needs d >= 2, trials >= 1, alphas");
  auto t0 = std::chrono::steady_clock::now();

  std::vector<double> mean_q(opts.alphas.size(), 0),
      mean_peak(opts.alphas.size(), 0), mean_bits(opts.alphas.size(), 0);
  for (std::uint64_t trial = 0; trial < opts.trials; ++trial) {
    std::uint64_t instance_seed = derive_seed(opts.seed, trial);
    for (std::size_t ai = 0; ai < opts.alphas.size(); ++ai) {
      // Same seed, same instance: only alpha varies within a trial.
      auto oracle = make_synthetic(opts.d, 1, instance_seed);
      StreamResult result = streaming_solve(
          *oracle, oracle->seed_solution(), opts.alphas[ai],
          StoppingCriterion::target_count(opts.d));
      mean_q[ai] += static_cast<double>(result.queries_sigma0 +
                                        result.queries_sigma1);
      mean_peak[ai] += static_cast<double>(result.peak_points_stored);
      mean_bits[ai] += static_cast<double>(memory_bits(*result.tree));
    }
  }
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "alpha,mean_queries,mean_peak_points,mean_memory_bits\n";
  for (std::size_t ai = 0; ai < opts.alphas.size(); ++ai) {
    const double nt = static_cast<double>(opts.trials);
    rows.push_back({{"alpha", opts.alphas[ai]},
                    {"mean_queries", mean_q[ai] / nt},
                    {"mean_peak_points", mean_peak[ai] / nt},
                    {"mean_memory_bits", mean_bits[ai] / nt}});
    csv += std::to_string(opts.alphas[ai]) + "," +
           std::to_string(mean_q[ai] / nt) + "," +
           std::to_string(mean_peak[ai] / nt) + "," +
           std::to_string(mean_bits[ai] / nt) + "\n";
  }
  nlohmann::json rec;
  rec["command"] = "tradeoff";
  rec["d"] = opts.d;
  rec["trials"] = opts.trials;
  rec["seed"] = opts.seed;
  rec["rows"] = std::move(rows);
  rec["wall_time_s"] = seconds_since(t0);
  if (!opts.csv_out.empty()) write_text_file(opts.csv_out, csv);
  write_json_file(opts.json_out, rec);
  return rec;
}

}  // namespace mc
