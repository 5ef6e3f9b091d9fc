#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcoords/descriptor.hpp"
#include "mcoords/oracle.hpp"
#include "mcoords/solution.hpp"

namespace mc {

enum class StopKind : std::uint8_t { TargetCount, TraceTest, QueryBudget };

struct StoppingCriterion {
  StopKind kind = StopKind::TargetCount;
  std::uint64_t target = 0;       // TargetCount
  double tolerance = 0.0;         // TraceTest
  std::uint64_t max_queries = 0;  // QueryBudget

  static StoppingCriterion target_count(std::uint64_t d) {
    return {StopKind::TargetCount, d, 0.0, 0};
  }
  static StoppingCriterion trace_test(double tolerance) {
    return {StopKind::TraceTest, 0, tolerance, 0};
  }
  static StoppingCriterion query_budget(std::uint64_t max_queries) {
    return {StopKind::QueryBudget, 0, 0.0, max_queries};
  }
};

/// How a solution entered the ordering: via sigma0 applied to its predecessor
/// or sigma1 applied to a founder. The seed has parent 0.
struct DiscoveryEdge {
  std::uint64_t parent = 0;
  int label = -1;  // 0 or 1, -1 for the seed
};

struct SolveResult {
  std::vector<Solution> ordered_solutions;           // monodromy order
  std::vector<std::uint64_t> founder_indices;        // F, ascending
  std::uint64_t j_star = 0;                          // max(F), 0 when r = 1
  std::vector<std::uint64_t> cycle_sizes;            // M
  std::vector<std::uint64_t> initial_cycle_indices;  // 1, 1+M1, 1+M1+M2, ...
  std::vector<DiscoveryEdge> edges;                  // one per solution
  std::uint64_t queries_sigma0 = 0;
  std::uint64_t queries_sigma1 = 0;
  OracleDescriptor descriptor;
  bool complete = true;

  std::uint64_t degree() const { return ordered_solutions.size(); }
  std::uint64_t cycle_count() const { return cycle_sizes.size(); }
};

/// Greedy fiber discovery from one seed: walk sigma0 from the last found
/// solution; on hitting an old one, scan sigma1(s_j) for j = 1, 2, ... until
/// a new cycle appears. TargetCount runs are guarded by a 50*d query budget
/// against non-transitive generators.
SolveResult monodromy_solve(Oracle& oracle, const Solution& seed,
                            const StoppingCriterion& stop);

/// Binary word over {sigma0, sigma1} mapping the seed to solution `position`
/// (1-based); empty for the seed itself.
std::string monodromy_coordinates(const SolveResult& result,
                                  std::uint64_t position);

struct StatisticsReport {
  std::uint64_t trials = 0;
  std::uint64_t d = 0;
  double mean_j_star = 0;
  double se_j_star = 0;
  double mean_cycle_count = 0;
  double mean_largest_cycle = 0;
  double mean_total_queries = 0;
  double mean_resamples = 0;
  std::vector<std::uint64_t> j_star_histogram;  // index j-1 counts j* == j
  double j_star_chi_square = 0;
  double j_star_p_value = 0;
};

/// Monte Carlo over fresh synthetic oracles (n = 1), with per-trial derived
/// seeds so the report is independent of worker scheduling.
StatisticsReport solve_statistics(std::uint64_t trials, std::uint64_t d,
                                  std::uint64_t seed, bool parallel,
                                  unsigned workers = 0);

struct PermutationStatsReport {
  std::uint64_t trials = 0;
  std::uint64_t d = 0;
  double transitive_rate = 0;    // vs 1 - 1/d
  double mean_cycle_count = 0;   // vs H_d
  double mean_largest_cycle = 0; // vs 0.6243 * d
};

/// Monte Carlo over unconditioned uniform permutation pairs: transitivity
/// rate of the pair, cycle statistics of the first permutation.
PermutationStatsReport permutation_statistics(std::uint64_t trials,
                                              std::uint64_t d,
                                              std::uint64_t seed, bool parallel,
                                              unsigned workers = 0);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_p_value(double statistic, double dof);

double harmonic_number(std::uint64_t d);

}  // namespace mc
