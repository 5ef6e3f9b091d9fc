#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcoords/accumulators.hpp"
#include "mcoords/oracle.hpp"
#include "mcoords/solve.hpp"
#include "mcoords/tree.hpp"

namespace mc {

struct StreamResult {
  /// Populated for complete runs (TargetCount reached).
  std::optional<MonodromyTree> tree;
  /// Populated when the stop fired early; holds the complete cycles only,
  /// the in-progress cycle is dropped so a resume can rediscover it.
  std::optional<PartialTree> partial;

  std::map<std::string, nlohmann::json> accumulator_values;
  std::uint64_t queries_sigma0 = 0;
  std::uint64_t queries_sigma1 = 0;
  std::uint64_t queries_slices = 0;
  std::uint64_t peak_points_stored = 0;
  std::uint64_t found_count = 0;
  std::uint64_t j_star = 0;
};

/// Direct type-V construction with O(n d/alpha) live points: walk sigma0
/// comparing only against the current cycle's initial solution, store every
/// alpha-th solution, search for new cycles via sigma1 and in-cycle
/// membership against everything stored. Every newly discovered solution is
/// fed to each accumulator exactly once.
StreamResult streaming_solve(Oracle& oracle, const Solution& seed,
                             std::uint64_t alpha, const StoppingCriterion& stop,
                             const std::vector<Accumulator*>& accumulators = {});

/// Continues a run from k complete cycles; accumulators receive only newly
/// found solutions.
StreamResult resume_from_partial(const PartialTree& tree, Oracle& oracle,
                                 std::uint64_t alpha,
                                 const StoppingCriterion& stop,
                                 const std::vector<Accumulator*>& accumulators = {});

/// Stops once the running trace combination G1 has max-norm below
/// tolerance * (1 + max-norm of the base-slice sum).
StoppingCriterion trace_test_stop(double tolerance);

}  // namespace mc
