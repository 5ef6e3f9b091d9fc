#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mcoords/descriptor.hpp"
#include "mcoords/oracle.hpp"
#include "mcoords/solve.hpp"
#include "mcoords/solution.hpp"

namespace mc {

/// Bit-accounting model: 64-bit reals and integers by default, so a point of
/// C^n costs 128n bits and an oracle five parameter points, 640k bits.
struct CostModel {
  double rho_real = 64;
  double rho_int = 64;

  double rho_complex(std::uint64_t n) const { return 2.0 * n * rho_real; }
  double rho_sigma(std::uint64_t k) const { return 5.0 * rho_complex(k); }
};

enum class RepType : std::uint8_t { I = 1, II = 2, III = 3, IV = 4, V = 5 };

/// alpha = infinity is encoded as 0: types I-IV, and type V storing initial
/// cycle solutions only.
constexpr std::uint64_t kAlphaInfinity = 0;

/// Restriction of a tree to its first k complete cycles: representatives per
/// cycle, F^(k-1), M^(k). First-class so in-cycle membership and iteration
/// share one code path between post-hoc unpacking and streaming solves.
struct PartialTree {
  std::vector<std::vector<Solution>> rep_groups;  // per cycle, offset order
  std::vector<std::uint64_t> founders;            // k-1 entries
  std::vector<std::uint64_t> cycle_sizes;         // k entries
  std::uint64_t alpha = kAlphaInfinity;
  OracleDescriptor descriptor;

  std::uint64_t found_count() const;
  std::uint64_t max_cycle_size() const;
};

struct MonodromyTree {
  RepType rep_type = RepType::I;
  std::uint64_t alpha = kAlphaInfinity;           // type V only
  Solution seed;                                  // types I-III
  std::vector<std::vector<Solution>> rep_groups;  // types IV-V, per cycle
  std::vector<std::uint64_t> founders;            // types II-V
  std::vector<std::uint64_t> cycle_sizes;         // types III-V
  OracleDescriptor descriptor;
  std::uint64_t n = 0, k = 0, d = 0;

  std::uint64_t cycle_count() const;

  /// Types IV-V. All cycles (as_partial) or the first `cycles` only.
  PartialTree as_partial() const;
  PartialTree prefix(std::uint64_t cycles) const;

  bool operator==(const MonodromyTree&) const;
};

/// Extracts exactly the fields of the requested representation from a
/// complete solve; everything else is discarded.
MonodromyTree encode(const SolveResult& result, RepType rep_type,
                     std::uint64_t alpha = kAlphaInfinity);

/// rho(sigma) plus the representation's own storage.
std::uint64_t memory_bits(const MonodromyTree& tree, const CostModel& cm = {});

struct ExpectedCosts {
  double bits = 0;
  double queries = 0;
};

/// Expected storage and unpack cost with H_d ~ ln(d) and E(j*) = (d+1)/2.
ExpectedCosts expected_costs(std::uint64_t d, std::uint64_t n, std::uint64_t k,
                             RepType rep_type,
                             std::uint64_t alpha = kAlphaInfinity,
                             const CostModel& cm = {});

struct UnpackResult {
  std::vector<Solution> solutions;  // monodromy order
  std::uint64_t queries = 0;
};

/// Recovers the full monodromy-ordered fiber. Exact query tallies:
/// I: d+j*-1, II: d+r-2, III: d-1, IV: d-r, V: d - sum(ceil(m_i/alpha)).
UnpackResult unpack(const MonodromyTree& tree, Oracle& oracle);

struct NextResult {
  Solution solution;
  std::uint64_t queries = 0;
};

/// Successor of s_j in monodromy order: free when j is a partial sum of M or
/// position j+1 holds a stored representative, otherwise one sigma0 query.
NextResult next_solution(const PartialTree& tree, Oracle& oracle,
                         std::uint64_t j, const Solution& sj);

struct MembershipResult {
  bool in_new_cycle = false;
  std::uint64_t queries = 0;
};

/// False iff s, or one of its first min(max(M), alpha)-1 sigma0 iterates,
/// equals a stored representative.
MembershipResult in_new_cycle(const PartialTree& tree, Oracle& oracle,
                              std::uint64_t alpha, const Solution& s);

/// Lazy monodromy-order pass over a complete type IV/V tree; total queries
/// over a full pass equal the type's unpack tally.
class TreeIterator {
public:
  TreeIterator(const MonodromyTree& tree, Oracle& oracle);

  bool done() const { return position_ > partial_.found_count(); }
  const Solution& current() const { return current_; }
  std::uint64_t position() const { return position_; }
  void advance();
  std::uint64_t queries() const { return queries_; }

private:
  PartialTree partial_;
  Oracle* oracle_;
  Solution current_;
  std::uint64_t position_ = 1;
  std::uint64_t queries_ = 0;
};

}  // namespace mc
