#include "mcoords/tree.hpp"

#include <algorithm>
#include <cmath>

#include "mcoords/errors.hpp"
#include "mcoords/registry.hpp"

namespace mc {

namespace {

bool solutions_equal(const Solution& a, const Solution& b) {
  return a.tag == b.tag && a.coords == b.coords;
}

bool groups_equal(const std::vector<std::vector<Solution>>& a,
                  const std::vector<std::vector<Solution>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!solutions_equal(a[i][j], b[i][j])) return false;
  }
  return true;
}

std::uint64_t ceil_div(std::uint64_t m, std::uint64_t alpha) {
  if (alpha == kAlphaInfinity) return 1;  // ceil(m / infinity) with m >= 1
  return (m + alpha - 1) / alpha;
}

}  // namespace

std::uint64_t PartialTree::found_count() const {
  std::uint64_t total = 0;
  for (auto m : cycle_sizes) total += m;
  return total;
}

std::uint64_t PartialTree::max_cycle_size() const {
  if (cycle_sizes.empty()) throw InvalidArgument("partial tree has no cycles");
  return *std::max_element(cycle_sizes.begin(), cycle_sizes.end());
}

std::uint64_t MonodromyTree::cycle_count() const {
  if (!cycle_sizes.empty()) return cycle_sizes.size();
  if (!rep_groups.empty()) return rep_groups.size();
  if (rep_type == RepType::II) return founders.size() + 1;
  return 0;
}

PartialTree MonodromyTree::as_partial() const {
  if (rep_type != RepType::IV && rep_type != RepType::V)
    throw InvalidArgument("only types IV and V carry cycle representatives");
  PartialTree p;
  p.rep_groups = rep_groups;
  p.founders = founders;
  p.cycle_sizes = cycle_sizes;
  p.alpha = rep_type == RepType::V ? alpha : kAlphaInfinity;
  p.descriptor = descriptor;
  return p;
}

PartialTree MonodromyTree::prefix(std::uint64_t cycles) const {
  PartialTree p = as_partial();
  if (cycles == 0 || cycles > p.rep_groups.size())
    throw InvalidArgument("prefix cycle count out of range");
  p.rep_groups.resize(cycles);
  p.cycle_sizes.resize(cycles);
  p.founders.resize(cycles - 1);
  return p;
}

bool MonodromyTree::operator==(const MonodromyTree& other) const {
  return rep_type == other.rep_type && alpha == other.alpha &&
         solutions_equal(seed, other.seed) &&
         groups_equal(rep_groups, other.rep_groups) &&
         founders == other.founders && cycle_sizes == other.cycle_sizes &&
         descriptor == other.descriptor && n == other.n && k == other.k &&
         d == other.d;
}

MonodromyTree encode(const SolveResult& result, RepType rep_type,
                     std::uint64_t alpha) {
  if (!result.complete)
    throw InvalidArgument("encode requires a complete solve result");
  if (result.ordered_solutions.empty())
    throw InvalidArgument("empty solve result");

  MonodromyTree tree;
  tree.rep_type = rep_type;
  tree.descriptor = result.descriptor;
  tree.d = result.degree();
  tree.n = result.ordered_solutions.front().coords.size();
  tree.k = result.descriptor.param_dim();

  switch (rep_type) {
    case RepType::V:
      tree.alpha = alpha;
      [[fallthrough]];
    case RepType::IV: {
      std::uint64_t start = 1;
      for (std::uint64_t m : result.cycle_sizes) {
        std::vector<Solution> group;
        const std::uint64_t step = rep_type == RepType::V && alpha != kAlphaInfinity
                                       ? alpha
                                       : m;  // initials only
        for (std::uint64_t off = 0; off < m; off += step)
          group.push_back(result.ordered_solutions[start - 1 + off]);
        tree.rep_groups.push_back(std::move(group));
        start += m;
      }
      tree.founders = result.founder_indices;
      tree.cycle_sizes = result.cycle_sizes;
      break;
    }
    case RepType::III:
      tree.cycle_sizes = result.cycle_sizes;
      [[fallthrough]];
    case RepType::II:
      tree.founders = result.founder_indices;
      [[fallthrough]];
    case RepType::I:
      tree.seed = result.ordered_solutions.front();
      break;
  }
  return tree;
}

std::uint64_t memory_bits(const MonodromyTree& tree, const CostModel& cm) {
  const double rc = cm.rho_complex(tree.n);
  const double ri = cm.rho_int;
  const double rs = cm.rho_sigma(tree.k);
  const double r = static_cast<double>(tree.cycle_count());
  double bits = rs;
  switch (tree.rep_type) {
    case RepType::I:
      bits += rc;
      break;
    case RepType::II:
      bits += rc + static_cast<double>(tree.founders.size()) * ri;
      break;
    case RepType::III:
      bits += rc + (2 * r - 1) * ri;
      break;
    case RepType::IV:
      bits += r * rc + (2 * r - 1) * ri;
      break;
    case RepType::V: {
      std::uint64_t stored = 0;
      for (std::uint64_t m : tree.cycle_sizes) stored += ceil_div(m, tree.alpha);
      bits += static_cast<double>(stored) * rc + (2 * r - 1) * ri;
      break;
    }
  }
  return static_cast<std::uint64_t>(std::llround(bits));
}

ExpectedCosts expected_costs(std::uint64_t d, std::uint64_t n, std::uint64_t k,
                             RepType rep_type, std::uint64_t alpha,
                             const CostModel& cm) {
  if (d == 0) throw InvalidArgument("d must be positive");
  const double dd = static_cast<double>(d);
  const double h = d == 1 ? 1.0 : std::log(dd);  // H_d ~ ln(d), H_1 = 1
  const double rc = cm.rho_complex(n);
  const double ri = cm.rho_int;
  const double rs = cm.rho_sigma(k);
  const double exp_j_star = (dd + 1.0) / 2.0;
  ExpectedCosts out;
  switch (rep_type) {
    case RepType::I:
      out.bits = rc + rs;
      out.queries = dd + exp_j_star - 1.0;
      break;
    case RepType::II:
      out.bits = rc + (h - 1.0) * ri + rs;
      out.queries = dd + h - 2.0;
      break;
    case RepType::III:
      out.bits = rc + (2.0 * h - 1.0) * ri + rs;
      out.queries = dd - 1.0;
      break;
    case RepType::IV:
      // 2*H_d points of C^n, matching the reference cost table.
      out.bits = 2.0 * h * rc + (2.0 * h - 1.0) * ri + rs;
      out.queries = dd - h;
      break;
    case RepType::V: {
      const double stored =
          alpha == kAlphaInfinity ? 0.0 : dd / static_cast<double>(alpha);
      out.bits = (stored + h) * rc + (2.0 * h - 1.0) * ri + rs;
      out.queries = dd - stored;
      break;
    }
  }
  return out;
}

namespace {

void check_descriptor(const MonodromyTree& tree, Oracle& oracle) {
  if (!(tree.descriptor == oracle.descriptor()))
    throw DescriptorMismatch("tree and oracle descriptors disagree");
}

// Shared reconstruction for types III-V: cycle sizes are known, so cycles are
// walked without a newness registry; initials come from stored groups (IV-V)
// or sigma1 of founders (III); type V injects stored in-cycle representatives.
UnpackResult unpack_with_sizes(const MonodromyTree& tree, Oracle& oracle) {
  UnpackResult out;
  const bool has_groups = !tree.rep_groups.empty();
  const std::uint64_t q0_before = oracle.count_sigma0();
  const std::uint64_t q1_before = oracle.count_sigma1();
  for (std::size_t c = 0; c < tree.cycle_sizes.size(); ++c) {
    Solution cur;
    if (has_groups) {
      cur = tree.rep_groups[c][0];
    } else if (c == 0) {
      cur = tree.seed;
    } else {
      cur = oracle.eval(1, out.solutions[tree.founders[c - 1] - 1]);
    }
    out.solutions.push_back(cur);
    for (std::uint64_t off = 1; off < tree.cycle_sizes[c]; ++off) {
      std::uint64_t idx;
      if (tree.rep_type == RepType::V && tree.alpha != kAlphaInfinity &&
          off % tree.alpha == 0 &&
          (idx = off / tree.alpha) < tree.rep_groups[c].size()) {
        cur = tree.rep_groups[c][idx];
      } else {
        cur = oracle.eval(0, cur);
      }
      out.solutions.push_back(cur);
    }
  }
  out.queries = (oracle.count_sigma0() - q0_before) +
                (oracle.count_sigma1() - q1_before);
  return out;
}

UnpackResult unpack_type_ii(const MonodromyTree& tree, Oracle& oracle,
                            std::uint64_t d) {
  UnpackResult out;
  const std::uint64_t q0_before = oracle.count_sigma0();
  const std::uint64_t q1_before = oracle.count_sigma1();
  SolutionRegistry registry(oracle);
  registry.insert(tree.seed);
  out.solutions.push_back(tree.seed);
  std::size_t founder_pos = 0;
  while (out.solutions.size() < d) {
    Solution q = oracle.eval(0, out.solutions.back());
    if (registry.insert(q)) {
      out.solutions.push_back(std::move(q));
      continue;
    }
    // Cycle closed; the stored founder index points straight at the next one.
    if (founder_pos >= tree.founders.size())
      throw DescriptorMismatch("founder list exhausted before recovering d solutions");
    Solution c = oracle.eval(1, out.solutions[tree.founders[founder_pos] - 1]);
    ++founder_pos;
    if (!registry.insert(c))
      throw DescriptorMismatch("stored founder did not open a new cycle");
    out.solutions.push_back(std::move(c));
  }
  out.queries = (oracle.count_sigma0() - q0_before) +
                (oracle.count_sigma1() - q1_before);
  return out;
}

}  // namespace

UnpackResult unpack(const MonodromyTree& tree, Oracle& oracle) {
  check_descriptor(tree, oracle);
  const std::uint64_t d = tree.d ? tree.d : oracle.fiber_size();
  UnpackResult out;
  switch (tree.rep_type) {
    case RepType::I: {
      auto result = monodromy_solve(oracle, tree.seed,
                                    StoppingCriterion::target_count(d));
      out.solutions = std::move(result.ordered_solutions);
      out.queries = result.queries_sigma0 + result.queries_sigma1;
      break;
    }
    case RepType::II:
      out = unpack_type_ii(tree, oracle, d);
      break;
    default:
      out = unpack_with_sizes(tree, oracle);
      break;
  }
  if (out.solutions.size() != d)
    throw DescriptorMismatch("recovered solution count differs from d");
  return out;
}

NextResult next_solution(const PartialTree& tree, Oracle& oracle,
                         std::uint64_t j, const Solution& sj) {
  const std::uint64_t total = tree.found_count();
  if (j == 0 || j >= total)
    throw InvalidArgument("next is defined for 1 <= j < sum(M)");
  std::uint64_t start = 1;  // position of the current cycle's initial
  for (std::size_t c = 0; c < tree.cycle_sizes.size(); ++c) {
    const std::uint64_t m = tree.cycle_sizes[c];
    if (j == start + m - 1) {
      // j is the partial sum M_1 + ... + M_{c+1}; successor starts cycle c+2.
      return {tree.rep_groups[c + 1][0], 0};
    }
    if (j < start + m - 1 && j >= start) {
      const std::uint64_t offset = j + 1 - start;
      if (tree.alpha != kAlphaInfinity && offset % tree.alpha == 0) {
        const std::uint64_t idx = offset / tree.alpha;
        if (idx < tree.rep_groups[c].size()) return {tree.rep_groups[c][idx], 0};
      }
      return {oracle.eval(0, sj), 1};
    }
    start += m;
  }
  throw InvalidArgument("index not covered by the partial tree");
}

MembershipResult in_new_cycle(const PartialTree& tree, Oracle& oracle,
                              std::uint64_t alpha, const Solution& s) {
  SolutionRegistry stored(oracle);
  for (const auto& group : tree.rep_groups)
    for (const auto& rep : group) stored.insert(rep);

  if (stored.contains(s)) return {false, 0};
  const std::uint64_t max_m = tree.max_cycle_size();
  const std::uint64_t bound =
      (alpha == kAlphaInfinity ? max_m : std::min(max_m, alpha)) - 1;
  Solution cur = s;
  std::uint64_t queries = 0;
  for (std::uint64_t i = 0; i < bound; ++i) {
    cur = oracle.eval(0, cur);
    ++queries;
    if (stored.contains(cur)) return {false, queries};
  }
  return {true, queries};
}

TreeIterator::TreeIterator(const MonodromyTree& tree, Oracle& oracle)
    : partial_(tree.as_partial()), oracle_(&oracle) {
  if (!(tree.descriptor == oracle.descriptor()))
    throw DescriptorMismatch("tree and oracle descriptors disagree");
  current_ = partial_.rep_groups.front().front();
}

void TreeIterator::advance() {
  if (done()) throw InvalidArgument("iterator exhausted");
  if (position_ == partial_.found_count()) {
    // Stepping off the last solution; no successor query is defined.
    ++position_;
    return;
  }
  auto next = next_solution(partial_, *oracle_, position_, current_);
  current_ = std::move(next.solution);
  queries_ += next.queries;
  ++position_;
}

}  // namespace mc
