#include "mcoords/stream.hpp"

#include <algorithm>
#include <unordered_map>

#include "mcoords/errors.hpp"
#include "mcoords/registry.hpp"

namespace mc {

StoppingCriterion trace_test_stop(double tolerance) {
  if (!(tolerance > 0)) throw InvalidArgument("trace tolerance must be positive");
  return StoppingCriterion::trace_test(tolerance);
}

namespace {

constexpr std::uint64_t kBudgetFactor = 50;

struct StreamRun {
  Oracle& oracle;
  std::uint64_t alpha;  // kAlphaInfinity = store initials only
  const StoppingCriterion& stop;
  std::vector<Accumulator*> accumulators;
  TraceAccumulator* trace = nullptr;
  std::unique_ptr<TraceAccumulator> owned_trace;

  SolutionRegistry stored;
  std::unordered_map<std::uint64_t, Solution> stored_by_pos;
  std::vector<std::uint64_t> initial_positions;  // positions of I members
  std::vector<std::uint64_t> cycle_sizes;        // M, closed cycles
  std::vector<std::uint64_t> founders;           // F

  Solution s, sj;
  std::uint64_t m = 0;      // size of the in-progress cycle, 0 mid-scan
  std::uint64_t a = 0;      // storage counter
  std::uint64_t j = 1;      // sigma1 scan index
  std::uint64_t count = 0;  // solutions found so far
  bool need_new_cycle = false;

  std::uint64_t q0_base, q1_base, qs_base;
  std::uint64_t budget;
  std::uint64_t peak = 0;

  StreamRun(Oracle& oracle_, std::uint64_t alpha_, const StoppingCriterion& stop_,
            const std::vector<Accumulator*>& accs)
      : oracle(oracle_), alpha(alpha_), stop(stop_), accumulators(accs),
        stored(oracle_) {
    if (stop.kind == StopKind::TargetCount && stop.target == 0)
      throw InvalidArgument("target count must be positive");
    if (stop.kind == StopKind::QueryBudget && stop.max_queries == 0)
      throw InvalidArgument("query budget must be positive");
    for (Accumulator* acc : accumulators) {
      if (auto* t = dynamic_cast<TraceAccumulator*>(acc)) trace = t;
    }
    if (stop.kind == StopKind::TraceTest) {
      if (!oracle.supports_slices())
        throw FeatureNotAvailable("trace-test stopping requires slice support");
      if (!trace) {
        owned_trace = std::make_unique<TraceAccumulator>();
        trace = owned_trace.get();
        accumulators.push_back(trace);
      }
    }
    q0_base = oracle.count_sigma0();
    q1_base = oracle.count_sigma1();
    qs_base = oracle.count_slices();
    // The legitimate worst case is d-1 + j*(min(max(M),alpha)+1), which can
    // reach ~d*alpha; size the runaway guard against that, not against d.
    const std::uint64_t d = std::max<std::uint64_t>(oracle.fiber_size(), 1);
    const std::uint64_t a_cap =
        alpha == kAlphaInfinity ? d : std::min<std::uint64_t>(alpha, d);
    budget = stop.kind == StopKind::QueryBudget
                 ? stop.max_queries
                 : kBudgetFactor * d * (a_cap + 2);
  }

  std::uint64_t queries() const {
    return (oracle.count_sigma0() - q0_base) + (oracle.count_sigma1() - q1_base);
  }

  void accumulate(const Solution& sol) {
    for (Accumulator* acc : accumulators) acc->add(sol, oracle);
  }

  void note_peak() {
    // Live points: everything stored plus s, sj and the scan temporary.
    peak = std::max<std::uint64_t>(peak, stored_by_pos.size() + 3);
  }

  bool stop_met() const {
    switch (stop.kind) {
      case StopKind::TargetCount:
        return count >= stop.target;
      case StopKind::TraceTest:
        return trace->within(stop.tolerance);
      case StopKind::QueryBudget:
        return queries() >= stop.max_queries;
    }
    return false;
  }

  void check_budget() const {
    if (stop.kind != StopKind::QueryBudget && queries() >= budget)
      throw BudgetExhausted(
          "query budget exhausted before the stopping criterion fired "
          "(non-transitive generators or wrong degree?)");
  }

  void store(const Solution& sol, std::uint64_t position, bool initial) {
    stored.insert(sol);
    stored_by_pos.emplace(position, sol);
    if (initial) initial_positions.push_back(position);
  }

  void seed_with(const Solution& seed) {
    count = 1;
    m = 1;
    s = seed;
    sj = seed;
    store(seed, 1, true);
    accumulate(seed);
    note_peak();
  }

  const Solution& current_initial() const {
    return stored_by_pos.at(initial_positions.back());
  }

  std::uint64_t max_closed_cycle() const {
    return *std::max_element(cycle_sizes.begin(), cycle_sizes.end());
  }

  bool in_new_cycle_walk(const Solution& candidate) {
    if (stored.contains(candidate)) return false;
    const std::uint64_t max_m = max_closed_cycle();
    const std::uint64_t bound =
        (alpha == kAlphaInfinity ? max_m : std::min(max_m, alpha)) - 1;
    Solution cur = candidate;
    for (std::uint64_t i = 0; i < bound; ++i) {
      cur = oracle.eval(0, cur);
      if (stored.contains(cur)) return false;
    }
    return true;
  }

  // Algorithm 2 against the run's own bookkeeping: stored positions are free.
  Solution scan_next() {
    auto it = stored_by_pos.find(j + 1);
    if (it != stored_by_pos.end()) return it->second;
    return oracle.eval(0, sj);
  }

  // Returns false when a QueryBudget stop fired mid-scan.
  bool find_new_cycle() {
    for (;;) {
      if (j > count)
        throw BudgetExhausted(
            "sigma1 scan exhausted all found solutions; generators do not "
            "act transitively");
      if (stop.kind == StopKind::QueryBudget && queries() >= stop.max_queries)
        return false;
      check_budget();
      Solution t_star = oracle.eval(1, sj);
      if (in_new_cycle_walk(t_star)) {
        founders.push_back(j);
        ++count;
        m = 1;
        a = 0;
        s = t_star;
        store(t_star, count, true);
        accumulate(t_star);
        sj = scan_next();
        ++j;
        note_peak();
        return true;
      }
      sj = scan_next();
      ++j;
    }
  }

  void run() {
    while (!stop_met()) {
      if (need_new_cycle) {
        if (!find_new_cycle()) break;
        need_new_cycle = false;
        continue;
      }
      check_budget();
      if (stop.kind == StopKind::QueryBudget && queries() >= stop.max_queries)
        break;
      s = oracle.eval(0, s);
      if (!oracle.equal(s, current_initial())) {
        ++m;
        ++a;
        ++count;
        accumulate(s);
        if (alpha != kAlphaInfinity && a == alpha) {
          store(s, count, false);
          a = 0;
        }
        note_peak();
      } else {
        cycle_sizes.push_back(m);
        m = 0;
        a = 0;
        need_new_cycle = true;
      }
    }
  }

  std::vector<std::vector<Solution>> groups_for(
      const std::vector<std::uint64_t>& sizes) const {
    std::vector<std::vector<Solution>> groups(sizes.size());
    std::uint64_t start = 1;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      for (std::uint64_t off = 0; off < sizes[c]; ++off) {
        auto it = stored_by_pos.find(start + off);
        if (it != stored_by_pos.end()) groups[c].push_back(it->second);
      }
      start += sizes[c];
    }
    return groups;
  }

  StreamResult finish() {
    StreamResult out;
    out.queries_sigma0 = oracle.count_sigma0() - q0_base;
    out.queries_sigma1 = oracle.count_sigma1() - q1_base;
    out.queries_slices = oracle.count_slices() - qs_base;
    out.peak_points_stored = peak;
    out.found_count = count;

    const bool complete = stop.kind == StopKind::TargetCount && count >= stop.target;
    OracleDescriptor desc = oracle.descriptor();
    if (complete) {
      std::vector<std::uint64_t> sizes = cycle_sizes;
      if (m > 0) sizes.push_back(m);  // final cycle closed by the count stop
      MonodromyTree tree;
      tree.rep_type = RepType::V;
      tree.alpha = alpha;
      tree.rep_groups = groups_for(sizes);
      tree.founders = founders;
      tree.cycle_sizes = std::move(sizes);
      tree.descriptor = desc;
      tree.d = count;
      tree.n = stored_by_pos.at(1).coords.size();
      tree.k = desc.param_dim();
      out.j_star = tree.founders.empty() ? 0 : tree.founders.back();
      out.tree = std::move(tree);
    } else {
      // Only observed cycle closures count; the in-progress cycle and its
      // founder are dropped so a resume rediscovers them.
      PartialTree partial;
      partial.cycle_sizes = cycle_sizes;
      partial.founders = founders;
      if (m > 0 && !partial.founders.empty()) partial.founders.pop_back();
      partial.rep_groups = groups_for(partial.cycle_sizes);
      partial.alpha = alpha;
      partial.descriptor = desc;
      out.j_star = partial.founders.empty() ? 0 : partial.founders.back();
      out.partial = std::move(partial);
    }
    for (Accumulator* acc : accumulators)
      out.accumulator_values[acc->id()] = acc->value();
    return out;
  }
};

}  // namespace

StreamResult streaming_solve(Oracle& oracle, const Solution& seed,
                             std::uint64_t alpha, const StoppingCriterion& stop,
                             const std::vector<Accumulator*>& accumulators) {
  StreamRun run(oracle, alpha, stop, accumulators);
  run.seed_with(seed);
  run.run();
  return run.finish();
}

StreamResult resume_from_partial(const PartialTree& tree, Oracle& oracle,
                                 std::uint64_t alpha,
                                 const StoppingCriterion& stop,
                                 const std::vector<Accumulator*>& accumulators) {
  if (!(tree.descriptor == oracle.descriptor()))
    throw DescriptorMismatch("partial tree and oracle descriptors disagree");
  if (tree.rep_groups.empty() || tree.cycle_sizes.empty())
    throw InvalidArgument("cannot resume from an empty partial tree");

  StreamRun run(oracle, alpha, stop, accumulators);
  run.cycle_sizes = tree.cycle_sizes;
  run.founders = tree.founders;
  std::uint64_t start = 1;
  for (std::size_t c = 0; c < tree.rep_groups.size(); ++c) {
    const std::uint64_t step =
        tree.alpha == kAlphaInfinity ? tree.cycle_sizes[c] : tree.alpha;
    for (std::size_t i = 0; i < tree.rep_groups[c].size(); ++i)
      run.store(tree.rep_groups[c][i], start + i * step, i == 0);
    start += tree.cycle_sizes[c];
  }
  run.count = tree.found_count();
  run.m = 0;
  run.a = 0;
  run.j = 1;
  run.sj = tree.rep_groups.front().front();
  run.need_new_cycle = true;  // the last recorded cycle is closed
  run.note_peak();
  run.run();
  return run.finish();
}

}  // namespace mc
