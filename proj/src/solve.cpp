#include "mcoords/solve.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "mcoords/accumulators.hpp"
#include "mcoords/errors.hpp"
#include "mcoords/registry.hpp"

namespace mc {

namespace {

constexpr std::uint64_t kBudgetFactor = 50;

std::uint64_t effective_budget(const StoppingCriterion& stop, std::uint64_t d) {
  if (stop.kind == StopKind::QueryBudget) return stop.max_queries;
  return kBudgetFactor * std::max<std::uint64_t>(d, 1);
}

}  // namespace

SolveResult monodromy_solve(Oracle& oracle, const Solution& seed,
                            const StoppingCriterion& stop) {
  if (stop.kind == StopKind::TargetCount && stop.target == 0)
    throw InvalidArgument("target count must be positive");
  if (stop.kind == StopKind::QueryBudget && stop.max_queries == 0)
    throw InvalidArgument("query budget must be positive");
  if (stop.kind == StopKind::TraceTest && !oracle.supports_slices())
    throw FeatureNotAvailable("trace-test stopping requires slice support");

  SolveResult result;
  result.descriptor = oracle.descriptor();

  TraceAccumulator trace;
  if (stop.kind == StopKind::TraceTest) trace.add(seed, oracle);

  SolutionRegistry registry(oracle);
  registry.insert(seed);
  result.ordered_solutions.push_back(seed);
  result.edges.push_back({0, -1});

  const std::uint64_t budget = effective_budget(stop, oracle.fiber_size());
  std::uint64_t q0 = 0, q1 = 0;
  std::uint64_t j = 1;            // sigma1 scan index, never reset
  std::uint64_t cycle_start = 1;  // position of the current cycle's initial

  auto stop_met = [&]() {
    switch (stop.kind) {
      case StopKind::TargetCount:
        return result.ordered_solutions.size() >= stop.target;
      case StopKind::TraceTest:
        return trace.within(stop.tolerance);
      case StopKind::QueryBudget:
        return q0 + q1 >= stop.max_queries;
    }
    return false;
  };

  bool budget_stop = false;
  while (!stop_met()) {
    if (stop.kind != StopKind::QueryBudget && q0 + q1 >= budget)
      throw BudgetExhausted(
          "query budget exhausted before the stopping criterion fired "
          "(non-transitive generators or wrong degree?)");
    Solution q = oracle.eval(0, result.ordered_solutions.back());
    ++q0;
    if (registry.insert(q)) {
      result.edges.push_back({result.ordered_solutions.size(), 0});
      result.ordered_solutions.push_back(std::move(q));
      if (stop.kind == StopKind::TraceTest)
        trace.add(result.ordered_solutions.back(), oracle);
    } else {
      // The current sigma0 cycle closed; its size is now known.
      result.cycle_sizes.push_back(result.ordered_solutions.size() -
                                   cycle_start + 1);
      for (;;) {
        if (j > result.ordered_solutions.size()) {
          // Every found solution scanned without discovering a new cycle.
          throw BudgetExhausted(
              "sigma1 scan exhausted all found solutions; generators do not "
              "act transitively");
        }
        if (stop.kind == StopKind::QueryBudget && q0 + q1 >= stop.max_queries) {
          budget_stop = true;
          break;
        }
        if (stop.kind != StopKind::QueryBudget && q0 + q1 >= budget)
          throw BudgetExhausted(
              "query budget exhausted during the sigma1 scan");
        Solution c = oracle.eval(1, result.ordered_solutions[j - 1]);
        ++q1;
        if (registry.insert(c)) {
          result.founder_indices.push_back(j);
          result.edges.push_back({j, 1});
          result.ordered_solutions.push_back(std::move(c));
          cycle_start = result.ordered_solutions.size();
          if (stop.kind == StopKind::TraceTest)
            trace.add(result.ordered_solutions.back(), oracle);
          ++j;
          break;
        }
        ++j;
      }
      if (budget_stop) break;
    }
  }

  // The in-progress cycle: under TargetCount the stop fires exactly at |S|=d,
  // so its size is final without spending the closing sigma0 query. A budget
  // stop mid-scan already recorded the closed cycle; do not record it twice.
  if (!budget_stop)
    result.cycle_sizes.push_back(result.ordered_solutions.size() - cycle_start +
                                 1);
  result.j_star =
      result.founder_indices.empty() ? 0 : result.founder_indices.back();
  result.queries_sigma0 = q0;
  result.queries_sigma1 = q1;
  result.initial_cycle_indices.resize(result.cycle_sizes.size());
  std::uint64_t pos = 1;
  for (std::size_t i = 0; i < result.cycle_sizes.size(); ++i) {
    result.initial_cycle_indices[i] = pos;
    pos += result.cycle_sizes[i];
  }
  result.complete =
      !budget_stop &&
      !(stop.kind == StopKind::QueryBudget && q0 + q1 >= stop.max_queries);
  return result;
}

std::string monodromy_coordinates(const SolveResult& result,
                                  std::uint64_t position) {
  if (position == 0 || position > result.ordered_solutions.size())
    throw InvalidArgument("position out of range");
  std::string word;
  std::uint64_t cur = position;
  while (cur != 1) {
    const DiscoveryEdge& e = result.edges[cur - 1];
    word.push_back(e.label ? '1' : '0');
    cur = e.parent;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

double harmonic_number(std::uint64_t d) {
  double h = 0.0;
  for (std::uint64_t i = 1; i <= d; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

namespace {

// Regularized incomplete gamma Q(a, x), series/continued-fraction split.
double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw InvalidArgument("bad incomplete gamma arguments");
  if (x == 0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // P by series, return 1 - P.
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Q by Lentz continued fraction.
  double b = x + 1.0 - a, c = 1e300, dd = 1.0 / b, h = dd;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    dd = an * dd + b;
    if (std::abs(dd) < 1e-300) dd = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    dd = 1.0 / dd;
    double del = dd * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

struct TrialRecord {
  std::uint64_t j_star, cycles, largest, queries, resamples;
};

TrialRecord run_trial(std::uint64_t d, std::uint64_t trial_seed) {
  auto oracle = make_synthetic(d, 1, trial_seed, true);
  auto result = monodromy_solve(*oracle, oracle->seed_solution(),
                                StoppingCriterion::target_count(d));
  TrialRecord rec;
  rec.j_star = result.j_star;
  rec.cycles = result.cycle_count();
  rec.largest =
      *std::max_element(result.cycle_sizes.begin(), result.cycle_sizes.end());
  rec.queries = result.queries_sigma0 + result.queries_sigma1;
  rec.resamples = oracle->resample_attempts();
  return rec;
}

}  // namespace

double chi_square_p_value(double statistic, double dof) {
  return gamma_q(dof / 2.0, statistic / 2.0);
}

StatisticsReport solve_statistics(std::uint64_t trials, std::uint64_t d,
                                  std::uint64_t seed, bool parallel,
                                  unsigned workers) {
  if (trials == 0 || d < 2)
    throw InvalidArgument("solve_statistics requires trials >= 1 and d >= 2");

  std::vector<TrialRecord> records(trials);
  if (parallel) {
    unsigned t = workers ? workers : std::thread::hardware_concurrency();
    if (t == 0) t = 4;
    std::vector<std::future<void>> jobs;
    std::uint64_t chunk = (trials + t - 1) / t;
    for (unsigned w = 0; w < t; ++w) {
      std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(trials, lo + chunk);
      if (lo >= hi) break;
      jobs.push_back(std::async(std::launch::async, [&, lo, hi]() {
        for (std::uint64_t i = lo; i < hi; ++i)
          records[i] = run_trial(d, derive_seed(seed, i));
      }));
    }
    for (auto& job : jobs) job.get();
  } else {
    for (std::uint64_t i = 0; i < trials; ++i)
      records[i] = run_trial(d, derive_seed(seed, i));
  }

  StatisticsReport rep;
  rep.trials = trials;
  rep.d = d;
  rep.j_star_histogram.assign(d, 0);  // bin j-1 holds counts of j* == j
  double sum_j = 0, sum_j2 = 0, sum_r = 0, sum_l = 0, sum_q = 0, sum_rs = 0;
  std::uint64_t multi_cycle = 0;
  for (const auto& rec : records) {
    sum_j += static_cast<double>(rec.j_star);
    sum_j2 += static_cast<double>(rec.j_star) * static_cast<double>(rec.j_star);
    sum_r += static_cast<double>(rec.cycles);
    sum_l += static_cast<double>(rec.largest);
    sum_q += static_cast<double>(rec.queries);
    sum_rs += static_cast<double>(rec.resamples);
    if (rec.j_star >= 1) {
      ++multi_cycle;
      if (rec.j_star <= d) ++rep.j_star_histogram[rec.j_star - 1];
    }
  }
  const double nt = static_cast<double>(trials);
  rep.mean_j_star = sum_j / nt;
  double var = std::max(0.0, sum_j2 / nt - rep.mean_j_star * rep.mean_j_star);
  rep.se_j_star = std::sqrt(var / nt);
  rep.mean_cycle_count = sum_r / nt;
  rep.mean_largest_cycle = sum_l / nt;
  rep.mean_total_queries = sum_q / nt;
  rep.mean_resamples = sum_rs / nt;

  // Chi-square of j* against uniform on {1..d-1}, over multi-cycle runs only.
  // Reported, never asserted: the uniformity is an empirical observation.
  if (multi_cycle > 0 && d >= 3) {
    double expected = static_cast<double>(multi_cycle) / static_cast<double>(d - 1);
    double stat = 0;
    for (std::uint64_t jv = 1; jv <= d - 1; ++jv) {
      double diff = static_cast<double>(rep.j_star_histogram[jv - 1]) - expected;
      stat += diff * diff / expected;
    }
    rep.j_star_chi_square = stat;
    rep.j_star_p_value = chi_square_p_value(stat, static_cast<double>(d - 2));
  }
  return rep;
}

PermutationStatsReport permutation_statistics(std::uint64_t trials,
                                              std::uint64_t d,
                                              std::uint64_t seed, bool parallel,
                                              unsigned workers) {
  if (trials == 0 || d < 2)
    throw InvalidArgument("permutation_statistics requires trials >= 1 and d >= 2");

  struct Rec {
    bool transitive = false;
    std::uint64_t cycles = 0, largest = 0;
  };
  std::vector<Rec> records(trials);
  auto run_one = [d](std::uint64_t trial_seed) {
    Rng rng(trial_seed);
    auto deg = static_cast<std::uint32_t>(d);
    Permutation s0 = Permutation::sample_uniform(deg, rng);
    Permutation s1 = Permutation::sample_uniform(deg, rng);
    Rec rec;
    rec.transitive = is_transitive({s0, s1}, deg);
    rec.cycles = s0.cycle_count();
    rec.largest = s0.largest_cycle_length();
    return rec;
  };
  if (parallel) {
    unsigned t = workers ? workers : std::thread::hardware_concurrency();
    if (t == 0) t = 4;
    std::vector<std::future<void>> jobs;
    std::uint64_t chunk = (trials + t - 1) / t;
    for (unsigned w = 0; w < t; ++w) {
      std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(trials, lo + chunk);
      if (lo >= hi) break;
      jobs.push_back(std::async(std::launch::async, [&, lo, hi]() {
        for (std::uint64_t i = lo; i < hi; ++i)
          records[i] = run_one(derive_seed(seed, i));
      }));
    }
    for (auto& job : jobs) job.get();
  } else {
    for (std::uint64_t i = 0; i < trials; ++i)
      records[i] = run_one(derive_seed(seed, i));
  }

  PermutationStatsReport rep;
  rep.trials = trials;
  rep.d = d;
  double hits = 0, sum_r = 0, sum_l = 0;
  for (const Rec& rec : records) {
    hits += rec.transitive ? 1 : 0;
    sum_r += static_cast<double>(rec.cycles);
    sum_l += static_cast<double>(rec.largest);
  }
  const double nt = static_cast<double>(trials);
  rep.transitive_rate = hits / nt;
  rep.mean_cycle_count = sum_r / nt;
  rep.mean_largest_cycle = sum_l / nt;
  return rep;
}

}  // namespace mc
