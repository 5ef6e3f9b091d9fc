#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcoords/errors.hpp"
#include "mcoords/solve.hpp"

using namespace mc;

namespace {

std::vector<std::int64_t> tags(const SolveResult& r) {
  std::vector<std::int64_t> out;
  for (const Solution& s : r.ordered_solutions) out.push_back(s.tag);
  return out;
}

}  // namespace

TEST_CASE("worked example: ordering, founders, cycles, exact query counts") {
  auto oracle = make_example2();
  SolveResult r = monodromy_solve(*oracle, oracle->seed_solution(),
                                  StoppingCriterion::target_count(12));
  CHECK(r.complete);
  CHECK(r.degree() == 12);
  // The fixture is labeled so that monodromy order equals tag order.
  CHECK(tags(r) == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  CHECK(r.founder_indices == std::vector<std::uint64_t>{2, 3, 6, 9});
  CHECK(r.j_star == 9);
  CHECK(r.cycle_sizes == std::vector<std::uint64_t>{3, 1, 4, 2, 2});
  CHECK(r.initial_cycle_indices == std::vector<std::uint64_t>{1, 4, 5, 9, 11});
  CHECK(r.queries_sigma0 == 11);
  CHECK(r.queries_sigma1 == 9);
}

TEST_CASE("worked example: binary words of s5 and s12") {
  auto oracle = make_example2();
  SolveResult r = monodromy_solve(*oracle, oracle->seed_solution(),
                                  StoppingCriterion::target_count(12));
  CHECK(monodromy_coordinates(r, 1).empty());
  CHECK(monodromy_coordinates(r, 5) == "001");
  CHECK(monodromy_coordinates(r, 12) == "0010110");
  CHECK_THROWS_AS(monodromy_coordinates(r, 0), InvalidArgument);
  CHECK_THROWS_AS(monodromy_coordinates(r, 13), InvalidArgument);
}

TEST_CASE("query identity d + j* - 1 on random instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    std::uint64_t d = 2 + (derive_seed(99, seed) % 120);
    auto oracle = make_synthetic(d, 1, seed);
    SolveResult r = monodromy_solve(*oracle, oracle->seed_solution(),
                                    StoppingCriterion::target_count(d));
    CHECK(r.degree() == d);
    std::uint64_t expected =
        r.cycle_count() == 1 ? d - 1 : d + r.j_star - 1;
    CHECK(r.queries_sigma0 + r.queries_sigma1 == expected);
    CHECK(r.queries_sigma0 == d - 1);
  }
}

TEST_CASE("query-budget stop returns an incomplete result") {
  auto oracle = make_example2();
  SolveResult r = monodromy_solve(*oracle, oracle->seed_solution(),
                                  StoppingCriterion::query_budget(5));
  CHECK_FALSE(r.complete);
  CHECK(r.degree() < 12);
  CHECK(r.queries_sigma0 + r.queries_sigma1 <= 5);
}

TEST_CASE("non-transitive generators exhaust the budget") {
  // sigma0 and sigma1 both preserve {1,2,3} within d=6.
  Permutation s0 = Permutation::from_cycles(6, {{1, 2, 3}});
  Permutation s1 = Permutation::from_cycles(6, {{1, 2}});
  SyntheticOracle oracle(s0, s1, 1, 9, BackendKind::Synthetic);
  CHECK_THROWS_AS(monodromy_solve(oracle, oracle.seed_solution(),
                                  StoppingCriterion::target_count(6)),
                  BudgetExhausted);
}

TEST_CASE("harmonic numbers and chi-square tail") {
  CHECK(harmonic_number(1) == doctest::Approx(1.0));
  CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0));
  CHECK(harmonic_number(100) == doctest::Approx(5.18738).epsilon(1e-5));

  CHECK(chi_square_p_value(0.0, 5) == doctest::Approx(1.0));
  CHECK(chi_square_p_value(100.0, 5) < 1e-10);
  // chi-square with 2 dof is Exp(1/2): P(X > 2) = e^{-1}
  CHECK(chi_square_p_value(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(chi_square_p_value(4.0, 4) > chi_square_p_value(5.0, 4));
}

TEST_CASE("statistics runs are deterministic and scheduler-independent") {
  StatisticsReport serial = solve_statistics(200, 25, 31, false);
  StatisticsReport parallel = solve_statistics(200, 25, 31, true, 4);
  CHECK(serial.mean_j_star == parallel.mean_j_star);
  CHECK(serial.mean_total_queries == parallel.mean_total_queries);
  CHECK(serial.j_star_histogram == parallel.j_star_histogram);
  CHECK(serial.mean_cycle_count > 1.0);
  CHECK(serial.mean_largest_cycle > 10.0);
}

TEST_CASE("permutation statistics track the known references loosely") {
  PermutationStatsReport rep = permutation_statistics(2000, 100, 17, true);
  CHECK(rep.transitive_rate > 0.95);
  CHECK(rep.mean_cycle_count == doctest::Approx(harmonic_number(100)).epsilon(0.1));
  CHECK(rep.mean_largest_cycle == doctest::Approx(62.43).epsilon(0.1));
}
