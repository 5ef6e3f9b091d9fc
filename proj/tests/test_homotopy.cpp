#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "mcoords/errors.hpp"
#include "mcoords/homotopy.hpp"
#include "mcoords/solve.hpp"

using namespace mc;
using cd = std::complex<double>;

TEST_CASE("family_from_roots expands small products correctly") {
  UnivariateFamily f = family_from_roots({1.0, -1.0}, 5);  // x^2 - 1
  CHECK(std::abs(f.base_params[0] - cd{-1.0}) < 1e-15);
  CHECK(std::abs(f.base_params[1]) < 1e-15);

  // d-th roots of unity give x^d - 1
  const std::size_t d = 7;
  std::vector<cd> roots;
  for (std::size_t i = 0; i < d; ++i) {
    double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / d;
    roots.push_back({std::cos(theta), std::sin(theta)});
  }
  UnivariateFamily cyc = family_from_roots(roots, 5);
  CHECK(std::abs(cyc.base_params[0] - cd{-1.0}) < 1e-12);
  for (std::size_t i = 1; i < d; ++i) CHECK(std::abs(cyc.base_params[i]) < 1e-12);
}

TEST_CASE("stored roots have tiny residuals under the expanded polynomial") {
  Rng rng(3);
  std::vector<cd> roots(9);
  for (auto& r : roots) r = rng.complex_normal();
  UnivariateFamily f = family_from_roots(roots, 11);
  for (const cd& r : roots)
    CHECK(std::abs(eval_monic(f.base_params, r).first) < 1e-12);
}

TEST_CASE("near-coincident roots are rejected") {
  CHECK_THROWS_AS(family_from_roots({1.0, 1.0 + 1e-9}, 1), InvalidArgument);
}

TEST_CASE("monic_roots recovers a known root set") {
  Rng rng(8);
  std::vector<cd> roots(10);
  for (auto& r : roots) r = 3.0 * rng.complex_normal();
  UnivariateFamily f = family_from_roots(roots, 2);
  std::vector<cd> found = monic_roots(f.base_params);
  REQUIRE(found.size() == roots.size());
  for (const cd& r : roots) {
    double best = 1e9;
    for (const cd& g : found) best = std::min(best, std::abs(g - r));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("segment tracking: x^2-1 to x^2-4 carries 1 to 2") {
  UnivariateFamily f = family_from_roots({1.0, -1.0}, 5);
  std::vector<cd> from = {{-1.0, 0.0}, {0.0, 0.0}};  // x^2 - 1
  std::vector<cd> to = {{-4.0, 0.0}, {0.0, 0.0}};    // x^2 - 4
  cd end = track_segment(f, {}, {1.0, 0.0}, from, to);
  CHECK(std::abs(end - cd{2.0, 0.0}) < 1e-8);

  cd back = track_segment(f, {}, end, to, from);
  CHECK(std::abs(back - cd{1.0, 0.0}) < 1e-8);
}

TEST_CASE("tracking rejects a non-root start") {
  UnivariateFamily f = family_from_roots({1.0, -1.0}, 5);
  std::vector<cd> from = {{-1.0, 0.0}, {0.0, 0.0}};
  std::vector<cd> to = {{-4.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(track_segment(f, {}, {37.0, 11.0}, from, to), TrackingFailure);
}

TEST_CASE("loop-induced maps are bijections on a degree-8 fiber") {
  Rng rng(14);
  std::vector<cd> roots(8);
  for (auto& r : roots) r = 2.0 * rng.complex_normal();
  auto oracle = make_numeric_oracle(family_from_roots(roots, 21));

  for (int which : {0, 1}) {
    std::set<std::size_t> hit;
    for (const Solution& s : oracle->fiber()) {
      Solution img = oracle->eval(which, s);
      // snapped output must be one of the cached fiber points
      std::size_t idx = 99;
      for (std::size_t i = 0; i < oracle->fiber().size(); ++i)
        if (std::abs(img.coords[0] - oracle->fiber()[i].coords[0]) == 0.0)
          idx = i;
      REQUIRE(idx != 99);
      hit.insert(idx);
    }
    CHECK(hit.size() == 8);  // injective, hence a permutation
  }
}

TEST_CASE("repeated loop application returns to the start") {
  Rng rng(15);
  std::vector<cd> roots(6);
  for (auto& r : roots) r = 2.0 * rng.complex_normal();
  auto oracle = make_numeric_oracle(family_from_roots(roots, 22));
  Solution start = oracle->seed_solution();
  Solution cur = start;
  int steps = 0;
  do {
    cur = oracle->eval(0, cur);
    ++steps;
  } while (!oracle->equal(cur, start) && steps <= 6);
  CHECK(steps <= 6);  // the orbit closes within the fiber size
}

TEST_CASE("full monodromy solve recovers all roots of a degree-8 family") {
  Rng rng(16);
  std::vector<cd> roots(8);
  for (auto& r : roots) r = 2.0 * rng.complex_normal();
  auto oracle = make_numeric_oracle(family_from_roots(roots, 23));
  SolveResult r = monodromy_solve(*oracle, oracle->seed_solution(),
                                  StoppingCriterion::target_count(8));
  CHECK(r.degree() == 8);
  for (const cd& truth : roots) {
    double best = 1e9;
    for (const Solution& s : r.ordered_solutions)
      best = std::min(best, std::abs(s.coords[0] - truth));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("numeric oracle flags unknown points and lacks slices") {
  UnivariateFamily f = family_from_roots({1.0, -1.0, cd{0.0, 1.0}}, 6);
  auto oracle = make_numeric_oracle(std::move(f));
  Solution far{0, {cd{50.0, 50.0}}};
  CHECK_THROWS_AS(oracle->eval(0, far), UnknownSolution);
  CHECK_FALSE(oracle->supports_slices());
  CHECK_THROWS_AS(oracle->point_at_slice(oracle->seed_solution(), 0.5),
                  FeatureNotAvailable);
  CHECK(oracle->equality_tolerance() == 1e-6);
}

TEST_CASE("parametric descriptor round-trips into an equivalent oracle") {
  Rng rng(17);
  std::vector<cd> roots(5);
  for (auto& r : roots) r = 2.0 * rng.complex_normal();
  auto a = make_numeric_oracle(family_from_roots(roots, 24));
  auto b = oracle_from_descriptor(a->descriptor());
  CHECK(b->descriptor() == a->descriptor());
  // The rebuilt oracle solves the base system from scratch; its fiber must
  // coincide with the original one as a set.
  for (const Solution& s : a->fiber()) {
    Solution via_b = b->eval(0, s);
    Solution via_a = a->eval(0, s);
    CHECK(std::abs(via_a.coords[0] - via_b.coords[0]) < 1e-8);
  }
}
