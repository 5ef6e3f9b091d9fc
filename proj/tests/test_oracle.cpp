#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "mcoords/errors.hpp"
#include "mcoords/oracle.hpp"
#include "mcoords/registry.hpp"

using namespace mc;

TEST_CASE("worked-example fixture applies the pinned permutations") {
  auto oracle = make_example2();
  CHECK(oracle->fiber_size() == 12);
  CHECK(oracle->ambient_dim() == 1);
  CHECK(oracle->equality_tolerance() == 0.0);

  CHECK(oracle->eval(0, oracle->solution(1)).tag == 2);
  CHECK(oracle->eval(0, oracle->solution(4)).tag == 4);
  CHECK(oracle->eval(1, oracle->solution(1)).tag == 3);
  CHECK(oracle->eval(1, oracle->solution(6)).tag == 9);
  CHECK(oracle->eval(1, oracle->solution(12)).tag == 12);

  auto [q0, q1] = oracle->counts();
  CHECK(q0 == 2);
  CHECK(q1 == 3);
}

TEST_CASE("tag equality and bad inputs") {
  auto oracle = make_example2();
  CHECK(oracle->equal(oracle->solution(3), oracle->solution(3)));
  CHECK_FALSE(oracle->equal(oracle->solution(3), oracle->solution(4)));
  CHECK_THROWS_AS(oracle->solution(0), UnknownSolution);
  CHECK_THROWS_AS(oracle->solution(13), UnknownSolution);
  CHECK_THROWS_AS(oracle->eval(2, oracle->solution(1)), InvalidArgument);
  Solution fake;
  fake.tag = 99;
  CHECK_THROWS_AS(oracle->eval(0, fake), UnknownSolution);
}

TEST_CASE("synthetic sampling is transitive and seed-deterministic") {
  auto a = make_synthetic(40, 2, 123);
  auto b = make_synthetic(40, 2, 123);
  CHECK(is_transitive({a->sigma(0), a->sigma(1)}, 40));
  CHECK(a->sigma(0) == b->sigma(0));
  CHECK(a->sigma(1) == b->sigma(1));
  for (std::uint64_t tag = 1; tag <= 40; ++tag) {
    CHECK(a->solution(tag).coords == b->solution(tag).coords);
    CHECK(a->solution(tag).coords.size() == 2);
  }
}

TEST_CASE("descriptor reconstructs an identical synthetic oracle") {
  auto a = make_synthetic(25, 3, 77);
  auto b = oracle_from_descriptor(a->descriptor());
  for (std::uint64_t tag = 1; tag <= 25; ++tag)
    for (int which : {0, 1})
      CHECK(a->eval(which, a->solution(tag)).tag ==
            b->eval(which, a->solution(tag)).tag);
  CHECK(b->descriptor() == a->descriptor());

  OracleDescriptor bad = a->descriptor();
  bad.rng_id = "some-other-rng";
  CHECK_THROWS_AS(oracle_from_descriptor(bad), DescriptorMismatch);
}

TEST_CASE("slice points: one query per t != 0, zero for the base slice") {
  auto oracle = make_example2();
  (void)oracle->point_at_slice(oracle->solution(1), 0.0);
  CHECK(oracle->count_slices() == 0);
  (void)oracle->point_at_slice(oracle->solution(1), 0.5);
  (void)oracle->point_at_slice(oracle->solution(1), 1.0);
  CHECK(oracle->count_slices() == 2);
  auto [q0, q1] = oracle->counts();  // slices fold into the sigma0 column
  CHECK(q0 == 2);
  CHECK(q1 == 0);
  CHECK(oracle->count_sigma0() == 0);
}

TEST_CASE("trace combination cancels over the full fiber, not on prefixes") {
  auto oracle = make_synthetic(30, 2, 5);
  std::vector<std::complex<double>> g1;
  auto add = [&](std::uint64_t tag) {
    auto u = oracle->point_at_slice(oracle->solution(tag), 0.0);
    auto mid = oracle->point_at_slice(oracle->solution(tag), 0.5);
    auto v = oracle->point_at_slice(oracle->solution(tag), 1.0);
    if (g1.empty()) g1.assign(u.size(), 0.0);
    for (std::size_t c = 0; c < u.size(); ++c)
      g1[c] += u[c] + v[c] - 2.0 * mid[c];
  };
  auto norm = [&]() {
    double m = 0;
    for (const auto& z : g1) m = std::max(m, std::abs(z));
    return m;
  };
  for (std::uint64_t tag = 1; tag <= 30; ++tag) {
    add(tag);
    if (tag < 30) CHECK(norm() > 1e-6);  // proper prefixes do not cancel
  }
  CHECK(norm() < 1e-10);  // the full fiber cancels exactly
}

TEST_CASE("registry: exact tags and quantized coordinates") {
  auto synth = make_example2();
  SolutionRegistry exact(*synth);
  CHECK(exact.insert(synth->solution(3)));
  CHECK_FALSE(exact.insert(synth->solution(3)));
  CHECK(exact.contains(synth->solution(3)));
  CHECK_FALSE(exact.contains(synth->solution(4)));
  CHECK(exact.size() == 1);
}
