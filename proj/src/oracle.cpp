#include "mcoords/oracle.hpp"

#include <cmath>

#include "mcoords/errors.hpp"

namespace mc {

void TrackerConfig::validate() const {
  if (!(0 < min_step && min_step < initial_step && initial_step <= 1.0))
    throw InvalidArgument("tracker steps must satisfy 0 < min_step < initial_step <= 1");
  if (!(newton_tolerance > 0) || max_newton_iters <= 0)
    throw InvalidArgument("tracker tolerances must be positive");
  if (!(step_expansion > 1.0) || !(0 < step_contraction && step_contraction < 1.0))
    throw InvalidArgument("bad tracker step factors");
}

Solution Oracle::eval(int which, const Solution& s) {
  if (which != 0 && which != 1) throw InvalidArgument("oracle index must be 0 or 1");
  Solution out = do_eval(which, s);
  if (which == 0)
    ++c0_;
  else
    ++c1_;
  return out;
}

std::vector<std::complex<double>> Oracle::point_at_slice(const Solution& s,
                                                         double t) {
  auto out = do_point_at_slice(s, t);
  if (t != 0.0) ++cslice_;
  return out;
}

std::vector<std::complex<double>> Oracle::do_point_at_slice(const Solution&,
                                                            double) {
  throw FeatureNotAvailable("point_at_slice is not supported by this backend");
}

namespace {
constexpr std::uint64_t kMaxResampleAttempts = 1000;
}

SyntheticOracle::SyntheticOracle(std::uint64_t d, std::uint64_t n,
                                 std::uint64_t seed, bool require_transitive)
    : d_(d), n_(n), seed_(seed), require_transitive_(require_transitive),
      kind_(BackendKind::Synthetic) {
  if (d == 0 || n == 0) throw InvalidArgument("d and n must be positive");
  Rng rng(seed);
  auto deg = static_cast<std::uint32_t>(d);
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt >= kMaxResampleAttempts)
      throw Error("failed to sample a transitive generator pair after 1000 attempts");
    Permutation s0 = Permutation::sample_uniform(deg, rng);
    Permutation s1 = Permutation::sample_uniform(deg, rng);
    if (!require_transitive || is_transitive({s0, s1}, deg)) {
      sigma_ = {std::move(s0), std::move(s1)};
      resamples_ = attempt;
      break;
    }
  }
  slice_maps_ = {Permutation::sample_uniform(deg, rng),
                 Permutation::sample_uniform(deg, rng)};
  sample_points(rng);
}

SyntheticOracle::SyntheticOracle(Permutation sigma0, Permutation sigma1,
                                 std::uint64_t n, std::uint64_t seed,
                                 BackendKind kind)
    : d_(sigma0.degree()), n_(n), seed_(seed), require_transitive_(false),
      kind_(kind) {
  if (sigma1.degree() != d_) throw InvalidArgument("generator degree mismatch");
  sigma_ = {std::move(sigma0), std::move(sigma1)};
  Rng rng(seed);
  auto deg = static_cast<std::uint32_t>(d_);
  slice_maps_ = {Permutation::sample_uniform(deg, rng),
                 Permutation::sample_uniform(deg, rng)};
  sample_points(rng);
}

void SyntheticOracle::sample_points(Rng& rng) {
  base_points_.resize(d_);
  direction_points_.resize(d_);
  for (std::uint64_t i = 0; i < d_; ++i) {
    base_points_[i].resize(n_);
    for (auto& z : base_points_[i]) z = rng.complex_normal();
  }
  for (std::uint64_t i = 0; i < d_; ++i) {
    direction_points_[i].resize(n_);
    for (auto& z : direction_points_[i]) z = rng.complex_normal();
  }
}

std::uint64_t SyntheticOracle::check_tag(const Solution& s) const {
  if (s.tag < 1 || static_cast<std::uint64_t>(s.tag) > d_)
    throw UnknownSolution("solution tag out of range for this fiber");
  return static_cast<std::uint64_t>(s.tag);
}

Solution SyntheticOracle::solution(std::uint64_t tag) const {
  if (tag < 1 || tag > d_) throw UnknownSolution("tag out of range");
  return Solution{static_cast<std::int64_t>(tag), base_points_[tag - 1]};
}

bool SyntheticOracle::equal(const Solution& a, const Solution& b) const {
  return check_tag(a) == check_tag(b);
}

const Permutation& SyntheticOracle::sigma(int which) const {
  if (which != 0 && which != 1) throw InvalidArgument("oracle index must be 0 or 1");
  return sigma_[which];
}

Solution SyntheticOracle::do_eval(int which, const Solution& s) {
  std::uint64_t tag = check_tag(s);
  std::uint32_t out = sigma_[which].apply(static_cast<std::uint32_t>(tag));
  return solution(out);
}

std::vector<std::complex<double>> SyntheticOracle::do_point_at_slice(
    const Solution& s, double t) {
  std::uint64_t tag = check_tag(s);
  if (t == 0.0) return base_points_[tag - 1];
  // The slice family is affine per fiber index, but continuation along the
  // parameter path lands on the point with index tau*(i) at t=1/2 and
  // tau**(tau*(i)) at t=1, mirroring the bijections sigma*, sigma**.
  std::uint32_t i = static_cast<std::uint32_t>(tag);
  std::uint32_t j;
  if (t == 0.5) {
    j = slice_maps_[0].apply(i);
  } else if (t == 1.0) {
    j = slice_maps_[1].apply(slice_maps_[0].apply(i));
  } else {
    throw InvalidArgument("slice parameter must be 0, 1/2, or 1");
  }
  std::vector<std::complex<double>> out(n_);
  for (std::uint64_t c = 0; c < n_; ++c)
    out[c] = base_points_[j - 1][c] + t * direction_points_[j - 1][c];
  return out;
}

OracleDescriptor SyntheticOracle::descriptor() const {
  OracleDescriptor desc;
  desc.kind = kind_;
  desc.d = d_;
  desc.n = n_;
  desc.seed = seed_;
  desc.require_transitive = require_transitive_;
  return desc;
}

std::unique_ptr<SyntheticOracle> make_synthetic(std::uint64_t d, std::uint64_t n,
                                                std::uint64_t seed,
                                                bool require_transitive) {
  return std::make_unique<SyntheticOracle>(d, n, seed, require_transitive);
}

std::unique_ptr<SyntheticOracle> make_example2() {
  Permutation sigma0 = Permutation::from_cycles(
      12, {{1, 2, 3}, {5, 6, 7, 8}, {9, 10}, {11, 12}});
  Permutation sigma1 = Permutation::from_cycles(
      12, {{1, 3, 5, 2, 4}, {6, 9, 11}, {8, 10}});
  return std::make_unique<SyntheticOracle>(std::move(sigma0), std::move(sigma1),
                                           1, 0x2c0ffee, BackendKind::Example2);
}

}  // namespace mc
