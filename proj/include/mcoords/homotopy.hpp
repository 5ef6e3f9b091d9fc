#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mcoords/descriptor.hpp"
#include "mcoords/oracle.hpp"
#include "mcoords/rng.hpp"

namespace mc {

/// Monic univariate family x^d + p_{d-1} x^{d-1} + ... + p_0 together with
/// two triangle loops u -> q1 -> q2 -> u and u -> q3 -> q4 -> u in
/// coefficient space (k = d parameters). Generic vertices avoid the
/// discriminant with probability 1; tracker failure signals otherwise.
struct UnivariateFamily {
  std::uint64_t d = 0;
  std::vector<std::complex<double>> base_params;  // u, low-to-high degree
  std::vector<std::complex<double>> q1, q2, q3, q4;
  std::optional<std::vector<std::complex<double>>> known_fiber;
};

/// Monic family with the given roots. Loop vertices are perturbed rotations
/// of the base coefficients, resampled from `seed` until the two induced
/// permutations together reach the whole fiber (so a full solve can succeed).
/// Roots must be pairwise more than 1e-6 apart.
UnivariateFamily family_from_roots(const std::vector<std::complex<double>>& roots,
                                   std::uint64_t seed);

/// P(x) and P'(x) for coefficients `coeffs` (monic, low-to-high).
std::pair<std::complex<double>, std::complex<double>> eval_monic(
    const std::vector<std::complex<double>>& coeffs, std::complex<double> x);

/// All d roots of the monic polynomial (Weierstrass / Durand-Kerner with a
/// Newton polish). Used to recover the fiber when a family arrives as bare
/// coefficients (descriptor round-trip).
std::vector<std::complex<double>> monic_roots(
    const std::vector<std::complex<double>>& coeffs);

/// Analytic continuation of the root x from coefficients p_from to p_to along
/// the straight segment: Euler predictor in t, Newton corrector in x, step
/// halved on corrector failure and expanded on success, Newton polish at
/// t = 1. Step underflow below config.min_step signals tracking failure.
std::complex<double> track_segment(const UnivariateFamily& family,
                                   const TrackerConfig& config,
                                   std::complex<double> x,
                                   const std::vector<std::complex<double>>& p_from,
                                   const std::vector<std::complex<double>>& p_to);

/// Continuation of a whole fiber through one segment with a shared adaptive
/// step. A step is accepted only when every path converges, the paths stay
/// pairwise separated, and each correction is small against that separation,
/// so paths cannot swap silently -- unlike single-path tracking, which can
/// jump between nearby paths without any detectable symptom.
std::vector<std::complex<double>> track_fiber(
    const TrackerConfig& config, std::vector<std::complex<double>> xs,
    const std::vector<std::complex<double>>& p_from,
    const std::vector<std::complex<double>>& p_to);

/// Oracle whose permutations are the monodromy of the two triangle loops.
/// eval matches its argument to the cached fiber, tracks the three segments,
/// and snaps the endpoint back to the fiber; a match is accepted only when
/// the nearest fiber point is at least 10x closer than the second-nearest.
class NumericOracle final : public Oracle {
public:
  NumericOracle(UnivariateFamily family, TrackerConfig config);

  std::uint64_t fiber_size() const override { return family_.d; }
  std::uint64_t ambient_dim() const override { return 1; }
  double equality_tolerance() const override;
  bool equal(const Solution& a, const Solution& b) const override;
  Solution seed_solution() const override { return fiber_.front(); }
  OracleDescriptor descriptor() const override;

  const std::vector<Solution>& fiber() const { return fiber_; }
  const UnivariateFamily& family() const { return family_; }

  /// Max residual |P(r)| of the cached fiber under the base coefficients.
  double max_fiber_residual() const;

protected:
  Solution do_eval(int which, const Solution& s) override;

private:
  std::size_t match_fiber(const std::complex<double>& x, bool strict_gap) const;

  UnivariateFamily family_;
  TrackerConfig config_;
  std::vector<Solution> fiber_;
};

std::unique_ptr<NumericOracle> make_numeric_oracle(UnivariateFamily family,
                                                   TrackerConfig config = {});

}  // namespace mc
