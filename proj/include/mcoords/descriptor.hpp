#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "mcoords/rng.hpp"

namespace mc {

/// Predictor-corrector settings for segment tracking.
struct TrackerConfig {
  double initial_step = 0.1;
  double min_step = 1e-7;
  double newton_tolerance = 1e-10;
  int max_newton_iters = 8;
  double step_expansion = 1.5;
  double step_contraction = 0.5;

  void validate() const;
  bool operator==(const TrackerConfig&) const = default;
};

enum class BackendKind : std::uint8_t {
  Synthetic = 1,
  Example2 = 2,
  Parametric = 3,
};

/// Everything needed to reconstruct an oracle bit-for-bit. Synthetic oracles
/// are pinned to a named RNG algorithm; parametric ones store the five
/// coefficient vectors (base point plus the two triangle loops).
struct OracleDescriptor {
  BackendKind kind = BackendKind::Synthetic;

  // synthetic / example2
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  bool require_transitive = true;
  std::string rng_id = Rng::kAlgorithmId;

  // parametric: monic coefficients p_0..p_{d-1} of the base system and the
  // four auxiliary loop vertices.
  std::vector<std::complex<double>> base_coeffs;
  std::vector<std::complex<double>> q1, q2, q3, q4;
  TrackerConfig tracker;

  std::uint64_t fiber_size() const { return d; }
  std::uint64_t ambient_dim() const {
    return kind == BackendKind::Parametric ? 1 : n;
  }
  /// Parameter dimension k: the coefficient count for parametric families;
  /// synthetic backends mirror the monic univariate convention k = d.
  std::uint64_t param_dim() const { return d; }

  bool operator==(const OracleDescriptor&) const = default;
};

}  // namespace mc
