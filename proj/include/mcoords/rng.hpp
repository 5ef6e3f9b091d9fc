#pragma once

#include <complex>
#include <cstdint>

namespace mc {

/// splitmix64 step; also the named seed-splitting function used by the CLI.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derived seed for trial `index`: splitmix64(base ^ index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// xoshiro256** seeded through splitmix64. The algorithm is pinned under the
/// identifier below so serialized oracle descriptors reconstruct identical
/// oracles: uniform integers below a bound use bitmask rejection, doubles use
/// the top 53 bits, and normals use Box-Muller (cos branch first).
class Rng {
public:
  static constexpr const char* kAlgorithmId = "xoshiro256ss-v1";

  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform on [0, n). n >= 1.
  std::uint64_t below(std::uint64_t n);

  /// Uniform on [0, 1) with 53 bits.
  double unit();

  /// Standard normal.
  double normal();

  /// Independent N(0,1) real and imaginary parts.
  std::complex<double> complex_normal();

  /// Independent stream for trial-level parallelism.
  Rng split(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
};

}  // namespace mc
