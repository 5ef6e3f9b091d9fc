#include "mcoords/rng.hpp"

#include <cmath>
#include <numbers>

#include "mcoords/errors.hpp"

namespace mc {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t state = base ^ index;
  return splitmix64(state);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below requires n >= 1");
  if (n == 1) return 0;
  std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(n - 1);
  for (;;) {
    std::uint64_t r = next() & mask;
    if (r < n) return r;
  }
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = unit();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> Rng::complex_normal() {
  double re = normal();
  double im = normal();
  return {re, im};
}

Rng Rng::split(std::uint64_t index) const {
  return Rng(derive_seed(seed_, index));
}

}  // namespace mc
