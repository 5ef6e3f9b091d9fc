#pragma once

#include <cstdint>
#include <vector>

#include "mcoords/rng.hpp"

namespace mc {

/// Canonical cycle decomposition: each cycle rotated so its minimal element
/// comes first, cycles sorted by minimal element. All indices 1-based.
struct CycleDecomposition {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::uint32_t degree = 0;

  std::vector<std::uint32_t> lengths() const;
};

/// A permutation on {1..d}, stored densely as its image array.
class Permutation {
public:
  /// image[i-1] is the image of i; entries must form a bijection on {1..d}.
  explicit Permutation(std::vector<std::uint32_t> image);

  static Permutation identity(std::uint32_t d);

  /// Fisher-Yates shuffle driven by `rng`; uniform over the symmetric group.
  static Permutation sample_uniform(std::uint32_t d, Rng& rng);

  /// Build from cycle notation; omitted elements are fixed points.
  static Permutation from_cycles(
      std::uint32_t d, const std::vector<std::vector<std::uint32_t>>& cycles);

  std::uint32_t degree() const { return degree_; }
  std::uint32_t apply(std::uint32_t i) const;
  CycleDecomposition cycles() const;
  std::uint32_t largest_cycle_length() const;
  std::uint32_t cycle_count() const;
  const std::vector<std::uint32_t>& image() const { return image_; }

  bool operator==(const Permutation&) const = default;

private:
  std::vector<std::uint32_t> image_;
  std::uint32_t degree_;
};

/// True iff the graph on {1..d} with edges i - p(i), over all given p, is
/// connected (breadth-first search), i.e. the generated action is transitive.
bool is_transitive(const std::vector<Permutation>& perms, std::uint32_t d);

}  // namespace mc
