#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mcoords/oracle.hpp"
#include "mcoords/solution.hpp"

namespace mc {

/// Membership registry of found solutions. Keyed by tag when the oracle has
/// exact equality, otherwise by coordinate quantization at the equality
/// tolerance with probing of the adjacent buckets, so near-boundary points
/// never produce false negatives.
class SolutionRegistry {
public:
  explicit SolutionRegistry(const Oracle& oracle);

  bool contains(const Solution& s) const;

  /// Returns true if s was new.
  bool insert(const Solution& s);

  std::size_t size() const { return size_; }

private:
  using QKey = std::vector<std::int64_t>;
  struct QKeyHash {
    std::size_t operator()(const QKey& k) const {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (std::int64_t v : k) {
        h ^= static_cast<std::size_t>(v);
        h *= 0x100000001b3ULL;
      }
      return h;
    }
  };

  QKey quantize(const Solution& s) const;
  bool bucket_contains(const Solution& s) const;

  const Oracle* oracle_;
  double tol_;
  std::size_t size_ = 0;
  std::unordered_set<std::int64_t> tags_;
  std::unordered_map<QKey, std::vector<Solution>, QKeyHash> buckets_;
};

}  // namespace mc
