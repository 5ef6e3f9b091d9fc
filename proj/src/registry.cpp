#include "mcoords/registry.hpp"

#include <cmath>

#include "mcoords/errors.hpp"

namespace mc {

SolutionRegistry::SolutionRegistry(const Oracle& oracle)
    : oracle_(&oracle), tol_(oracle.equality_tolerance()) {}

SolutionRegistry::QKey SolutionRegistry::quantize(const Solution& s) const {
  QKey key;
  key.reserve(2 * s.coords.size());
  for (const auto& z : s.coords) {
    key.push_back(static_cast<std::int64_t>(std::floor(z.real() / tol_)));
    key.push_back(static_cast<std::int64_t>(std::floor(z.imag() / tol_)));
  }
  return key;
}

bool SolutionRegistry::bucket_contains(const Solution& s) const {
  QKey base = quantize(s);
  // Probe the 3^(2n) buckets adjacent to the base key.
  QKey probe = base;
  const std::size_t dims = base.size();
  std::vector<int> offset(dims, -1);
  for (;;) {
    for (std::size_t i = 0; i < dims; ++i) probe[i] = base[i] + offset[i];
    auto it = buckets_.find(probe);
    if (it != buckets_.end()) {
      for (const Solution& cand : it->second) {
        if (oracle_->equal(cand, s)) return true;
      }
    }
    std::size_t i = 0;
    while (i < dims && offset[i] == 1) offset[i++] = -1;
    if (i == dims) break;
    ++offset[i];
  }
  return false;
}

bool SolutionRegistry::contains(const Solution& s) const {
  if (tol_ == 0.0) return tags_.count(s.tag) != 0;
  return bucket_contains(s);
}

bool SolutionRegistry::insert(const Solution& s) {
  if (tol_ == 0.0) {
    bool fresh = tags_.insert(s.tag).second;
    if (fresh) ++size_;
    return fresh;
  }
  if (bucket_contains(s)) return false;
  buckets_[quantize(s)].push_back(s);
  ++size_;
  return true;
}

}  // namespace mc
