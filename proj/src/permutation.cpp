#include "mcoords/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "mcoords/errors.hpp"

namespace mc {

std::vector<std::uint32_t> CycleDecomposition::lengths() const {
  std::vector<std::uint32_t> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) out.push_back(static_cast<std::uint32_t>(c.size()));
  return out;
}

Permutation::Permutation(std::vector<std::uint32_t> image)
    : image_(std::move(image)), degree_(static_cast<std::uint32_t>(image_.size())) {
  if (degree_ == 0) throw InvalidArgument("permutation degree must be positive");
  std::vector<std::uint32_t> sorted = image_;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint32_t i = 0; i < degree_; ++i) {
    if (sorted[i] != i + 1)
      throw InvalidArgument("image array is not a bijection on {1..d}");
  }
}

Permutation Permutation::identity(std::uint32_t d) {
  if (d == 0) throw InvalidArgument("permutation degree must be positive");
  std::vector<std::uint32_t> image(d);
  std::iota(image.begin(), image.end(), 1u);
  return Permutation(std::move(image));
}

Permutation Permutation::sample_uniform(std::uint32_t d, Rng& rng) {
  if (d == 0) throw InvalidArgument("permutation degree must be positive");
  std::vector<std::uint32_t> image(d);
  std::iota(image.begin(), image.end(), 1u);
  for (std::uint32_t i = d - 1; i > 0; --i) {
    std::uint64_t j = rng.below(i + 1);
    std::swap(image[i], image[j]);
  }
  return Permutation(std::move(image));
}

Permutation Permutation::from_cycles(
    std::uint32_t d, const std::vector<std::vector<std::uint32_t>>& cycles) {
  std::vector<std::uint32_t> image(d);
  std::iota(image.begin(), image.end(), 1u);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      std::uint32_t from = cycle[i];
      std::uint32_t to = cycle[(i + 1) % cycle.size()];
      if (from == 0 || from > d || to == 0 || to > d)
        throw InvalidArgument("cycle entry out of range");
      image[from - 1] = to;
    }
  }
  return Permutation(std::move(image));
}

std::uint32_t Permutation::apply(std::uint32_t i) const {
  if (i == 0 || i > degree_) throw InvalidArgument("index out of range");
  return image_[i - 1];
}

CycleDecomposition Permutation::cycles() const {
  CycleDecomposition out;
  out.degree = degree_;
  std::vector<bool> seen(degree_, false);
  for (std::uint32_t start = 1; start <= degree_; ++start) {
    if (seen[start - 1]) continue;
    std::vector<std::uint32_t> cycle;
    std::uint32_t cur = start;
    do {
      cycle.push_back(cur);
      seen[cur - 1] = true;
      cur = image_[cur - 1];
    } while (cur != start);
    out.cycles.push_back(std::move(cycle));
  }
  // Scanning from the smallest unseen element already yields minimal-first
  // rotation and minimal-element sort order.
  return out;
}

std::uint32_t Permutation::largest_cycle_length() const {
  std::uint32_t best = 0;
  std::vector<bool> seen(degree_, false);
  for (std::uint32_t start = 1; start <= degree_; ++start) {
    if (seen[start - 1]) continue;
    std::uint32_t len = 0;
    std::uint32_t cur = start;
    do {
      ++len;
      seen[cur - 1] = true;
      cur = image_[cur - 1];
    } while (cur != start);
    best = std::max(best, len);
  }
  return best;
}

std::uint32_t Permutation::cycle_count() const {
  std::uint32_t count = 0;
  std::vector<bool> seen(degree_, false);
  for (std::uint32_t start = 1; start <= degree_; ++start) {
    if (seen[start - 1]) continue;
    ++count;
    std::uint32_t cur = start;
    do {
      seen[cur - 1] = true;
      cur = image_[cur - 1];
    } while (cur != start);
  }
  return count;
}

bool is_transitive(const std::vector<Permutation>& perms, std::uint32_t d) {
  if (d == 0) throw InvalidArgument("degree must be positive");
  for (const auto& p : perms) {
    if (p.degree() != d) throw InvalidArgument("degree mismatch in is_transitive");
  }
  std::vector<std::vector<std::uint32_t>> adj(d);
  for (const auto& p : perms) {
    for (std::uint32_t i = 1; i <= d; ++i) {
      std::uint32_t j = p.apply(i);
      if (i != j) {
        adj[i - 1].push_back(j);
        adj[j - 1].push_back(i);
      }
    }
  }
  std::vector<bool> visited(d, false);
  std::vector<std::uint32_t> queue{1};
  visited[0] = true;
  std::uint32_t reached = 1;
  while (!queue.empty()) {
    std::uint32_t v = queue.back();
    queue.pop_back();
    for (std::uint32_t w : adj[v - 1]) {
      if (!visited[w - 1]) {
        visited[w - 1] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == d;
}

}  // namespace mc
