#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "mcoords/descriptor.hpp"
#include "mcoords/permutation.hpp"
#include "mcoords/solution.hpp"

namespace mc {

/// Evaluation oracle for the two monodromy permutations. Owns per-permutation
/// query counters; slice evaluations (trace accumulators) are tallied in a
/// separate counter and folded into the sigma0 column of counts().
class Oracle {
public:
  virtual ~Oracle() = default;

  virtual std::uint64_t fiber_size() const = 0;
  virtual std::uint64_t ambient_dim() const = 0;
  std::uint64_t param_dim() const { return descriptor().param_dim(); }

  /// 0 for the synthetic backend (tag equality), positive otherwise.
  virtual double equality_tolerance() const = 0;
  virtual bool equal(const Solution& a, const Solution& b) const = 0;

  virtual Solution seed_solution() const = 0;
  virtual OracleDescriptor descriptor() const = 0;

  /// sigma_which(s); increments the matching query counter by exactly 1.
  Solution eval(int which, const Solution& s);

  virtual bool supports_slices() const { return false; }

  /// Fiber point of s continued to slice parameter t in {0, 1/2, 1}.
  /// Counts as one (slice) query when t != 0.
  std::vector<std::complex<double>> point_at_slice(const Solution& s, double t);

  /// (sigma0 incl. slice queries, sigma1).
  std::pair<std::uint64_t, std::uint64_t> counts() const {
    return {c0_ + cslice_, c1_};
  }
  std::uint64_t count_sigma0() const { return c0_; }
  std::uint64_t count_sigma1() const { return c1_; }
  std::uint64_t count_slices() const { return cslice_; }
  void reset_counts() { c0_ = c1_ = cslice_ = 0; }

protected:
  virtual Solution do_eval(int which, const Solution& s) = 0;
  virtual std::vector<std::complex<double>> do_point_at_slice(const Solution& s,
                                                              double t);

private:
  std::uint64_t c0_ = 0, c1_ = 0, cslice_ = 0;
};

/// Ground-truth backend: two permutations acting on d tagged points whose
/// coordinates move affinely along a parallel slice family a_i + t*b_i.
class SyntheticOracle final : public Oracle {
public:
  /// Uniformly sampled generator pair (resampled until transitive when
  /// requested), complex-Gaussian fiber points.
  SyntheticOracle(std::uint64_t d, std::uint64_t n, std::uint64_t seed,
                  bool require_transitive);

  /// Fixed generator pair (worked-example fixture); points still seeded.
  SyntheticOracle(Permutation sigma0, Permutation sigma1, std::uint64_t n,
                  std::uint64_t seed, BackendKind kind);

  std::uint64_t fiber_size() const override { return d_; }
  std::uint64_t ambient_dim() const override { return n_; }
  double equality_tolerance() const override { return 0.0; }
  bool equal(const Solution& a, const Solution& b) const override;
  Solution seed_solution() const override { return solution(1); }
  OracleDescriptor descriptor() const override;
  bool supports_slices() const override { return true; }

  Solution solution(std::uint64_t tag) const;
  const Permutation& sigma(int which) const;
  std::uint64_t resample_attempts() const { return resamples_; }

protected:
  Solution do_eval(int which, const Solution& s) override;
  std::vector<std::complex<double>> do_point_at_slice(const Solution& s,
                                                      double t) override;

private:
  void sample_points(Rng& rng);
  std::uint64_t check_tag(const Solution& s) const;

  std::uint64_t d_, n_, seed_;
  bool require_transitive_;
  BackendKind kind_;
  std::vector<Permutation> sigma_;          // sigma0, sigma1
  std::vector<Permutation> slice_maps_;     // continuation bijections tau*, tau**
  std::vector<std::vector<std::complex<double>>> base_points_;       // a_i
  std::vector<std::vector<std::complex<double>>> direction_points_;  // b_i
  std::uint64_t resamples_ = 0;
};

std::unique_ptr<SyntheticOracle> make_synthetic(std::uint64_t d, std::uint64_t n,
                                                std::uint64_t seed,
                                                bool require_transitive = true);

/// The twelve-point worked example with
/// sigma0 = (1 2 3)(4)(5 6 7 8)(9 10)(11 12),
/// sigma1 = (1 3 5 2 4)(6 9 11)(7)(8 10)(12).
std::unique_ptr<SyntheticOracle> make_example2();

/// Reconstructs an oracle from a serialized descriptor.
std::unique_ptr<Oracle> oracle_from_descriptor(const OracleDescriptor& desc);

}  // namespace mc
