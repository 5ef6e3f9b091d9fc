#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcoords/oracle.hpp"
#include "mcoords/solution.hpp"

namespace mc {

/// Streaming reducer G(u) = sum over the fiber of g(s); add is called exactly
/// once per distinct fiber solution over a complete run.
class Accumulator {
public:
  virtual ~Accumulator() = default;
  virtual std::string id() const = 0;
  virtual void add(const Solution& s, Oracle& oracle) = 0;
  virtual nlohmann::json value() const = 0;
};

/// #Complex: adds 1 per solution.
class CountAccumulator final : public Accumulator {
public:
  std::string id() const override { return "count"; }
  void add(const Solution&, Oracle&) override { ++count_; }
  nlohmann::json value() const override { return count_; }
  std::uint64_t count() const { return count_; }

private:
  std::uint64_t count_ = 0;
};

/// #Real: adds 1 when every coordinate's imaginary part is below tolerance.
class RealCountAccumulator final : public Accumulator {
public:
  explicit RealCountAccumulator(double real_tolerance = 1e-9)
      : tol_(real_tolerance) {}
  std::string id() const override { return "real_count"; }
  void add(const Solution& s, Oracle&) override;
  nlohmann::json value() const override { return count_; }
  std::uint64_t count() const { return count_; }

private:
  double tol_;
  std::uint64_t count_ = 0;
};

/// Classical trace combination G1 = G_sum(u) + G_sum(v) - 2 G_sum((u+v)/2),
/// evaluated through the oracle's slice bijections. G1 vanishes exactly on
/// the complete fiber.
class TraceAccumulator final : public Accumulator {
public:
  std::string id() const override { return "trace"; }
  void add(const Solution& s, Oracle& oracle) override;
  nlohmann::json value() const override;

  /// Max-norm of the running G1 vector.
  double g1_max_norm() const;
  /// Max-norm of the running base-slice sum G_sum(u), used to scale the
  /// stopping threshold.
  double base_max_norm() const;
  bool within(double tolerance) const {
    return g1_max_norm() < tolerance * (1.0 + base_max_norm());
  }

private:
  std::vector<std::complex<double>> g1_;
  std::vector<std::complex<double>> base_sum_;
};

/// Instantiates accumulators by name: "count", "real" / "real_count", "trace".
std::unique_ptr<Accumulator> make_accumulator(const std::string& name);

}  // namespace mc
