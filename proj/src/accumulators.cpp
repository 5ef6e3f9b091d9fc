#include "mcoords/accumulators.hpp"

#include <cmath>

#include "mcoords/errors.hpp"

namespace mc {

void RealCountAccumulator::add(const Solution& s, Oracle&) {
  for (const auto& z : s.coords) {
    if (std::abs(z.imag()) >= tol_) return;
  }
  ++count_;
}

void TraceAccumulator::add(const Solution& s, Oracle& oracle) {
  auto p0 = oracle.point_at_slice(s, 0.0);
  auto ph = oracle.point_at_slice(s, 0.5);
  auto p1 = oracle.point_at_slice(s, 1.0);
  if (g1_.empty()) {
    g1_.assign(p0.size(), {0.0, 0.0});
    base_sum_.assign(p0.size(), {0.0, 0.0});
  }
  for (std::size_t i = 0; i < p0.size(); ++i) {
    g1_[i] += p0[i] + p1[i] - 2.0 * ph[i];
    base_sum_[i] += p0[i];
  }
}

double TraceAccumulator::g1_max_norm() const {
  double m = 0.0;
  for (const auto& z : g1_) m = std::max(m, std::abs(z));
  return m;
}

double TraceAccumulator::base_max_norm() const {
  double m = 0.0;
  for (const auto& z : base_sum_) m = std::max(m, std::abs(z));
  return m;
}

nlohmann::json TraceAccumulator::value() const {
  nlohmann::json g1 = nlohmann::json::array();
  for (const auto& z : g1_) g1.push_back({z.real(), z.imag()});
  return {{"g1", g1},
          {"g1_max_norm", g1_max_norm()},
          {"base_max_norm", base_max_norm()}};
}

std::unique_ptr<Accumulator> make_accumulator(const std::string& name) {
  if (name == "count") return std::make_unique<CountAccumulator>();
  if (name == "real" || name == "real_count")
    return std::make_unique<RealCountAccumulator>();
  if (name == "trace") return std::make_unique<TraceAccumulator>();
  throw InvalidArgument("unknown accumulator: " + name);
}

}  // namespace mc
