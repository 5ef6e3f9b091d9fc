#include "mcoords/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcoords/errors.hpp"

namespace mc {

namespace {

using cd = std::complex<double>;

constexpr double kMinRootSeparation = 1e-6;
constexpr double kEqualityTolerance = 1e-6;
constexpr double kGapRatio = 10.0;
constexpr double kMaxStep = 0.1;

// d/dt of the segment homotopy at fixed x: sum (to_i - from_i) x^i.
cd dt_term(const std::vector<cd>& from, const std::vector<cd>& to, cd x) {
  cd acc = 0, xp = 1;
  for (std::size_t i = 0; i < from.size(); ++i) {
    acc += (to[i] - from[i]) * xp;
    xp *= x;
  }
  return acc;
}

std::vector<cd> lerp(const std::vector<cd>& a, const std::vector<cd>& b,
                     double t) {
  std::vector<cd> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
  return out;
}

// Newton iteration at fixed coefficients; true when the last update was
// below tol.
bool newton(const std::vector<cd>& coeffs, cd& x, double tol, int max_iters) {
  for (int i = 0; i < max_iters; ++i) {
    auto [p, dp] = eval_monic(coeffs, x);
    if (std::abs(dp) == 0.0) return false;
    cd dx = p / dp;
    x -= dx;
    if (std::abs(dx) < tol) return true;
  }
  return false;
}

}  // namespace

std::pair<cd, cd> eval_monic(const std::vector<cd>& coeffs, cd x) {
  cd p = 1, dp = 0;  // leading coefficient 1
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    dp = dp * x + p;
    p = p * x + coeffs[i];
  }
  return {p, dp};
}

std::vector<cd> monic_roots(const std::vector<cd>& coeffs) {
  const std::size_t d = coeffs.size();
  if (d == 0) throw InvalidArgument("cannot solve a degree-0 polynomial");
  // Cauchy-style radius bound, then Weierstrass simultaneous iteration from
  // points spread on that circle (the classic 0.4 + 0.9i spiral).
  double radius = 0;
  for (const cd& c : coeffs) radius = std::max(radius, std::abs(c));
  radius = 1.0 + radius;
  std::vector<cd> r(d);
  cd spiral = {0.4, 0.9};
  cd cur = 1;
  for (std::size_t i = 0; i < d; ++i) {
    cur *= spiral;
    r[i] = radius * cur / std::abs(cur);
  }
  for (int iter = 0; iter < 500; ++iter) {
    double max_update = 0;
    for (std::size_t i = 0; i < d; ++i) {
      cd denom = 1;
      for (std::size_t k = 0; k < d; ++k)
        if (k != i) denom *= r[i] - r[k];
      if (std::abs(denom) == 0.0) {
        r[i] += cd{1e-8, 1e-8};  // break exact collisions, retry next sweep
        max_update = std::numeric_limits<double>::infinity();
        continue;
      }
      cd w = eval_monic(coeffs, r[i]).first / denom;
      r[i] -= w;
      max_update = std::max(max_update, std::abs(w));
    }
    if (max_update < 1e-13) break;
  }
  for (cd& root : r)
    if (!newton(coeffs, root, 1e-13, 50))
      throw TrackingFailure("root solving failed to converge");
  return r;
}

UnivariateFamily family_from_roots(const std::vector<cd>& roots,
                                   std::uint64_t seed) {
  const std::size_t d = roots.size();
  if (d == 0) throw InvalidArgument("need at least one root");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::abs(roots[i] - roots[j]) <= kMinRootSeparation)
        throw InvalidArgument("roots closer than the 1e-6 separation floor");

  // Expand prod (x - r_i); c is high-to-low with leading 1.
  std::vector<cd> c{1.0};
  for (const cd& root : roots) {
    std::vector<cd> nc(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      nc[i] += c[i];
      nc[i + 1] -= root * c[i];
    }
    c = std::move(nc);
  }
  // Drop the monic lead and store low-to-high: coeffs[i] multiplies x^i.
  std::vector<cd> coeffs(d);
  for (std::size_t i = 0; i < d; ++i) coeffs[i] = c[d - i];

  UnivariateFamily fam;
  fam.d = d;
  fam.base_params = std::move(coeffs);
  fam.known_fiber = roots;

  // Loop vertices are rotations of the base coefficient vector (by the
  // primitive cube root of unity) plus a perturbation at the base scale.
  // Rotation triangles wind around the maximally degenerate system at the
  // origin, so the induced permutations carry long cycles; pure Gaussian
  // triangles almost always induce near-trivial permutations. Vertices are
  // resampled until the two loop permutations together reach every fiber
  // point, so a full solve can recover the whole fiber.
  double scale = 1.0;
  for (const cd& p : fam.base_params) scale = std::max(scale, std::abs(p));
  const cd omega{-0.5, std::sqrt(3.0) / 2.0};
  const TrackerConfig probe_config;
  Rng rng(seed);

  // Transports the fiber around base -> qa -> qb -> base; false when the
  // tracker fails or the endpoints do not land back on the fiber bijectively.
  auto loop_images = [&](const std::vector<cd>& qa, const std::vector<cd>& qb,
                         std::vector<std::size_t>& img) {
    std::vector<cd> xs = roots;
    try {
      xs = track_fiber(probe_config, std::move(xs), fam.base_params, qa);
      xs = track_fiber(probe_config, std::move(xs), qa, qb);
      xs = track_fiber(probe_config, std::move(xs), qb, fam.base_params);
    } catch (const TrackingFailure&) {
      return false;
    }
    img.assign(d, 0);
    std::vector<bool> used(d, false);
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < d; ++j) {
        double dist = std::abs(xs[i] - roots[j]);
        if (dist < best_dist) {
          best_dist = dist;
          best = j;
        }
      }
      if (best_dist >= kEqualityTolerance || used[best]) return false;
      used[best] = true;
      img[i] = best;
    }
    return true;
  };

  for (int attempt = 0; attempt < 64; ++attempt) {
    fam.q1.resize(d);
    fam.q2.resize(d);
    fam.q3.resize(d);
    fam.q4.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      const cd b = fam.base_params[i];
      fam.q1[i] = omega * b + 0.3 * scale * rng.complex_normal();
      fam.q2[i] = omega * omega * b + 0.3 * scale * rng.complex_normal();
      fam.q3[i] = std::conj(omega) * b * cd{0.9, 0.1} +
                  0.3 * scale * rng.complex_normal();
      fam.q4[i] = std::conj(omega * omega) * b * cd{0.9, -0.1} +
                  0.3 * scale * rng.complex_normal();
    }
    std::vector<std::size_t> img0, img1;
    if (!loop_images(fam.q1, fam.q2, img0)) continue;
    if (!loop_images(fam.q3, fam.q4, img1)) continue;
    // Reachability from fiber point 0 under both permutations.
    std::vector<bool> seen(d, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : {img0[v], img1[v]})
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached == d) return fam;
  }
  throw TrackingFailure(
      "could not sample loops with monodromy reaching the whole fiber");
}

cd track_segment(const UnivariateFamily& family, const TrackerConfig& config,
                 cd x, const std::vector<cd>& p_from,
                 const std::vector<cd>& p_to) {
  config.validate();
  if (p_from.size() != family.d || p_to.size() != family.d)
    throw InvalidArgument("coefficient vectors must have length d");
  if (!newton(p_from, x, config.newton_tolerance, config.max_newton_iters))
    throw TrackingFailure("start point is not an approximate root");

  double t = 0, h = config.initial_step;
  while (t < 1.0) {
    double step = std::min(h, 1.0 - t);
    auto coeffs_t = lerp(p_from, p_to, t);
    auto [p, dp] = eval_monic(coeffs_t, x);
    (void)p;
    cd x_pred = x;
    if (std::abs(dp) > 0.0)
      x_pred -= step * dt_term(p_from, p_to, x) / dp;  // Euler predictor
    cd x_corr = x_pred;
    // A correction much larger than the predictor displacement means the
    // corrector likely converged to a neighboring path: reject the step.
    const double pred_dist = std::abs(x_pred - x);
    const double jump_guard =
        0.5 * pred_dist + config.newton_tolerance * (1.0 + std::abs(x_pred));
    if (newton(lerp(p_from, p_to, t + step), x_corr, config.newton_tolerance,
               config.max_newton_iters) &&
        std::abs(x_corr - x_pred) <= jump_guard) {
      t += step;
      x = x_corr;
      h = std::min(h * config.step_expansion, kMaxStep);
    } else {
      h *= config.step_contraction;
      if (h < config.min_step)
        throw TrackingFailure("tracker step underflow; resample the loop");
    }
  }
  if (!newton(p_to, x, config.newton_tolerance, config.max_newton_iters))
    throw TrackingFailure("endpoint Newton polish failed");
  return x;
}

std::vector<cd> track_fiber(const TrackerConfig& config, std::vector<cd> xs,
                            const std::vector<cd>& p_from,
                            const std::vector<cd>& p_to) {
  const std::size_t d = xs.size();
  auto min_separation = [&](const std::vector<cd>& pts) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        sep = std::min(sep, std::abs(pts[i] - pts[j]));
    return sep;
  };

  double t = 0, h = config.initial_step;
  std::vector<cd> preds(d), corrs(d);
  while (t < 1.0) {
    double step = std::min(h, 1.0 - t);
    auto coeffs_t = lerp(p_from, p_to, t);
    for (std::size_t i = 0; i < d; ++i) {
      auto [p, dp] = eval_monic(coeffs_t, xs[i]);
      (void)p;
      preds[i] = xs[i];
      if (std::abs(dp) > 0.0)
        preds[i] -= step * dt_term(p_from, p_to, xs[i]) / dp;
    }
    corrs = preds;
    auto coeffs_next = lerp(p_from, p_to, t + step);
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i)
      ok = newton(coeffs_next, corrs[i], config.newton_tolerance,
                  config.max_newton_iters);
    if (ok && d > 1) {
      double sep = min_separation(corrs);
      ok = sep > 10.0 * config.newton_tolerance;
      for (std::size_t i = 0; i < d && ok; ++i)
        ok = std::abs(corrs[i] - preds[i]) <=
             0.45 * sep +
             config.newton_tolerance * (1.0 + std::abs(preds[i]));
    }
    if (ok) {
      t += step;
      xs = corrs;
      h = std::min(h * config.step_expansion, kMaxStep);
    } else {
      h *= config.step_contraction;
      if (h < config.min_step)
        throw TrackingFailure("fiber tracking step underflow; resample the loop");
    }
  }
  for (cd& x : xs)
    if (!newton(p_to, x, config.newton_tolerance, config.max_newton_iters))
      throw TrackingFailure("fiber endpoint Newton polish failed");
  if (d > 1 && min_separation(xs) <= 10.0 * config.newton_tolerance)
    throw TrackingFailure("fiber paths collided at the segment endpoint");
  return xs;
}

NumericOracle::NumericOracle(UnivariateFamily family, TrackerConfig config)
    : family_(std::move(family)), config_(config) {
  config_.validate();
  if (family_.d == 0 || family_.base_params.size() != family_.d)
    throw InvalidArgument("family must have d base coefficients");
  for (const auto* q : {&family_.q1, &family_.q2, &family_.q3, &family_.q4})
    if (q->size() != family_.d)
      throw InvalidArgument("loop vertices must have d coefficients each");

  std::vector<cd> roots = family_.known_fiber
                              ? *family_.known_fiber
                              : monic_roots(family_.base_params);
  for (cd& r : roots)
    if (!newton(family_.base_params, r, 1e-13, 50))
      throw TrackingFailure("fiber point failed to polish under the base system");
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= kMinRootSeparation)
        throw InvalidArgument("fiber points closer than the separation floor");
  fiber_.reserve(roots.size());
  for (const cd& r : roots) fiber_.push_back(Solution{0, {r}});
}

double NumericOracle::equality_tolerance() const { return kEqualityTolerance; }

bool NumericOracle::equal(const Solution& a, const Solution& b) const {
  if (a.coords.size() != 1 || b.coords.size() != 1)
    throw InvalidArgument("numeric solutions are univariate");
  return std::abs(a.coords[0] - b.coords[0]) < kEqualityTolerance;
}

OracleDescriptor NumericOracle::descriptor() const {
  OracleDescriptor desc;
  desc.kind = BackendKind::Parametric;
  desc.d = family_.d;
  desc.n = 1;
  desc.base_coeffs = family_.base_params;
  desc.q1 = family_.q1;
  desc.q2 = family_.q2;
  desc.q3 = family_.q3;
  desc.q4 = family_.q4;
  desc.tracker = config_;
  return desc;
}

double NumericOracle::max_fiber_residual() const {
  double worst = 0;
  for (const Solution& s : fiber_)
    worst = std::max(worst,
                     std::abs(eval_monic(family_.base_params, s.coords[0]).first));
  return worst;
}

std::size_t NumericOracle::match_fiber(const cd& x, bool strict_gap) const {
  double best = std::numeric_limits<double>::infinity(), second = best;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < fiber_.size(); ++i) {
    double dist = std::abs(x - fiber_[i].coords[0]);
    if (dist < best) {
      second = best;
      best = dist;
      best_i = i;
    } else if (dist < second) {
      second = dist;
    }
  }
  if (best >= kEqualityTolerance)
    throw UnknownSolution("point is not within tolerance of any fiber point");
  if (strict_gap && fiber_.size() > 1 && !(second >= kGapRatio * best))
    throw AmbiguousMatch("fiber match gap ratio below 10x; resample the loop");
  return best_i;
}

Solution NumericOracle::do_eval(int which, const Solution& s) {
  if (s.coords.size() != 1)
    throw InvalidArgument("numeric solutions are univariate");
  std::size_t start = match_fiber(s.coords[0], false);
  const auto& qa = which == 0 ? family_.q1 : family_.q3;
  const auto& qb = which == 0 ? family_.q2 : family_.q4;
  // The whole fiber rides along so per-step injectivity is checkable; the
  // requested point's image is read off at the end.
  std::vector<cd> xs(fiber_.size());
  for (std::size_t i = 0; i < fiber_.size(); ++i) xs[i] = fiber_[i].coords[0];
  xs = track_fiber(config_, std::move(xs), family_.base_params, qa);
  xs = track_fiber(config_, std::move(xs), qa, qb);
  xs = track_fiber(config_, std::move(xs), qb, family_.base_params);
  std::vector<bool> used(fiber_.size(), false);
  std::size_t image = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::size_t idx = match_fiber(xs[i], true);
    if (used[idx])
      throw AmbiguousMatch("loop endpoints are not a permutation of the fiber");
    used[idx] = true;
    if (i == start) image = idx;
  }
  return fiber_[image];
}

std::unique_ptr<NumericOracle> make_numeric_oracle(UnivariateFamily family,
                                                   TrackerConfig config) {
  return std::make_unique<NumericOracle>(std::move(family), config);
}

}  // namespace mc
