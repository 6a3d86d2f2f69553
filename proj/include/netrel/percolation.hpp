#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "netrel/degree_models.hpp"
#include "netrel/error.hpp"
#include "netrel/special_functions.hpp"

namespace netrel {

/// Bond-percolation threshold p_c with classification flags. A vanishing
/// threshold (divergent second moment) is reported as p_c = 0.
struct ThresholdReport {
  double p_c = 0.0;
  bool vanishing = false;
  bool molloy_reed_satisfied = false;
  bool second_moment_divergent = false;
  bool meaningful = false;  // 0 < p_c < 1

  /// Critical fraction of removed edges at which the giant component disappears.
  double g_c() const noexcept { return 1.0 - p_c; }
};

namespace detail {

inline ThresholdReport vanishing_threshold() {
  ThresholdReport r;
  r.p_c = 0.0;
  r.vanishing = true;
  r.molloy_reed_satisfied = true;
  r.second_moment_divergent = true;
  r.meaningful = false;
  return r;
}

// From the branching ratio <k^2>/<k> (or an equivalent closed form).
inline ThresholdReport threshold_from_ratio(double ratio) {
  if (!(ratio > 1.0))
    throw NoGiantComponentError(
        "no giant component possible: <k^2> <= <k> (every node has degree <= 1)");
  ThresholdReport r;
  r.p_c = 1.0 / (ratio - 1.0);
  r.molloy_reed_satisfied = ratio > 2.0;
  r.meaningful = r.p_c > 0.0 && r.p_c < 1.0;
  return r;
}

}  // namespace detail

/// p_c = <k> / (<k^2> - <k>) from the degree moments.
inline ThresholdReport bond_threshold(const DegreeDistribution& d) {
  const Moments m = moments(d);
  if (m.mean_divergent) throw DivergenceError("mean degree diverges; threshold undefined");
  if (!(m.mean > 0.0)) throw std::invalid_argument("mean degree must be positive");
  if (m.second_moment_divergent) return detail::vanishing_threshold();
  if (!(m.second_moment > m.mean))
    throw NoGiantComponentError(
        "no giant component possible: <k^2> <= <k> (every node has degree <= 1)");
  ThresholdReport r;
  r.p_c = m.mean / (m.second_moment - m.mean);
  r.molloy_reed_satisfied = m.second_moment / m.mean > 2.0;
  r.meaningful = r.p_c > 0.0 && r.p_c < 1.0;
  return r;
}

/// Closed form for the exponentially cut-off power law:
/// p_c = Li_{g-1}(y) / (Li_{g-2}(y) - Li_{g-1}(y)), y = e^(-1/kappa).
inline ThresholdReport threshold_power_cutoff(double gamma, double kappa) {
  detail::validate(PowerLawCutoff{gamma, kappa});
  const double y = detail::cutoff_base(PowerLawCutoff{gamma, kappa});
  if (y == 1.0) {
    if (!(gamma > 2.0)) throw DivergenceError("mean degree diverges for gamma <= 2 without cutoff");
    if (!(gamma > 3.0)) return detail::vanishing_threshold();
  }
  const double first = polylog(gamma - 1.0, y);
  const double second = polylog(gamma - 2.0, y);
  if (!(second > first))
    throw NoGiantComponentError("no giant component possible: <k^2> <= <k>");
  ThresholdReport r;
  r.p_c = first / (second - first);
  r.molloy_reed_satisfied = second / first > 2.0;
  r.meaningful = r.p_c > 0.0 && r.p_c < 1.0;
  return r;
}

/// Pure power law p_k = k^-g / zeta(g):
/// p_c = zeta(g-1) / (zeta(g-2) - zeta(g-1)) for g > 3, and 0 for 2 < g <= 3.
inline ThresholdReport threshold_zeta(double gamma) {
  if (!(gamma > 2.0))
    throw DivergenceError("mean degree diverges for gamma <= 2 (got " + std::to_string(gamma) + ")");
  if (gamma <= 3.0) return detail::vanishing_threshold();
  const double first = zeta(gamma - 1.0);
  const double second = zeta(gamma - 2.0);
  ThresholdReport r;
  r.p_c = first / (second - first);
  r.molloy_reed_satisfied = second / first > 2.0;
  r.meaningful = r.p_c > 0.0 && r.p_c < 1.0;
  return r;
}

/// Continuum approximation for p_k = c k^-g on [k_min, k_max]:
///   2 < g < 3:  p_c = 1 / ((g-2)/(3-g) k_min^(g-2) k_max^(3-g) - 1)
///   g > 3:      p_c = 1 / ((g-2)/(g-3) k_min - 1)
inline ThresholdReport threshold_truncated(double gamma, int k_min, int k_max) {
  detail::validate(TruncatedPowerLaw{gamma, k_min, k_max});
  if (!(gamma > 2.0) || gamma == 3.0)
    throw std::invalid_argument("truncated power-law threshold is defined for 2 < gamma < 3 and gamma > 3 (got " +
                                std::to_string(gamma) + ")");
  double ratio = 0.0;  // approximates <k^2>/<k>
  if (gamma < 3.0) {
    ratio = (gamma - 2.0) / (3.0 - gamma) * std::pow(static_cast<double>(k_min), gamma - 2.0) *
            std::pow(static_cast<double>(k_max), 3.0 - gamma);
  } else {
    ratio = (gamma - 2.0) / (gamma - 3.0) * static_cast<double>(k_min);
  }
  if (!(ratio - 1.0 > 1e-12))
    throw NoGiantComponentError("degenerate support: threshold denominator is not positive");
  return detail::threshold_from_ratio(ratio);
}

/// Threshold by the family's own closed form where one exists (continuum
/// formula for the truncated power law), otherwise from exact moments.
struct FamilyThreshold {
  ThresholdReport report;
  std::string method;  // "closed_form", "continuum" or "moments"
};

inline FamilyThreshold family_threshold(const DegreeDistribution& d) {
  validate(d);
  if (const auto* c = std::get_if<PowerLawCutoff>(&d)) return {threshold_power_cutoff(c->gamma, c->kappa), "closed_form"};
  if (const auto* z = std::get_if<Zeta>(&d)) return {threshold_zeta(z->gamma), "closed_form"};
  if (const auto* t = std::get_if<TruncatedPowerLaw>(&d); t && t->gamma > 2.0 && t->gamma != 3.0)
    return {threshold_truncated(t->gamma, t->k_min, t->k_max), "continuum"};
  return {bond_threshold(d), "moments"};
}

struct FixedPointResult {
  double root = 1.0;
  bool nontrivial = false;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool used_bisection = false;
};

struct FixedPointOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
  // Iteration hands over to bisection once the observed contraction rate
  // exceeds this.
  double stall_rate = 0.999;
  std::size_t min_iterations_before_stall = 64;
  double nontrivial_margin = 1e-9;
};

/// Smallest root in [0,1] of x = h(x) = 1 - p_e + p_e G1(x), the probability
/// that a random edge does not lead to the giant component. Fixed-point
/// iteration from x = 0 increases monotonically to that root; near the
/// threshold it slows down and a bisection on h(x) - x takes over.
inline FixedPointResult solve_fixed_point(const DegreeDistribution& d, double p_e,
                                          const FixedPointOptions& opt = {}) {
  if (!(p_e >= 0.0 && p_e <= 1.0))
    throw std::invalid_argument("edge probability must lie in [0,1]");
  auto h = [&](double x) { return 1.0 - p_e + p_e * excess_generating_function(d, x); };

  FixedPointResult result;
  double x = 0.0;
  double prev_step = std::numeric_limits<double>::infinity();
  bool stalled = false;
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    const double next = std::min(1.0, h(x));
    const double step = next - x;
    x = next;
    result.iterations = it;
    const double rate = step / prev_step;
    // Distance to the root is about step * rate / (1 - rate).
    const double remaining = (rate > 0.0 && rate < 1.0) ? step * rate / (1.0 - rate) : step;
    if (step <= opt.tolerance && remaining <= opt.tolerance) break;
    if (it >= opt.min_iterations_before_stall && rate > opt.stall_rate) {
      stalled = true;
      break;
    }
    prev_step = step;
    if (it == opt.max_iterations)
      throw ConvergenceError("fixed-point iteration did not converge", std::abs(h(x) - x));
  }

  if (stalled) {
    // g(x) = h(x) - x is convex with g(x) > 0 below the smallest root and
    // g < 0 between a nontrivial root and 1. Look for a point with g < 0.
    auto g = [&](double t) { return h(t) - t; };
    double lo = x;
    double hi = 1.0;
    bool bracketed = false;
    for (int j = 1; j <= 34; ++j) {
      const double t = 1.0 - std::ldexp(1.0, -j);
      if (t <= lo) continue;
      if (g(t) < 0.0) {
        hi = t;
        bracketed = true;
        break;
      }
      lo = t;
    }
    if (!bracketed) {
      x = 1.0;
    } else {
      while (hi - lo > opt.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) lo = mid;
        else hi = mid;
        ++result.iterations;
      }
      x = 0.5 * (lo + hi);
    }
    result.used_bisection = true;
  }

  result.root = x;
  result.residual = std::abs(h(x) - x);
  result.nontrivial = x < 1.0 - opt.nontrivial_margin;
  return result;
}

}  // namespace netrel
