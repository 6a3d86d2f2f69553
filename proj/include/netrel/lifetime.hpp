#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "netrel/assessment.hpp"
#include "netrel/error.hpp"

namespace netrel {

/// p_e(t) = exp(-rate t).
struct ExponentialLaw {
  double rate;
};

/// p_e(t) = p for all t.
struct ConstantLaw {
  double p;
};

using EdgeLaw = std::variant<ExponentialLaw, ConstantLaw>;

/// Per-edge operational probability as a function of time. A shared profile
/// applies one law to all N edges and is evaluated with the binomial tail.
class EdgeReliabilityProfile {
 public:
  static EdgeReliabilityProfile shared(std::size_t edge_count, EdgeLaw law) {
    check_law(law);
    EdgeReliabilityProfile p;
    p.laws_.assign(edge_count, law);
    p.shared_ = true;
    return p;
  }

  static EdgeReliabilityProfile shared_exponential(std::size_t edge_count, double rate) {
    return shared(edge_count, ExponentialLaw{rate});
  }

  static EdgeReliabilityProfile per_edge(std::vector<EdgeLaw> laws) {
    for (const auto& law : laws) check_law(law);
    EdgeReliabilityProfile p;
    p.laws_ = std::move(laws);
    return p;
  }

  static EdgeReliabilityProfile exponential(const std::vector<double>& rates) {
    std::vector<EdgeLaw> laws;
    laws.reserve(rates.size());
    for (double r : rates) laws.emplace_back(ExponentialLaw{r});
    return per_edge(std::move(laws));
  }

  static EdgeReliabilityProfile constant(const std::vector<double>& probs) {
    std::vector<EdgeLaw> laws;
    laws.reserve(probs.size());
    for (double p : probs) laws.emplace_back(ConstantLaw{p});
    return per_edge(std::move(laws));
  }

  std::size_t size() const noexcept { return laws_.size(); }
  bool is_shared() const noexcept { return shared_; }
  const std::vector<EdgeLaw>& laws() const noexcept { return laws_; }

  static double probability(const EdgeLaw& law, double t) {
    if (const auto* e = std::get_if<ExponentialLaw>(&law)) return std::exp(-e->rate * t);
    return std::get<ConstantLaw>(law).p;
  }

  /// Rate of the shared exponential law, if this profile is one.
  std::optional<double> shared_rate() const {
    if (!shared_ || laws_.empty()) return std::nullopt;
    if (const auto* e = std::get_if<ExponentialLaw>(&laws_.front())) return e->rate;
    return std::nullopt;
  }

  /// Smallest t at which every p_e(t) < floor, capped at `cap`.
  double default_horizon(double floor = 1e-4, double cap = 1e4) const {
    double horizon = 0.0;
    for (const auto& law : laws_) {
      if (const auto* e = std::get_if<ExponentialLaw>(&law)) {
        if (e->rate <= 0.0) return cap;
        horizon = std::max(horizon, std::log(1.0 / floor) / e->rate);
      } else if (std::get<ConstantLaw>(law).p >= floor) {
        return cap;
      }
    }
    return std::min(horizon, cap);
  }

 private:
  static void check_law(const EdgeLaw& law) {
    if (const auto* e = std::get_if<ExponentialLaw>(&law)) {
      if (!(e->rate >= 0.0 && std::isfinite(e->rate)))
        throw std::invalid_argument("decay rate must be finite and >= 0");
    } else {
      check_probability(std::get<ConstantLaw>(law).p, "constant edge probability");
    }
  }

  std::vector<EdgeLaw> laws_;
  bool shared_ = false;
};

inline std::vector<double> evaluate_profile(const EdgeReliabilityProfile& profile, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0, got " + std::to_string(t));
  std::vector<double> probs;
  probs.reserve(profile.size());
  for (const auto& law : profile.laws()) probs.push_back(EdgeReliabilityProfile::probability(law, t));
  return probs;
}

/// Rel_c at one time point.
inline double rel_c_at(const EdgeReliabilityProfile& profile, const AssessmentConfig& config, double t) {
  if (profile.size() != config.N)
    throw std::invalid_argument("profile has " + std::to_string(profile.size()) +
                                " edges but the assessment expects N = " + std::to_string(config.N));
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0, got " + std::to_string(t));
  if (profile.is_shared()) {
    const double p = config.N == 0 ? 1.0 : EdgeReliabilityProfile::probability(profile.laws().front(), t);
    return rel_c_homogeneous(config.N, config.M_c, p);
  }
  return rel_c_heterogeneous(evaluate_profile(profile, t), config.M_c);
}

struct ReliabilityCurve {
  std::vector<double> times;
  std::vector<double> values;
};

/// start, start + step, ... up to and including `end` (within rounding).
inline std::vector<double> make_grid(double start, double end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("grid step must be > 0");
  if (!(start >= 0.0) || !(end >= start)) throw std::invalid_argument("grid needs 0 <= start <= end");
  const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  // Points are rounded to 12 significant digits relative to the grid scale so
  // that 0.1-steps print as 0.3 rather than 0.30000000000000004.
  const double inv_scale = std::pow(10.0, 11 - std::floor(std::log10(std::max({start, end, step}))));
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = std::round((start + static_cast<double>(i) * step) * inv_scale) / inv_scale;
  return grid;
}

inline void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("time grid is empty");
  if (!(grid.front() >= 0.0)) throw std::invalid_argument("time grid must start at t >= 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("time grid must be strictly increasing");
}

inline ReliabilityCurve reliability_curve(const EdgeReliabilityProfile& profile,
                                          const AssessmentConfig& config,
                                          const std::vector<double>& grid) {
  check_grid(grid);
  ReliabilityCurve curve;
  curve.times = grid;
  curve.values.reserve(grid.size());
  for (double t : grid) curve.values.push_back(rel_c_at(profile, config, t));
  return curve;
}

struct CrossingResult {
  double rel_c_crossing = 0.0;
  // Time at which the shared edge probability itself equals p_c.
  std::optional<double> edge_level_crossing;
};

struct CrossingOptions {
  std::optional<double> horizon;
  std::size_t scan_steps = 4096;
  double time_tolerance = 1e-9;
};

/// Smallest t with Rel_c(t) = p_c: coarse scan to bracket, then bisection.
inline CrossingResult lifetime_threshold_crossing(const EdgeReliabilityProfile& profile,
                                                  const AssessmentConfig& config,
                                                  const CrossingOptions& opt = {}) {
  CrossingResult result;
  if (const auto rate = profile.shared_rate(); rate && *rate > 0.0 && config.p_c > 0.0)
    result.edge_level_crossing = std::log(1.0 / config.p_c) / *rate;

  auto above = [&](double t) { return rel_c_at(profile, config, t) > config.p_c; };
  if (!above(0.0)) return result;

  const double horizon = opt.horizon.value_or(profile.default_horizon());
  const double step = horizon / static_cast<double>(opt.scan_steps);
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  for (std::size_t i = 1; i <= opt.scan_steps; ++i) {
    const double t = step * static_cast<double>(i);
    if (!above(t)) {
      hi = t;
      found = true;
      break;
    }
    lo = t;
  }
  if (!found) throw NoCrossingError(horizon);
  while (hi - lo > opt.time_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (above(mid)) lo = mid;
    else hi = mid;
  }
  result.rel_c_crossing = 0.5 * (lo + hi);
  return result;
}

struct IntegralResult {
  double value = 0.0;
  // Estimated mass beyond the last grid point, extrapolating the final
  // segment's exponential decay.
  double truncation_residual = 0.0;
  bool decayed = true;
};

/// Trapezoid integral of the curve over its grid.
inline IntegralResult lifetime_integral(const ReliabilityCurve& curve, double tail_tolerance = 1e-4) {
  check_grid(curve.times);
  if (curve.values.size() != curve.times.size())
    throw std::invalid_argument("curve times and values differ in length");
  IntegralResult r;
  for (std::size_t i = 1; i < curve.times.size(); ++i)
    r.value += 0.5 * (curve.values[i] + curve.values[i - 1]) * (curve.times[i] - curve.times[i - 1]);
  const double last = curve.values.back();
  r.decayed = last < tail_tolerance;
  if (last > 0.0) {
    const std::size_t m = curve.values.size();
    double decay = 0.0;
    if (m >= 2 && curve.values[m - 2] > last)
      decay = std::log(curve.values[m - 2] / last) / (curve.times[m - 1] - curve.times[m - 2]);
    r.truncation_residual = decay > 0.0 ? last / decay : std::numeric_limits<double>::infinity();
  }
  return r;
}

/// f(t) = d(1 - Rel_c)/dt on the curve's grid: central differences inside,
/// one-sided at the ends.
inline std::vector<double> failure_density(const ReliabilityCurve& curve) {
  check_grid(curve.times);
  const std::size_t m = curve.times.size();
  if (m < 3) throw std::invalid_argument("failure density needs at least 3 grid points");
  if (curve.values.size() != m) throw std::invalid_argument("curve times and values differ in length");
  const auto& t = curve.times;
  const auto& v = curve.values;
  std::vector<double> f(m);
  f[0] = -(v[1] - v[0]) / (t[1] - t[0]);
  for (std::size_t i = 1; i + 1 < m; ++i) f[i] = -(v[i + 1] - v[i - 1]) / (t[i + 1] - t[i - 1]);
  f[m - 1] = -(v[m - 1] - v[m - 2]) / (t[m - 1] - t[m - 2]);
  return f;
}

}  // namespace netrel
