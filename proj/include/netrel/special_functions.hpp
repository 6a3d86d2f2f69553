#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "netrel/error.hpp"

namespace netrel {

namespace detail {

// sin(pi x), exactly zero at integers.
inline double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  double sign = 1.0;
  if (r > 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

// Dirichlet eta by Borwein's accelerated alternating series; valid for s > 0.
// With 40 terms the truncation error is below 3 / (3 + sqrt 8)^40 ~ 1e-30.
inline double dirichlet_eta(double s) {
  constexpr int n = 40;
  std::array<double, n + 1> d{};
  double term = 1.0 / n;
  double sum = term;
  d[0] = n * sum;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1.0) * (2.0 * i));
    sum += term;
    d[static_cast<std::size_t>(i)] = n * sum;
  }
  const double dn = d[n];
  double acc = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc += sign * (d[static_cast<std::size_t>(k)] - dn) * std::pow(k + 1.0, -s);
  }
  return -acc / dn;
}

// Riemann zeta on the real line minus the pole at 1, by analytic continuation.
inline double zeta_continued(double s) {
  if (s == 1.0) throw DivergenceError("zeta has a pole at s = 1");
  if (s == 0.0) return -0.5;
  if (s > 0.0) {
    if (s > 60.0) return 1.0 + std::exp2(-s);
    // 1 - 2^(1-s), accurate as s -> 1.
    const double denom = -std::expm1((1.0 - s) * std::numbers::ln2);
    return dirichlet_eta(s) / denom;
  }
  // Functional equation: zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s).
  const double sine = sin_pi(0.5 * s);
  if (sine == 0.0) return 0.0;
  const double log_mag = s * std::numbers::ln2 + (s - 1.0) * std::log(std::numbers::pi) +
                         std::lgamma(1.0 - s);
  return sine * std::exp(log_mag) * zeta_continued(1.0 - s);
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const noexcept { return sum + carry; }
};

// sum_{i>=1} x^i / i^s with x = exp(-mu), mu > 0.
inline double polylog_series(double s, double mu) {
  CompensatedSum acc;
  const double peak = s < 0.0 ? -s / mu : 0.0;
  for (long i = 1;; ++i) {
    const double di = static_cast<double>(i);
    const double term = std::exp(-mu * di - s * std::log(di));
    acc.add(term);
    if (di > peak && term <= 1e-18 * std::abs(acc.value())) break;
    if (i > 50'000'000)
      throw ConvergenceError("polylog series did not converge", term);
  }
  return acc.value();
}

// Expansion around x = 1:
//   Li_s(e^-mu) = Gamma(1-s) mu^(s-1) + sum_k zeta(s-k) (-mu)^k / k!
// for non-integer s, with the pole pair replaced by
//   (-mu)^(m-1)/(m-1)! (H_(m-1) - ln mu)
// when s = m is a positive integer. Converges for mu < 2 pi.
inline double polylog_near_one(double s, double mu, int integer_order) {
  CompensatedSum acc;
  const double log_mu = std::log(mu);
  if (integer_order > 0) {
    const int k0 = integer_order - 1;
    double harmonic = 0.0;
    for (int j = 1; j <= k0; ++j) harmonic += 1.0 / j;
    const double sign = (k0 % 2 == 0) ? 1.0 : -1.0;
    acc.add(sign * std::exp(k0 * log_mu - std::lgamma(k0 + 1.0)) * (harmonic - log_mu));
  } else {
    acc.add(std::tgamma(1.0 - s) * std::exp((s - 1.0) * log_mu));
  }
  double small_run = 0.0;
  for (int k = 0; k < 200; ++k) {
    if (integer_order > 0 && k == integer_order - 1) continue;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double z = zeta_continued(s - k);
    const double term = sign * z * std::exp(k * log_mu - std::lgamma(k + 1.0));
    acc.add(term);
    // zeta vanishes at negative even integers, so look at two terms at once.
    const double tiny = 1e-18 * std::max(1.0, std::abs(acc.value()));
    small_run = (std::abs(term) <= tiny) ? small_run + 1 : 0;
    if (k > 2 && small_run >= 2) return acc.value();
  }
  throw ConvergenceError("polylog expansion did not converge", mu);
}

}  // namespace detail

/// Riemann zeta for real s > 1, via the eta function
/// zeta(s) = eta(s) / (1 - 2^(1-s)); stays accurate close to the pole.
inline double zeta(double s) {
  if (!(s > 1.0))
    throw DivergenceError("zeta(s) diverges for s <= 1 (got s = " + std::to_string(s) + ")");
  return detail::zeta_continued(s);
}

/// Polylogarithm Li_s(x) = sum_{i>=1} x^i / i^s for real s and x in [0,1].
/// x = 1 requires s > 1 and returns zeta(s).
inline double polylog(double s, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("polylog argument must lie in [0,1], got " + std::to_string(x));
  if (!std::isfinite(s)) throw std::invalid_argument("polylog order must be finite");
  if (x == 0.0) return 0.0;
  if (x == 1.0) {
    if (!(s > 1.0))
      throw DivergenceError("Li_s(1) diverges for s <= 1 (got s = " + std::to_string(s) + ")");
    return zeta(s);
  }
  const double mu = -std::log(x);
  if (mu >= 0.05) return detail::polylog_series(s, mu);

  const double nearest = std::round(s);
  if (nearest >= 1.0) {
    if (s == nearest) return detail::polylog_near_one(s, mu, static_cast<int>(nearest));
    // Close to a positive integer the two pole terms cancel catastrophically;
    // interpolate through well-separated orders and the exact integer value.
    constexpr double h = 2.5e-3;
    if (std::abs(s - nearest) < h) {
      const std::array<double, 5> nodes{nearest - 2 * h, nearest - h, nearest, nearest + h,
                                        nearest + 2 * h};
      std::array<double, 5> values{};
      for (std::size_t i = 0; i < nodes.size(); ++i)
        values[i] = detail::polylog_near_one(nodes[i], mu, i == 2 ? static_cast<int>(nearest) : 0);
      double result = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        double basis = 1.0;
        for (std::size_t j = 0; j < nodes.size(); ++j)
          if (j != i) basis *= (s - nodes[j]) / (nodes[i] - nodes[j]);
        result += basis * values[i];
      }
      return result;
    }
  }
  return detail::polylog_near_one(s, mu, 0);
}

}  // namespace netrel
