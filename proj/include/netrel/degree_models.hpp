#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "netrel/error.hpp"
#include "netrel/special_functions.hpp"

namespace netrel {

// Degree distribution families. Infinite-support families are evaluated in
// closed form where one exists and truncated adaptively otherwise.

/// pmf[k] = probability of degree k.
struct Empirical {
  std::vector<double> pmf;

  static Empirical from_degrees(std::span<const int> degrees) {
    if (degrees.empty()) throw std::invalid_argument("empty degree sequence");
    int max_degree = 0;
    for (int k : degrees) {
      if (k < 0) throw std::invalid_argument("negative degree in degree sequence");
      max_degree = std::max(max_degree, k);
    }
    Empirical d;
    d.pmf.assign(static_cast<std::size_t>(max_degree) + 1, 0.0);
    for (int k : degrees) d.pmf[static_cast<std::size_t>(k)] += 1.0;
    for (double& p : d.pmf) p /= static_cast<double>(degrees.size());
    return d;
  }
};

struct Poisson {
  double lambda;
};

/// p_k proportional to k^-gamma e^(-k/kappa) for k >= 1, normalised by
/// Li_gamma(e^(-1/kappa)). kappa may be +infinity (pure power law).
struct PowerLawCutoff {
  double gamma;
  double kappa;
};

/// p_k = k^-gamma / zeta(gamma), k >= 1.
struct Zeta {
  double gamma;
};

/// p_k = c k^-gamma on [k_min, k_max].
struct TruncatedPowerLaw {
  double gamma;
  int k_min;
  int k_max;
};

using DegreeDistribution = std::variant<Empirical, Poisson, PowerLawCutoff, Zeta, TruncatedPowerLaw>;

struct Moments {
  double mean = 0.0;
  double second_moment = 0.0;
  bool mean_divergent = false;
  bool second_moment_divergent = false;

  double variance() const noexcept { return second_moment - mean * mean; }
};

inline std::string kind_name(const DegreeDistribution& d) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Empirical>) return "empirical";
        else if constexpr (std::is_same_v<T, Poisson>) return "poisson";
        else if constexpr (std::is_same_v<T, PowerLawCutoff>) return "power_cutoff";
        else if constexpr (std::is_same_v<T, Zeta>) return "zeta";
        else return "truncated_power";
      },
      d);
}

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

inline void validate(const Empirical& d) {
  require(!d.pmf.empty(), "empirical pmf is empty");
  double sum = 0.0;
  for (double p : d.pmf) {
    require(std::isfinite(p) && p >= 0.0, "empirical pmf entries must be nonnegative");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "empirical pmf sums to " + std::to_string(sum) + ", not 1");
}
inline void validate(const Poisson& d) {
  require(std::isfinite(d.lambda) && d.lambda > 0.0, "poisson lambda must be > 0");
}
inline void validate(const PowerLawCutoff& d) {
  require(std::isfinite(d.gamma), "power-law exponent must be finite");
  require(d.kappa > 0.0, "cutoff kappa must be > 0");
  if (std::isinf(d.kappa))
    require(d.gamma > 1.0, "power law without cutoff needs gamma > 1 to normalise");
}
inline void validate(const Zeta& d) {
  require(std::isfinite(d.gamma) && d.gamma > 1.0,
          "zeta distribution needs gamma > 1 to normalise (got " + std::to_string(d.gamma) + ")");
}
inline void validate(const TruncatedPowerLaw& d) {
  require(std::isfinite(d.gamma), "power-law exponent must be finite");
  require(d.k_min >= 1, "k_min must be >= 1");
  require(d.k_max >= d.k_min, "k_max must be >= k_min");
}

inline double cutoff_base(const PowerLawCutoff& d) {
  return std::isinf(d.kappa) ? 1.0 : std::exp(-1.0 / d.kappa);
}

inline double truncated_normaliser(const TruncatedPowerLaw& d) {
  double sum = 0.0;
  for (int k = d.k_max; k >= d.k_min; --k) sum += std::pow(static_cast<double>(k), -d.gamma);
  return 1.0 / sum;
}

}  // namespace detail

inline void validate(const DegreeDistribution& d) {
  std::visit([](const auto& v) { detail::validate(v); }, d);
}

/// Probability mass at degree k, evaluated for every k in [0, k_max] at once
/// (normalisers are computed a single time).
inline std::vector<double> pmf_table(const DegreeDistribution& d, std::size_t k_max) {
  validate(d);
  std::vector<double> out(k_max + 1, 0.0);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Empirical>) {
          for (std::size_t k = 0; k <= k_max && k < v.pmf.size(); ++k) out[k] = v.pmf[k];
        } else if constexpr (std::is_same_v<T, Poisson>) {
          const double log_lambda = std::log(v.lambda);
          for (std::size_t k = 0; k <= k_max; ++k) {
            const double dk = static_cast<double>(k);
            out[k] = std::exp(dk * log_lambda - v.lambda - std::lgamma(dk + 1.0));
          }
        } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
          const double y = detail::cutoff_base(v);
          const double norm = polylog(v.gamma, y);
          const double log_y = std::isinf(v.kappa) ? 0.0 : -1.0 / v.kappa;
          for (std::size_t k = 1; k <= k_max; ++k) {
            const double dk = static_cast<double>(k);
            out[k] = std::exp(-v.gamma * std::log(dk) + dk * log_y) / norm;
          }
        } else if constexpr (std::is_same_v<T, Zeta>) {
          const double norm = zeta(v.gamma);
          for (std::size_t k = 1; k <= k_max; ++k)
            out[k] = std::pow(static_cast<double>(k), -v.gamma) / norm;
        } else {
          const double c = detail::truncated_normaliser(v);
          for (auto k = static_cast<std::size_t>(v.k_min); k <= k_max && k <= static_cast<std::size_t>(v.k_max); ++k)
            out[k] = c * std::pow(static_cast<double>(k), -v.gamma);
        }
      },
      d);
  return out;
}

inline double pmf(const DegreeDistribution& d, std::size_t k) {
  if (const auto* e = std::get_if<Empirical>(&d)) {
    detail::validate(*e);
    return k < e->pmf.size() ? e->pmf[k] : 0.0;
  }
  if (const auto* t = std::get_if<TruncatedPowerLaw>(&d)) {
    detail::validate(*t);
    if (k < static_cast<std::size_t>(t->k_min) || k > static_cast<std::size_t>(t->k_max)) return 0.0;
    return detail::truncated_normaliser(*t) * std::pow(static_cast<double>(k), -t->gamma);
  }
  validate(d);
  if (k == 0) return pmf_table(d, 0)[0];
  // Single-point evaluation without materialising the whole table.
  return std::visit(
      [k](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        const double dk = static_cast<double>(k);
        if constexpr (std::is_same_v<T, Poisson>) {
          return std::exp(dk * std::log(v.lambda) - v.lambda - std::lgamma(dk + 1.0));
        } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
          const double log_y = std::isinf(v.kappa) ? 0.0 : -1.0 / v.kappa;
          return std::exp(-v.gamma * std::log(dk) + dk * log_y) / polylog(v.gamma, detail::cutoff_base(v));
        } else if constexpr (std::is_same_v<T, Zeta>) {
          return std::pow(dk, -v.gamma) / zeta(v.gamma);
        } else {
          return 0.0;
        }
      },
      d);
}

inline Moments moments(const DegreeDistribution& d) {
  validate(d);
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto direct = [](const std::vector<double>& table) {
    Moments m;
    // Smallest terms first.
    for (std::size_t k = table.size(); k-- > 1;) {
      const double dk = static_cast<double>(k);
      m.mean += dk * table[k];
      m.second_moment += dk * dk * table[k];
    }
    return m;
  };
  auto zeta_moments = [&](double gamma) {
    Moments m;
    const double norm = zeta(gamma);
    if (gamma > 2.0) m.mean = zeta(gamma - 1.0) / norm;
    else { m.mean = inf; m.mean_divergent = true; }
    if (gamma > 3.0) m.second_moment = zeta(gamma - 2.0) / norm;
    else { m.second_moment = inf; m.second_moment_divergent = true; }
    return m;
  };
  return std::visit(
      [&](const auto& v) -> Moments {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Empirical>) {
          return direct(v.pmf);
        } else if constexpr (std::is_same_v<T, Poisson>) {
          return Moments{v.lambda, v.lambda * v.lambda + v.lambda, false, false};
        } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
          if (std::isinf(v.kappa)) return zeta_moments(v.gamma);
          const double y = detail::cutoff_base(v);
          const double norm = polylog(v.gamma, y);
          return Moments{polylog(v.gamma - 1.0, y) / norm, polylog(v.gamma - 2.0, y) / norm, false, false};
        } else if constexpr (std::is_same_v<T, Zeta>) {
          return zeta_moments(v.gamma);
        } else {
          return direct(pmf_table(d, static_cast<std::size_t>(v.k_max)));
        }
      },
      d);
}

/// Excess-degree law p'_k = k p_k / <k>: the degree of the node reached by
/// following a uniformly random edge.
inline double excess_degree_pmf(const DegreeDistribution& d, std::size_t k) {
  const Moments m = moments(d);
  if (m.mean_divergent) throw DivergenceError("excess-degree law undefined: mean degree diverges");
  if (!(m.mean > 0.0)) throw std::invalid_argument("excess-degree law undefined: mean degree is zero");
  return static_cast<double>(k) * pmf(d, k) / m.mean;
}

/// G1(x) = sum_k p'_k x^(k-1) for x in [0,1], the generating function of the
/// excess-degree law. Closed forms are used for the infinite-support families.
inline double excess_generating_function(const DegreeDistribution& d, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("generating function argument must lie in [0,1]");
  const Moments m = moments(d);
  if (m.mean_divergent) throw DivergenceError("excess-degree law undefined: mean degree diverges");
  if (!(m.mean > 0.0)) throw std::invalid_argument("excess-degree law undefined: mean degree is zero");
  auto horner = [&](const std::vector<double>& table) {
    double acc = 0.0;
    for (std::size_t k = table.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * table[k];
    return acc / m.mean;
  };
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Empirical>) {
          return horner(v.pmf);
        } else if constexpr (std::is_same_v<T, TruncatedPowerLaw>) {
          return horner(pmf_table(d, static_cast<std::size_t>(v.k_max)));
        } else if constexpr (std::is_same_v<T, Poisson>) {
          return std::exp(v.lambda * (x - 1.0));
        } else {
          double gamma = 0.0;
          double y = 1.0;
          if constexpr (std::is_same_v<T, PowerLawCutoff>) {
            gamma = v.gamma;
            y = detail::cutoff_base(v);
          } else {
            gamma = v.gamma;
          }
          if (x == 0.0) return pmf(d, 1) / m.mean;
          if (x == 1.0) return 1.0;
          return polylog(gamma - 1.0, x * y) / (x * polylog(gamma - 1.0, y));
        }
      },
      d);
}

struct Support {
  std::size_t k_max = 0;
  double tail_bound = 0.0;         // bound on sum_{k > k_max} p_k
  double second_tail_bound = 0.0;  // bound on sum_{k > k_max} k^2 p_k (inf if divergent)
  bool within_tolerance = true;
};

/// Degree at which an infinite-support law is cut: the smallest k_max whose
/// pmf tail and k^2-weighted tail are both below `tol`, or `cap` if no such
/// k_max exists below it. Finite-support laws return their exact support.
inline Support truncated_support(const DegreeDistribution& d, double tol = 1e-12,
                                 std::size_t cap = 10'000'000) {
  validate(d);
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (const auto* e = std::get_if<Empirical>(&d)) return Support{e->pmf.size() - 1, 0.0, 0.0, true};
  if (const auto* t = std::get_if<TruncatedPowerLaw>(&d))
    return Support{static_cast<std::size_t>(t->k_max), 0.0, 0.0, true};

  // Upper bound on the k^2-weighted tail beyond K (also bounds the plain tail).
  std::function<double(std::size_t)> weighted_tail;
  std::function<double(std::size_t)> plain_tail;
  bool heavy = false;
  if (const auto* p = std::get_if<Poisson>(&d)) {
    const double lambda = p->lambda;
    weighted_tail = [lambda](std::size_t K) {
      const double j = static_cast<double>(K + 1);
      const double ratio = lambda * (j + 1.0) / (j * j);
      if (ratio >= 1.0) return inf;
      const double w = std::exp(std::log(j * j) + j * std::log(lambda) - lambda - std::lgamma(j + 1.0));
      return w / (1.0 - ratio);
    };
    plain_tail = weighted_tail;
  } else if (const auto* c = std::get_if<PowerLawCutoff>(&d); c && std::isfinite(c->kappa)) {
    const double gamma = c->gamma;
    const double y = detail::cutoff_base(*c);
    const double log_y = -1.0 / c->kappa;
    const double norm = polylog(gamma, y);
    weighted_tail = [=](std::size_t K) {
      const double j = static_cast<double>(K + 1);
      const double ratio = y * std::max(1.0, std::pow((j + 1.0) / j, 2.0 - gamma));
      if (ratio >= 1.0) return inf;
      return std::exp((2.0 - gamma) * std::log(j) + j * log_y) / norm / (1.0 - ratio);
    };
    plain_tail = weighted_tail;
  } else {
    heavy = true;
    const double gamma = std::holds_alternative<Zeta>(d) ? std::get<Zeta>(d).gamma
                                                         : std::get<PowerLawCutoff>(d).gamma;
    const double norm = zeta(gamma);
    // sum_{k>K} k^-a <= K^(1-a) / (a-1) for a > 1.
    weighted_tail = [=](std::size_t K) {
      if (gamma <= 3.0) return inf;
      return std::pow(static_cast<double>(K), 3.0 - gamma) / (gamma - 3.0) / norm;
    };
    plain_tail = [=](std::size_t K) {
      return std::pow(static_cast<double>(K), 1.0 - gamma) / (gamma - 1.0) / norm;
    };
  }

  auto ok = [&](std::size_t K) {
    const double w = weighted_tail(K);
    return plain_tail(K) < tol && (w < tol || (heavy && std::isinf(w)));
  };
  std::size_t hi = 1;
  while (!ok(hi) && hi < cap) hi = std::min(cap, hi * 2);
  std::size_t lo = hi / 2;
  if (ok(hi)) {
    while (lo + 1 < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (ok(mid)) hi = mid;
      else lo = mid;
    }
  }
  Support s{hi, plain_tail(hi), weighted_tail(hi), false};
  s.within_tolerance = s.tail_bound < tol && s.second_tail_bound < tol;
  return s;
}

}  // namespace netrel
