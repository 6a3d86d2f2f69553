#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "netrel/exact_reliability.hpp"
#include "netrel/special_functions.hpp"

namespace netrel {

// Percolation-based reliability assessment: the probability that more than
// M_c = floor(p_c N) of the N edges are operational.

/// floor(p_c * N). Products that land within a few ulps below an integer
/// (1/3 * 6) are rounded up to it first.
inline std::size_t critical_edge_count(std::size_t N, double p_c) {
  check_probability(p_c, "threshold p_c");
  const double x = p_c * static_cast<double>(N);
  const double nudged = x + 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x);
  const auto m = static_cast<std::size_t>(std::floor(nudged));
  return std::min(m, N);
}

struct AssessmentConfig {
  std::size_t N = 0;
  double p_c = 0.0;
  std::size_t M_c = 0;
};

inline AssessmentConfig make_assessment_config(std::size_t N, double p_c) {
  return AssessmentConfig{N, p_c, critical_edge_count(N, p_c)};
}

namespace detail {

inline void check_cutoff(std::size_t N, std::size_t M_c) {
  if (M_c > N)
    throw std::invalid_argument("critical count M_c = " + std::to_string(M_c) +
                                " exceeds edge count N = " + std::to_string(N));
}

inline void check_probabilities(std::span<const double> probs) {
  for (std::size_t i = 0; i < probs.size(); ++i)
    check_probability(probs[i], "probability of edge " + std::to_string(i));
}

inline double log_binomial_term(std::size_t N, std::size_t i, double log_p, double log_q) {
  const double n = static_cast<double>(N);
  const double k = static_cast<double>(i);
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * log_p +
         (n - k) * log_q;
}

}  // namespace detail

/// sum_{i=M_c+1}^{N} C(N,i) p^i (1-p)^(N-i), with terms formed in log space.
inline double rel_c_homogeneous(std::size_t N, std::size_t M_c, double p) {
  detail::check_cutoff(N, M_c);
  check_probability(p, "edge probability");
  if (M_c == N) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  detail::CompensatedSum acc;
  for (std::size_t i = N; i > M_c; --i) acc.add(std::exp(detail::log_binomial_term(N, i, log_p, log_q)));
  return clamp_probability(acc.value());
}

/// Law of the number of operational edges (Poisson-binomial), by the O(N^2)
/// convolution recurrence.
inline std::vector<double> poisson_binomial_pmf(std::span<const double> probs) {
  detail::check_probabilities(probs);
  std::vector<double> pmf(probs.size() + 1, 0.0);
  pmf[0] = 1.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    const double p = probs[j];
    for (std::size_t k = j + 1; k > 0; --k) pmf[k] = pmf[k] * (1.0 - p) + pmf[k - 1] * p;
    pmf[0] *= 1.0 - p;
  }
  return pmf;
}

/// P(X > M_c) for X the number of operational edges with heterogeneous
/// per-edge probabilities.
inline double rel_c_heterogeneous(std::span<const double> probs, std::size_t M_c) {
  detail::check_cutoff(probs.size(), M_c);
  const auto pmf = poisson_binomial_pmf(probs);
  detail::CompensatedSum acc;
  for (std::size_t i = pmf.size(); i-- > M_c + 1;) acc.add(pmf[i]);
  return clamp_probability(acc.value());
}

struct PoissonApproximation {
  double approx = 0.0;
  double mu = 0.0;
};

/// sum_{i=M_c+1}^{N} mu^i e^-mu / i!  with mu = sum p_e.
inline PoissonApproximation rel_c_poisson_approx(std::span<const double> probs, std::size_t M_c) {
  detail::check_cutoff(probs.size(), M_c);
  detail::check_probabilities(probs);
  PoissonApproximation out;
  detail::CompensatedSum mu;
  for (double p : probs) mu.add(p);
  out.mu = mu.value();
  if (out.mu == 0.0) return out;
  const double log_mu = std::log(out.mu);
  detail::CompensatedSum acc;
  for (std::size_t i = probs.size(); i > M_c; --i) {
    const double k = static_cast<double>(i);
    acc.add(std::exp(k * log_mu - out.mu - std::lgamma(k + 1.0)));
  }
  out.approx = clamp_probability(acc.value());
  return out;
}

/// Le Cam: sum_k |P(X=k) - Poi(mu)(k)| < 2 sum p_e^2.
inline double le_cam_bound(std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) sum += p * p;
  return 2.0 * sum;
}

/// Node-voting comparator: sum_{i=floor(n p_c)+1}^{n} C(n,i) R^i (1-R)^(n-i),
/// with one common node reliability R.
inline double node_voting_reliability(std::size_t n, double p_c, double R) {
  return rel_c_homogeneous(n, critical_edge_count(n, p_c), R);
}

}  // namespace netrel
