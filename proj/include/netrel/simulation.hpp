#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netrel/degree_models.hpp"
#include "netrel/exact_reliability.hpp"
#include "netrel/graph.hpp"

namespace netrel {

/// SplitMix64 generator. Independent streams are derived from (seed, stream)
/// by hashing, so trial i always sees the same numbers whatever order trials
/// run in.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr const char* kAlgorithm = "splitmix64 (per-trial streams: mix(seed) ^ mix(stream))";

  explicit SplitMix64(std::uint64_t state = 0) noexcept : state_(state) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix(seed + 0x632BE59BD9B4E019ULL) ^ mix(index * 0x9E3779B97F4A7C15ULL + 1));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in [0,1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = 0;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

struct SimulationResult {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Crude Monte Carlo estimate of all-terminal reliability.
inline SimulationResult estimate_reliability(const Graph& g, std::span<const double> probs,
                                             std::uint64_t trials, std::uint64_t seed) {
  check_edge_probabilities(g, probs);
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const std::size_t n = g.node_count();
  std::uint64_t connected = 0;
  UnionFind uf(n);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    auto rng = SplitMix64::stream(seed, trial);
    uf.reset(n);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      if (rng.uniform() < probs[i]) {
        const auto& e = g.edge(i);
        uf.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
      }
    }
    if (uf.components() <= 1) ++connected;
  }
  SimulationResult r;
  r.trials = trials;
  r.seed = seed;
  r.estimate = static_cast<double>(connected) / static_cast<double>(trials);
  r.standard_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
  return r;
}

struct PercolationSweep {
  std::vector<double> fractions;
  std::vector<double> mean_largest_fraction;
  std::optional<double> g_c;
  double giant_threshold = 0.05;
};

/// For each removal fraction g, removes ceil(g |E|) edges chosen uniformly at
/// random and records the mean size of the largest component over n. The
/// empirical g_c is the smallest swept g where that mean drops below
/// `giant_threshold`.
inline PercolationSweep inverse_percolation_sweep(const Graph& g, const std::vector<double>& fractions,
                                                  std::uint64_t trials, std::uint64_t seed,
                                                  double giant_threshold = 0.05) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (g.node_count() == 0) throw std::invalid_argument("sweep needs a graph with at least one node");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    check_probability(fractions[i], "removal fraction");
    if (i > 0 && !(fractions[i] > fractions[i - 1]))
      throw std::invalid_argument("removal fractions must be increasing");
  }
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  PercolationSweep sweep;
  sweep.fractions = fractions;
  sweep.giant_threshold = giant_threshold;
  std::vector<std::size_t> order(m);
  UnionFind uf(n);
  for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
    const auto removed = static_cast<std::size_t>(std::ceil(fractions[fi] * static_cast<double>(m) - 1e-9));
    const std::size_t kept = m - std::min(removed, m);
    double total = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      auto rng = SplitMix64::stream(seed, fi * trials + trial);
      for (std::size_t i = 0; i < m; ++i) order[i] = i;
      // Partial Fisher-Yates: the first `kept` slots are a uniform sample.
      for (std::size_t i = 0; i < kept; ++i) std::swap(order[i], order[i + rng.below(m - i)]);
      uf.reset(n);
      std::size_t largest = 1;
      for (std::size_t i = 0; i < kept; ++i) {
        const auto& e = g.edge(order[i]);
        uf.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
        largest = std::max(largest, uf.component_size(static_cast<std::size_t>(e.u)));
      }
      total += static_cast<double>(largest) / static_cast<double>(n);
    }
    const double mean = total / static_cast<double>(trials);
    sweep.mean_largest_fraction.push_back(mean);
    if (!sweep.g_c && mean < giant_threshold) sweep.g_c = fractions[fi];
  }
  return sweep;
}

struct ErasureStats {
  std::size_t self_loops = 0;
  std::size_t multi_edges = 0;
};

/// Configuration model: uniform stub matching, then self-loops and repeated
/// pairs are erased.
inline Graph generate_configuration_model(std::span<const int> degrees, std::uint64_t seed,
                                          ErasureStats* stats = nullptr) {
  std::vector<NodeId> stubs;
  long long total = 0;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    if (degrees[v] < 0) throw std::invalid_argument("negative degree in degree sequence");
    total += degrees[v];
  }
  if (total % 2 != 0) throw std::invalid_argument("degree sum is odd (" + std::to_string(total) + ")");
  stubs.reserve(static_cast<std::size_t>(total));
  for (std::size_t v = 0; v < degrees.size(); ++v)
    stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[v]), static_cast<NodeId>(v));

  auto rng = SplitMix64::stream(seed, 0);
  for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);

  ErasureStats local;
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    NodeId u = stubs[i];
    NodeId v = stubs[i + 1];
    if (u == v) {
      ++local.self_loops;
      continue;
    }
    if (u > v) std::swap(u, v);
    if (!seen.emplace(u, v).second) {
      ++local.multi_edges;
      continue;
    }
    edges.push_back({u, v});
  }
  if (stats) *stats = local;
  return Graph(degrees.size(), std::move(edges));
}

/// Each candidate pair (u,v) is included independently with its probability.
inline Graph generate_inhomogeneous(std::size_t n, const std::map<std::pair<NodeId, NodeId>, double>& edge_probs,
                                    std::uint64_t seed) {
  auto rng = SplitMix64::stream(seed, 0);
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& [pair, p] : edge_probs) {
    check_probability(p, "pair probability");
    auto [u, v] = pair;
    if (u > v) std::swap(u, v);
    if (u == v || u < 0 || static_cast<std::size_t>(v) >= n)
      throw std::invalid_argument("candidate pair (" + std::to_string(pair.first) + "," +
                                  std::to_string(pair.second) + ") is not a valid node pair");
    if (!seen.emplace(u, v).second) throw std::invalid_argument("candidate pair listed twice");
    if (rng.uniform() < p) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

/// Binomial random graph G(n, p) over all pairs in lexicographic order.
inline Graph generate_inhomogeneous(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p, "pair probability");
  auto rng = SplitMix64::stream(seed, 0);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform() < p) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  return Graph(n, std::move(edges));
}

namespace detail {

class DegreeSampler {
 public:
  explicit DegreeSampler(const DegreeDistribution& d) {
    if (const auto* z = std::get_if<Zeta>(&d)) {
      zeta_gamma_ = z->gamma;
      return;
    }
    if (const auto* c = std::get_if<PowerLawCutoff>(&d); c && std::isinf(c->kappa)) {
      zeta_gamma_ = c->gamma;
      return;
    }
    const Support s = truncated_support(d, 1e-12, std::size_t{1} << 24);
    const auto table = pmf_table(d, s.k_max);
    cdf_.resize(table.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < table.size(); ++k) cdf_[k] = acc += table[k];
    for (double& c : cdf_) c /= acc;
  }

  int operator()(SplitMix64& rng) const {
    if (zeta_gamma_) return sample_zeta(rng, *zeta_gamma_);
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1));
  }

 private:
  // Devroye's rejection sampler for the zeta (Zipf) law.
  static int sample_zeta(SplitMix64& rng, double a) {
    const double b = std::exp2(a - 1.0);
    for (;;) {
      const double u = 1.0 - rng.uniform();
      const double v = rng.uniform();
      const double x = std::floor(std::pow(u, -1.0 / (a - 1.0)));
      if (x > static_cast<double>(std::numeric_limits<int>::max())) continue;
      const double t = std::pow(1.0 + 1.0 / x, a - 1.0);
      if (v * x * (t - 1.0) / (b - 1.0) <= t / b) return static_cast<int>(x);
    }
  }

  std::vector<double> cdf_;
  std::optional<double> zeta_gamma_;
};

}  // namespace detail

/// n i.i.d. degrees; if the sum is odd the last degree is redrawn until it
/// is even.
inline std::vector<int> sample_degrees(const DegreeDistribution& d, std::size_t n, std::uint64_t seed) {
  const detail::DegreeSampler sampler(d);
  auto rng = SplitMix64::stream(seed, 0);
  std::vector<int> degrees(n);
  long long sum = 0;
  for (auto& k : degrees) sum += k = sampler(rng);
  while (n > 0 && sum % 2 != 0) {
    sum -= degrees.back();
    sum += degrees.back() = sampler(rng);
  }
  return degrees;
}

/// Draws degrees until the stub count reaches 2 * target_edges (parity fixed
/// on the last draw).
inline std::vector<int> sample_degrees_for_edges(const DegreeDistribution& d, std::size_t target_edges,
                                                 std::uint64_t seed) {
  const detail::DegreeSampler sampler(d);
  auto rng = SplitMix64::stream(seed, 0);
  std::vector<int> degrees;
  long long sum = 0;
  const auto target = static_cast<long long>(2 * target_edges);
  while (sum < target) {
    const int k = sampler(rng);
    degrees.push_back(k);
    sum += k;
  }
  while (!degrees.empty() && sum % 2 != 0) {
    sum -= degrees.back();
    sum += degrees.back() = sampler(rng);
  }
  return degrees;
}

}  // namespace netrel
