#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "netrel/error.hpp"
#include "netrel/graph.hpp"

namespace netrel {

inline constexpr std::size_t kDefaultEnumerationCap = 24;
inline constexpr std::size_t kMaxEnumerationCap = 62;

/// counts[i] = number of connected spanning subgraphs with |E| - i edges,
/// i.e. with exactly i failed edges.
struct FCoefficients {
  std::vector<std::uint64_t> counts;

  std::size_t edge_count() const noexcept { return counts.empty() ? 0 : counts.size() - 1; }
  std::uint64_t operator[](std::size_t i) const { return counts.at(i); }
};

inline double clamp_probability(double x) noexcept { return std::clamp(x, 0.0, 1.0); }

inline void check_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(what + " must lie in [0,1], got " + std::to_string(p));
}

inline void check_edge_probabilities(const Graph& g, std::span<const double> probs) {
  if (probs.size() != g.edge_count())
    throw std::invalid_argument("expected " + std::to_string(g.edge_count()) +
                                " edge probabilities, got " + std::to_string(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i)
    check_probability(probs[i], "probability of edge " + std::to_string(i));
}

namespace detail {

// Union-find over at most 64 nodes, cheap to copy.
struct SmallUnionFind {
  std::array<std::uint8_t, 64> parent{};
  int components = 0;

  explicit SmallUnionFind(std::size_t n) : components(static_cast<int>(n)) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint8_t>(i);
  }

  std::uint8_t find(std::uint8_t x) noexcept {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::uint8_t a, std::uint8_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[b] = a;
      --components;
    }
  }
};

inline void check_cap(const Graph& g, std::size_t cap) {
  if (cap > kMaxEnumerationCap)
    throw std::invalid_argument("enumeration cap " + std::to_string(cap) + " exceeds the maximum " +
                                std::to_string(kMaxEnumerationCap));
  if (g.edge_count() > cap) throw CapExceededError(g.edge_count(), cap);
}

// Calls visit(high, low) for every operational state, where the state's mask
// is (high << low_bits) | low. Edges 0..low_bits-1 form the inner block; the
// union-find for the outer block is built once per high mask and copied for
// each inner state. Visiting order is fixed: high ascending, then low.
template <class Visitor>
std::size_t visit_connected_states(const Graph& g, Visitor&& visit) {
  const std::size_t m = g.edge_count();
  const std::size_t n = g.node_count();
  const std::size_t low_bits = std::min<std::size_t>(m, 12);
  const std::size_t high_bits = m - low_bits;
  if (n <= 1) {
    for (std::uint64_t h = 0; h < (std::uint64_t{1} << high_bits); ++h)
      for (std::uint64_t l = 0; l < (std::uint64_t{1} << low_bits); ++l) visit(h, l);
    return low_bits;
  }
  // A spanning connected subgraph needs n-1 edges.
  if (n > m + 1) return low_bits;

  const auto& edges = g.edges();
  const auto need = static_cast<int>(n - 1);
  for (std::uint64_t h = 0; h < (std::uint64_t{1} << high_bits); ++h) {
    const int high_count = std::popcount(h);
    if (high_count + static_cast<int>(low_bits) < need) continue;
    SmallUnionFind outer(n);
    for (std::uint64_t bits = h; bits != 0; bits &= bits - 1) {
      const auto& e = edges[low_bits + static_cast<std::size_t>(std::countr_zero(bits))];
      outer.unite(static_cast<std::uint8_t>(e.u), static_cast<std::uint8_t>(e.v));
    }
    for (std::uint64_t l = 0; l < (std::uint64_t{1} << low_bits); ++l) {
      if (high_count + std::popcount(l) < need) continue;
      SmallUnionFind uf = outer;
      for (std::uint64_t bits = l; bits != 0 && uf.components > 1; bits &= bits - 1) {
        const auto& e = edges[static_cast<std::size_t>(std::countr_zero(bits))];
        uf.unite(static_cast<std::uint8_t>(e.u), static_cast<std::uint8_t>(e.v));
      }
      if (uf.components == 1) visit(h, l);
    }
  }
  return low_bits;
}

// Probability weight of every assignment of a block of edges.
inline std::vector<double> block_weights(std::span<const double> probs) {
  std::vector<double> w(std::size_t{1} << probs.size());
  for (std::size_t mask = 0; mask < w.size(); ++mask) {
    double prod = 1.0;
    for (std::size_t i = 0; i < probs.size(); ++i)
      prod *= ((mask >> i) & 1U) ? probs[i] : 1.0 - probs[i];
    w[mask] = prod;
  }
  return w;
}

}  // namespace detail

/// F-form coefficients by enumerating all 2^|E| edge subsets.
inline FCoefficients f_coefficients(const Graph& g, std::size_t cap = kDefaultEnumerationCap) {
  detail::check_cap(g, cap);
  const std::size_t m = g.edge_count();
  FCoefficients f;
  f.counts.assign(m + 1, 0);
  detail::visit_connected_states(g, [&](std::uint64_t h, std::uint64_t l) {
    const auto up = static_cast<std::size_t>(std::popcount(h) + std::popcount(l));
    ++f.counts[m - up];
  });
  return f;
}

/// Rel(G,p) = sum_i F_i (1-p)^i p^(|E|-i).
inline double reliability_homogeneous(const FCoefficients& f, double p) {
  check_probability(p, "edge probability");
  const std::size_t m = f.edge_count();
  double sum = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    if (f.counts[i] == 0) continue;
    sum += static_cast<double>(f.counts[i]) * std::pow(1.0 - p, static_cast<double>(i)) *
           std::pow(p, static_cast<double>(m - i));
  }
  return clamp_probability(sum);
}

/// Exact all-terminal reliability as the sum of state probabilities over all
/// connected operational states.
inline double reliability_heterogeneous(const Graph& g, std::span<const double> probs,
                                        std::size_t cap = kDefaultEnumerationCap) {
  check_edge_probabilities(g, probs);
  detail::check_cap(g, cap);
  const std::size_t low_bits = std::min<std::size_t>(g.edge_count(), 12);
  const auto low_w = detail::block_weights(probs.first(low_bits));
  const auto high_w = detail::block_weights(probs.subspan(low_bits));

  double total = 0.0;
  double block = 0.0;
  std::uint64_t current = 0;
  bool open = false;
  detail::visit_connected_states(g, [&](std::uint64_t h, std::uint64_t l) {
    if (!open || h != current) {
      if (open) total += high_w[current] * block;
      current = h;
      block = 0.0;
      open = true;
    }
    block += low_w[l];
  });
  if (open) total += high_w[current] * block;
  return clamp_probability(total);
}

namespace detail {

struct WeightedEdge {
  int u;
  int v;
  double p;
};

// Relabels nodes by the representatives of `uf`, dropping self-loops and
// merging parallel edges as independent alternatives.
inline std::vector<WeightedEdge> contract(std::size_t n, UnionFind& uf,
                                          const std::vector<WeightedEdge>& edges,
                                          std::size_t& new_n) {
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = uf.find(v);
    if (label[r] < 0) label[r] = next++;
  }
  new_n = static_cast<std::size_t>(next);
  std::map<std::pair<int, int>, double> fail;
  for (const auto& e : edges) {
    int a = label[uf.find(static_cast<std::size_t>(e.u))];
    int b = label[uf.find(static_cast<std::size_t>(e.v))];
    if (a == b || e.p <= 0.0) continue;
    if (a > b) std::swap(a, b);
    auto [it, inserted] = fail.emplace(std::make_pair(a, b), 1.0 - e.p);
    if (!inserted) it->second *= 1.0 - e.p;
  }
  std::vector<WeightedEdge> out;
  out.reserve(fail.size());
  for (const auto& [key, q] : fail) out.push_back({key.first, key.second, 1.0 - q});
  return out;
}

// Bridges of a simple graph, by DFS low-link.
inline std::vector<std::size_t> find_bridges(std::size_t n, const std::vector<WeightedEdge>& edges) {
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[static_cast<std::size_t>(edges[i].u)].push_back({edges[i].v, i});
    adj[static_cast<std::size_t>(edges[i].v)].push_back({edges[i].u, i});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::size_t> bridges;
  int timer = 0;
  struct Frame {
    int node;
    std::size_t parent_edge;
    std::size_t next;
  };
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{static_cast<int>(root), kNone, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto u = static_cast<std::size_t>(f.node);
      if (f.next < adj[u].size()) {
        const auto [w, idx] = adj[u][f.next++];
        if (idx == f.parent_edge) continue;
        const auto wi = static_cast<std::size_t>(w);
        if (disc[wi] < 0) {
          disc[wi] = low[wi] = timer++;
          stack.push_back({w, idx, 0});
        } else {
          low[u] = std::min(low[u], disc[wi]);
        }
      } else {
        const std::size_t via = f.parent_edge;
        stack.pop_back();
        if (!stack.empty()) {
          const auto p = static_cast<std::size_t>(stack.back().node);
          low[p] = std::min(low[p], low[u]);
          if (low[u] > disc[p]) bridges.push_back(via);
        }
      }
    }
  }
  return bridges;
}

inline double factor_reliability(std::size_t n, std::vector<WeightedEdge> edges) {
  double scale = 1.0;
  for (;;) {
    if (n <= 1) return scale;
    UnionFind uf(n);
    for (const auto& e : edges) uf.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
    if (uf.components() > 1) return 0.0;

    // Certain edges and bridges are contracted; bridges contribute a factor.
    UnionFind merge(n);
    bool changed = false;
    for (const auto& e : edges) {
      if (e.p >= 1.0) {
        merge.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
        changed = true;
      }
    }
    for (std::size_t idx : find_bridges(n, edges)) {
      const auto& e = edges[idx];
      if (e.p < 1.0) {
        scale *= e.p;
        merge.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
        changed = true;
      }
    }
    if (!changed) break;
    std::size_t next_n = 0;
    edges = contract(n, merge, edges, next_n);
    n = next_n;
  }

  // Every remaining edge lies on a cycle; pivot on the first one.
  const WeightedEdge pivot = edges.front();
  UnionFind merged(n);
  merged.unite(static_cast<std::size_t>(pivot.u), static_cast<std::size_t>(pivot.v));
  std::size_t contracted_n = 0;
  auto contracted = contract(n, merged, edges, contracted_n);

  std::vector<WeightedEdge> deleted(edges.begin() + 1, edges.end());
  return scale * (pivot.p * factor_reliability(contracted_n, std::move(contracted)) +
                  (1.0 - pivot.p) * factor_reliability(n, std::move(deleted)));
}

}  // namespace detail

/// Deletion-contraction: Rel(G) = p_e Rel(G/e) + (1-p_e) Rel(G-e), with
/// bridges and certain edges contracted up front and parallel edges merged.
inline double reliability_factoring(const Graph& g, std::span<const double> probs) {
  check_edge_probabilities(g, probs);
  std::vector<detail::WeightedEdge> edges;
  edges.reserve(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    edges.push_back({g.edge(i).u, g.edge(i).v, probs[i]});
  UnionFind identity(g.node_count());
  std::size_t n = 0;
  edges = detail::contract(g.node_count(), identity, edges, n);
  return clamp_probability(detail::factor_reliability(n, std::move(edges)));
}

}  // namespace netrel
