#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netrel {

using NodeId = int;

struct Edge {
  NodeId u;
  NodeId v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Disjoint-set forest with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    size_.assign(n, 1);
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    components_ = n;
  }

  std::size_t find(std::size_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true when the two elements were in different sets.
  bool unite(std::size_t a, std::size_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  std::size_t component_size(std::size_t x) noexcept { return size_[find(x)]; }
  std::size_t components() const noexcept { return components_; }
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_ = 0;
};

/// Membership flags over the edge indices of a graph: the set of operational
/// edges in one network state.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  explicit EdgeSubset(std::size_t edge_count, bool value = false)
      : flags_(edge_count, value) {}
  explicit EdgeSubset(std::vector<bool> flags) : flags_(std::move(flags)) {}

  static EdgeSubset all(std::size_t edge_count) { return EdgeSubset(edge_count, true); }
  static EdgeSubset none(std::size_t edge_count) { return EdgeSubset(edge_count, false); }

  static EdgeSubset from_mask(std::size_t edge_count, std::uint64_t mask) {
    EdgeSubset s(edge_count);
    for (std::size_t i = 0; i < edge_count && i < 64; ++i) s.flags_[i] = (mask >> i) & 1U;
    return s;
  }

  std::size_t size() const noexcept { return flags_.size(); }
  bool contains(std::size_t edge) const { return flags_.at(edge); }
  void set(std::size_t edge, bool value = true) { flags_.at(edge) = value; }
  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), true));
  }

  friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;

 private:
  std::vector<bool> flags_;
};

/// Simple undirected graph on nodes 0..n-1 with stable edge indices.
/// Self-loops, duplicate pairs and out-of-range endpoints are rejected.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t node_count, std::vector<Edge> edges)
      : node_count_(node_count), edges_(std::move(edges)) {
    std::set<std::pair<NodeId, NodeId>> seen;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto [u, v] = edges_[i];
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= node_count_ ||
          static_cast<std::size_t>(v) >= node_count_) {
        throw std::invalid_argument("edge " + std::to_string(i) + " (" + std::to_string(u) +
                                    "," + std::to_string(v) + ") has an endpoint outside 0.." +
                                    std::to_string(node_count_) + "-1");
      }
      if (u == v) {
        throw std::invalid_argument("edge " + std::to_string(i) + " is a self-loop on node " +
                                    std::to_string(u));
      }
      if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
        throw std::invalid_argument("edge " + std::to_string(i) + " duplicates pair (" +
                                    std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }
  }

  static Graph complete(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    return Graph(n, std::move(edges));
  }

  static Graph path(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u + 1 < n; ++u)
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(u + 1)});
    return Graph(n, std::move(edges));
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
};

inline std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> degrees(g.node_count(), 0);
  for (const auto& [u, v] : g.edges()) {
    ++degrees[static_cast<std::size_t>(u)];
    ++degrees[static_cast<std::size_t>(v)];
  }
  return degrees;
}

namespace detail {

inline void check_subset(const Graph& g, const EdgeSubset& s) {
  if (s.size() != g.edge_count()) {
    throw std::invalid_argument("edge subset has length " + std::to_string(s.size()) +
                                " but the graph has " + std::to_string(g.edge_count()) +
                                " edges");
  }
}

inline UnionFind components_of(const Graph& g, const EdgeSubset& s) {
  check_subset(g, s);
  UnionFind uf(g.node_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (s.contains(i)) {
      const auto& e = g.edge(i);
      uf.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
    }
  }
  return uf;
}

}  // namespace detail

/// True iff the operational edges in `s` connect all nodes. Graphs with at
/// most one node are connected.
inline bool is_connected(const Graph& g, const EdgeSubset& s) {
  const UnionFind uf = detail::components_of(g, s);
  return uf.components() <= 1;
}

inline bool is_connected(const Graph& g) { return is_connected(g, EdgeSubset::all(g.edge_count())); }

/// Component sizes of the subgraph (V, s), largest first.
inline std::vector<std::size_t> component_sizes(const Graph& g, const EdgeSubset& s) {
  UnionFind uf = detail::components_of(g, s);
  std::vector<std::size_t> sizes;
  sizes.reserve(uf.components());
  for (std::size_t v = 0; v < g.node_count(); ++v)
    if (uf.find(v) == v) sizes.push_back(uf.component_size(v));
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

}  // namespace netrel
