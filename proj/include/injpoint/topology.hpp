#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "injpoint/random.hpp"

namespace injpoint {

using NodeId = std::size_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

/// The link predicate: distance(a, b) <= range, evaluated on squares.
inline bool within_range(Point a, Point b, double range) noexcept {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy <= range * range;
}

/// Deployment parameters of one network instance. Units are arbitrary but
/// shared between area_side and tx_range.
struct SimParams {
  std::size_t node_count = 2;
  double area_side = 300.0;
  double tx_range = 50.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (node_count < 2) throw std::invalid_argument("SimParams: node_count must be >= 2");
    if (!(area_side > 0.0)) throw std::invalid_argument("SimParams: area_side must be > 0");
    if (!(tx_range > 0.0)) throw std::invalid_argument("SimParams: tx_range must be > 0");
  }
};

/// Sum of unclipped coverage discs over the deployment area: n * pi * r^2 / a^2.
inline double network_density(std::size_t node_count, double tx_range, double area_side) noexcept {
  return static_cast<double>(node_count) * std::numbers::pi * tx_range * tx_range /
         (area_side * area_side);
}

inline double network_density(const SimParams& p) noexcept {
  return network_density(p.node_count, p.tx_range, p.area_side);
}

/// An immutable undirected simple graph, optionally embedded in the plane.
///
/// Adjacency lists are sorted ascending; the relation is symmetric and
/// irreflexive. Topologies built from explicit edge lists carry no positions.
class Topology {
 public:
  Topology() = default;

  /// Builds from an explicit edge list. Duplicate edges are merged.
  /// Throws std::invalid_argument on self-loops or out-of-range IDs.
  static Topology from_edges(std::size_t node_count,
                             const std::vector<std::pair<NodeId, NodeId>>& edges) {
    Topology t;
    t.params_.node_count = node_count;
    t.adjacency_.assign(node_count, {});
    for (auto [u, v] : edges) {
      if (u >= node_count || v >= node_count)
        throw std::invalid_argument("Topology: edge endpoint out of range");
      if (u == v) throw std::invalid_argument("Topology: self-loop");
      t.adjacency_[u].push_back(v);
      t.adjacency_[v].push_back(u);
    }
    for (auto& list : t.adjacency_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return t;
  }

  /// Unit-disk graph over fixed positions: u~v iff distance(u,v) <= tx_range.
  static Topology from_positions(std::vector<Point> positions, const SimParams& params) {
    Topology t;
    t.params_ = params;
    t.params_.node_count = positions.size();
    t.positions_ = std::move(positions);
    const std::size_t n = t.positions_.size();
    t.adjacency_.assign(n, {});
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (within_range(t.positions_[u], t.positions_[v], params.tx_range)) {
          t.adjacency_[u].push_back(v);
          t.adjacency_[v].push_back(u);
        }
      }
    }
    // Pairs are visited in increasing v for each u, so lists come out sorted.
    return t;
  }

  std::size_t size() const noexcept { return adjacency_.size(); }
  const SimParams& params() const noexcept { return params_; }
  const std::vector<Point>& positions() const noexcept { return positions_; }
  bool has_positions() const noexcept { return !positions_.empty(); }

  const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }

  bool adjacent(NodeId u, NodeId v) const {
    const auto& list = adjacency_.at(u);
    return std::binary_search(list.begin(), list.end(), v);
  }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& list : adjacency_) twice += list.size();
    return twice / 2;
  }

  std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < size(); ++u)
      for (NodeId v : adjacency_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// FNV-1a over the adjacency structure; equal graphs hash equal.
  std::uint64_t fingerprint() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffU;
        h *= 0x100000001b3ULL;
      }
    };
    feed(size());
    for (const auto& list : adjacency_) {
      feed(list.size());
      for (NodeId v : list) feed(v);
    }
    return h;
  }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.adjacency_ == b.adjacency_ && a.positions_ == b.positions_;
  }

 private:
  SimParams params_{};
  std::vector<Point> positions_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Uniform node placement over [0, area_side]^2. Node i consumes draws 2i
/// (x) and 2i+1 (y) of the generator seeded with params.seed.
inline std::vector<Point> deploy_uniform(const SimParams& params) {
  params.validate();
  UniformSource rng(params.seed);
  std::vector<Point> positions(params.node_count);
  for (auto& p : positions) {
    p.x = rng.next_in(0.0, params.area_side);
    p.y = rng.next_in(0.0, params.area_side);
  }
  return positions;
}

inline Topology generate_topology(const SimParams& params) {
  return Topology::from_positions(deploy_uniform(params), params);
}

/// Connectivity of the unit-disk graph over `positions` without building
/// adjacency lists. Agrees with is_connected(Topology::from_positions(...)).
inline bool positions_connected(const std::vector<Point>& positions, double tx_range) {
  const std::size_t n = positions.size();
  if (n <= 1) return true;
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (std::size_t u = 0; u < n; ++u) {
    bool linked = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || !within_range(positions[u], positions[v], tx_range)) continue;
      linked = true;
      if (v < u) continue;
      auto a = find(u), b = find(v);
      if (a != b) {
        parent[a] = b;
        if (--components == 1) return true;
      }
    }
    if (!linked) return false;  // isolated node
  }
  return components == 1;
}

/// True iff a traversal from node 0 reaches every node.
inline bool is_connected(const Topology& topo) {
  const std::size_t n = topo.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : topo.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

// Edge-list text format: first line the node count, then one "u v" per edge.

inline void write_edge_list(std::ostream& os, const Topology& topo) {
  os << topo.size() << '\n';
  for (auto [u, v] : topo.edges()) os << u << ' ' << v << '\n';
}

inline std::string to_edge_list(const Topology& topo) {
  std::ostringstream os;
  write_edge_list(os, topo);
  return os.str();
}

inline Topology read_edge_list(std::istream& is) {
  std::size_t n = 0;
  if (!(is >> n)) throw std::invalid_argument("edge list: missing node count");
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId u = 0, v = 0;
  while (is >> u) {
    if (!(is >> v)) throw std::invalid_argument("edge list: dangling endpoint");
    edges.emplace_back(u, v);
  }
  if (!is.eof()) throw std::invalid_argument("edge list: malformed entry");
  return Topology::from_edges(n, edges);
}

inline Topology from_edge_list(const std::string& text) {
  std::istringstream is(text);
  return read_edge_list(is);
}

}  // namespace injpoint
