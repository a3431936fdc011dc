#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "injpoint/topology.hpp"

namespace injpoint {

/// Everything a node may know about the network: its 1-hop set, the links
/// among those neighbors, and each neighbor's own 1-hop set.
///
/// All sets are sorted vectors. neighbor_edges holds pairs (u, w) with u < w.
struct EgoView {
  NodeId center = 0;
  std::vector<NodeId> neighbors;
  std::vector<std::pair<NodeId, NodeId>> neighbor_edges;
  std::map<NodeId, std::vector<NodeId>> neighbor_neighbors;

  std::size_t degree() const noexcept { return neighbors.size(); }

  bool is_neighbor(NodeId u) const {
    return std::binary_search(neighbors.begin(), neighbors.end(), u);
  }

  /// N(u) for a neighbor u of the center.
  const std::vector<NodeId>& neighbors_of(NodeId u) const { return neighbor_neighbors.at(u); }

  bool neighbor_adjacent(NodeId u, NodeId w) const {
    const auto& list = neighbors_of(u);
    return std::binary_search(list.begin(), list.end(), w);
  }

  friend bool operator==(const EgoView&, const EgoView&) = default;
};

inline EgoView ego_view(const Topology& topo, NodeId v) {
  if (v >= topo.size()) throw std::out_of_range("ego_view: invalid node id");
  EgoView view;
  view.center = v;
  view.neighbors = topo.neighbors(v);
  for (NodeId u : view.neighbors) {
    const auto& nu = topo.neighbors(u);
    view.neighbor_neighbors.emplace(u, nu);
    for (NodeId w : nu)
      if (u < w && view.is_neighbor(w)) view.neighbor_edges.emplace_back(u, w);
  }
  std::sort(view.neighbor_edges.begin(), view.neighbor_edges.end());
  return view;
}

/// Local clustering coefficient |E_N| / (k(k-1)/2); 0 when k <= 1.
inline double clustering_coefficient(const EgoView& view) {
  const std::size_t k = view.degree();
  if (k <= 1) return 0.0;
  const double possible = static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
  return static_cast<double>(view.neighbor_edges.size()) / possible;
}

}  // namespace injpoint
