#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "injpoint/classifiers.hpp"
#include "injpoint/topology.hpp"

namespace injpoint {

/// Raised when a hop metric is requested on a partitioned topology.
class DisconnectedTopology : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Average hop counts for one classified topology. The per-set values are
/// absent when the corresponding set is empty.
struct MetricTriple {
  double all_pair = 0.0;
  std::optional<double> candidates_to_all;
  std::optional<double> discharged_to_all;
  std::size_t candidate_count = 0;
  std::size_t discharged_count = 0;

  friend bool operator==(const MetricTriple&, const MetricTriple&) = default;
};

/// Unweighted BFS hop counts from source. Throws DisconnectedTopology if any
/// node is unreachable.
inline std::vector<std::size_t> hop_distances(const Topology& topo, NodeId source) {
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  const std::size_t n = topo.size();
  if (source >= n) throw std::out_of_range("hop_distances: invalid source");
  std::vector<std::size_t> dist(n, unreached);
  std::vector<NodeId> queue;
  queue.reserve(n);
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId w : topo.neighbors(u)) {
      if (dist[w] == unreached) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n) throw DisconnectedTopology("hop_distances: topology is partitioned");
  return dist;
}

/// Sum of hop distances from every node to all others, indexed by source.
inline std::vector<std::uint64_t> distance_sums(const Topology& topo) {
  std::vector<std::uint64_t> sums(topo.size(), 0);
  for (NodeId s = 0; s < topo.size(); ++s)
    for (auto d : hop_distances(topo, s)) sums[s] += d;
  return sums;
}

namespace detail {

inline double mean_from_sums(std::span<const std::uint64_t> sums, std::span<const NodeId> sources,
                             std::size_t n) {
  std::uint64_t total = 0;
  for (NodeId s : sources) total += sums[s];
  return static_cast<double>(total) /
         (static_cast<double>(sources.size()) * static_cast<double>(n - 1));
}

}  // namespace detail

/// Mean of d(i, j) over sources i and every j != i, normalized by
/// |sources| * (|N| - 1).
inline double set_to_all_avg(const Topology& topo, std::span<const NodeId> sources) {
  if (sources.empty()) throw std::invalid_argument("set_to_all_avg: empty source set");
  if (topo.size() < 2) throw std::invalid_argument("set_to_all_avg: need at least two nodes");
  std::vector<std::uint64_t> sums(topo.size(), 0);
  for (NodeId s : sources) {
    if (s >= topo.size()) throw std::out_of_range("set_to_all_avg: invalid source");
    for (auto d : hop_distances(topo, s)) sums[s] += d;
  }
  return detail::mean_from_sums(sums, sources, topo.size());
}

/// Mean shortest-path length over all ordered pairs i != j.
inline double all_pair_avg(const Topology& topo) {
  if (topo.size() < 2) throw std::invalid_argument("all_pair_avg: need at least two nodes");
  const auto sums = distance_sums(topo);
  std::vector<NodeId> all(topo.size());
  for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
  return detail::mean_from_sums(sums, all, topo.size());
}

/// All three averages given precomputed distance_sums() of the topology.
inline MetricTriple measure(std::span<const std::uint64_t> sums, const Classification& cls) {
  const std::size_t n = sums.size();
  if (n < 2) throw std::invalid_argument("measure: need at least two nodes");
  if (cls.candidates.size() + cls.discharged.size() != n)
    throw std::invalid_argument("measure: classification does not cover the topology");
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;

  MetricTriple m;
  m.all_pair = detail::mean_from_sums(sums, all, n);
  m.candidate_count = cls.candidates.size();
  m.discharged_count = cls.discharged.size();
  if (!cls.candidates.empty()) m.candidates_to_all = detail::mean_from_sums(sums, cls.candidates, n);
  if (!cls.discharged.empty()) m.discharged_to_all = detail::mean_from_sums(sums, cls.discharged, n);
  return m;
}

inline MetricTriple measure(const Topology& topo, const Classification& cls) {
  return measure(distance_sums(topo), cls);
}

}  // namespace injpoint
