#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "injpoint/classifiers.hpp"
#include "injpoint/metrics.hpp"
#include "injpoint/random.hpp"
#include "injpoint/topology.hpp"

namespace injpoint {

struct SweepConfig {
  std::vector<std::size_t> node_counts{30, 45, 60, 75, 90, 105, 120, 135, 150, 165, 180, 195, 210};
  double area_side = 300.0;
  double tx_range = 50.0;
  std::size_t runs_per_density = 50;
  std::uint64_t master_seed = 42;
  std::vector<ClassifierSpec> specs = default_battery();
  /// Cap on partitioned topologies discarded per node count. A connected
  /// 30-node instance at density 2.62 takes ~77k draws on average.
  std::size_t max_rejections = 20'000'000;
  /// Densities at or below this are tagged region 1, above it region 2.
  double region_cut = 7.2;
  /// Worker threads for per-run evaluation; 0 picks hardware concurrency.
  std::size_t threads = 0;

  void validate() const {
    if (runs_per_density < 1) throw std::invalid_argument("runs_per_density must be >= 1");
    if (node_counts.empty()) throw std::invalid_argument("node_counts must be non-empty");
    for (std::size_t i = 0; i < node_counts.size(); ++i) {
      if (node_counts[i] < 2) throw std::invalid_argument("node counts must be >= 2");
      if (i > 0 && node_counts[i] <= node_counts[i - 1])
        throw std::invalid_argument("node_counts must be strictly increasing");
    }
    if (!(area_side > 0.0)) throw std::invalid_argument("area_side must be > 0");
    if (!(tx_range > 0.0)) throw std::invalid_argument("tx_range must be > 0");
    if (specs.empty()) throw std::invalid_argument("at least one classifier spec is required");
  }
};

/// Aggregate over the connected runs of one (node count, spec) cell.
struct SweepRecord {
  double density = 0.0;
  std::size_t node_count = 0;
  ClassifierSpec spec;
  int region = 1;
  std::size_t runs_used = 0;
  std::size_t rejected_topologies = 0;
  double mean_all_pair = 0.0;
  std::optional<double> mean_candidates;
  std::optional<double> mean_discharged;
  std::size_t candidate_runs = 0;
  std::size_t discharged_runs = 0;
  double mean_discharged_fraction = 0.0;
  /// Set when max_rejections was exceeded before runs_per_density was reached.
  std::optional<std::string> error;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Classification and metrics for one spec on one topology.
struct SingleResult {
  MetricTriple metrics;
  Classification classification;
  std::uint64_t topology_fingerprint = 0;
};

inline SingleResult run_single(const Topology& topo, const ClassifierSpec& spec) {
  if (!is_connected(topo)) throw DisconnectedTopology("run_single: topology is partitioned");
  SingleResult r;
  r.classification = classify(topo, spec);
  r.metrics = measure(topo, r.classification);
  r.topology_fingerprint = topo.fingerprint();
  return r;
}

inline SingleResult run_single(const SimParams& params, const ClassifierSpec& spec) {
  return run_single(generate_topology(params), spec);
}

/// Seed for attempt `retry` of run `run` at the given node count.
inline std::uint64_t run_seed(std::uint64_t master, std::size_t node_count, std::size_t run,
                              std::size_t retry) {
  return derive_seed(master, {node_count, run, retry});
}

/// Connected topologies for one node count, in run order.
struct DensityDraw {
  std::vector<std::uint64_t> seeds;
  std::vector<Topology> topologies;
  std::size_t rejected = 0;
  bool exhausted = false;
};

/// Draws runs_per_density connected instances. Run r tries seeds
/// run_seed(master, n, r, 0), (..., 1), ... until one is connected. Gives up
/// once more than max_rejections partitioned instances were discarded.
inline DensityDraw draw_connected(const SweepConfig& cfg, std::size_t node_count) {
  DensityDraw draw;
  for (std::size_t run = 0; run < cfg.runs_per_density; ++run) {
    for (std::size_t retry = 0;; ++retry) {
      SimParams p{node_count, cfg.area_side, cfg.tx_range,
                  run_seed(cfg.master_seed, node_count, run, retry)};
      auto positions = deploy_uniform(p);
      if (positions_connected(positions, p.tx_range)) {
        draw.seeds.push_back(p.seed);
        draw.topologies.push_back(Topology::from_positions(std::move(positions), p));
        break;
      }
      if (++draw.rejected > cfg.max_rejections) {
        draw.exhausted = true;
        return draw;
      }
    }
  }
  return draw;
}

/// Every spec evaluated on every drawn topology: outer index run, inner spec.
inline std::vector<std::vector<SingleResult>> evaluate_runs(const std::vector<Topology>& topologies,
                                                            const std::vector<ClassifierSpec>& specs,
                                                            std::size_t threads) {
  std::vector<std::vector<SingleResult>> out(topologies.size());
  auto work = [&](std::size_t run) {
    const auto& topo = topologies[run];
    const auto sums = distance_sums(topo);
    const auto fp = topo.fingerprint();
    auto& slot = out[run];
    slot.reserve(specs.size());
    for (const auto& spec : specs) {
      SingleResult r;
      r.classification = classify(topo, spec);
      r.metrics = measure(sums, r.classification);
      r.topology_fingerprint = fp;
      slot.push_back(std::move(r));
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, topologies.size());
  if (threads <= 1) {
    for (std::size_t run = 0; run < topologies.size(); ++run) work(run);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t run = next++; run < topologies.size(); run = next++) work(run);
      });
  }
  return out;
}

inline SweepRecord aggregate(const SweepConfig& cfg, std::size_t node_count, std::size_t spec_index,
                             const DensityDraw& draw,
                             const std::vector<std::vector<SingleResult>>& results) {
  SweepRecord rec;
  rec.node_count = node_count;
  rec.density = network_density(node_count, cfg.tx_range, cfg.area_side);
  rec.region = rec.density <= cfg.region_cut ? 1 : 2;
  rec.spec = cfg.specs[spec_index];
  rec.runs_used = results.size();
  rec.rejected_topologies = draw.rejected;
  if (draw.exhausted)
    rec.error = "max_rejections exceeded after " + std::to_string(results.size()) + " of " +
                std::to_string(cfg.runs_per_density) + " runs";

  double all_pair = 0.0, cand = 0.0, disc = 0.0, frac = 0.0;
  for (const auto& run : results) {
    const auto& m = run[spec_index].metrics;
    all_pair += m.all_pair;
    frac += static_cast<double>(m.discharged_count) /
            static_cast<double>(m.candidate_count + m.discharged_count);
    if (m.candidates_to_all) {
      cand += *m.candidates_to_all;
      ++rec.candidate_runs;
    }
    if (m.discharged_to_all) {
      disc += *m.discharged_to_all;
      ++rec.discharged_runs;
    }
  }
  if (rec.runs_used > 0) {
    rec.mean_all_pair = all_pair / static_cast<double>(rec.runs_used);
    rec.mean_discharged_fraction = frac / static_cast<double>(rec.runs_used);
  }
  if (rec.candidate_runs > 0) rec.mean_candidates = cand / static_cast<double>(rec.candidate_runs);
  if (rec.discharged_runs > 0) rec.mean_discharged = disc / static_cast<double>(rec.discharged_runs);
  return rec;
}

/// Full protocol: for each node count, draw connected topologies, evaluate
/// every spec on the same instances, and aggregate. Records are ordered by
/// node count, then by spec position in the config.
inline std::vector<SweepRecord> sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<SweepRecord> records;
  records.reserve(cfg.node_counts.size() * cfg.specs.size());
  for (auto n : cfg.node_counts) {
    const auto draw = draw_connected(cfg, n);
    const auto results = evaluate_runs(draw.topologies, cfg.specs, cfg.threads);
    for (std::size_t s = 0; s < cfg.specs.size(); ++s)
      records.push_back(aggregate(cfg, n, s, draw, results));
  }
  return records;
}

}  // namespace injpoint
