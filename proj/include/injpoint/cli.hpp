#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "injpoint/classifiers.hpp"
#include "injpoint/experiment.hpp"
#include "injpoint/report.hpp"

namespace injpoint {

/// Bad command line; the message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was requested; what() carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliOptions {
  SweepConfig config;
  OutputSpec output;
};

/// "start:end:step" (inclusive) or "a,b,c".
inline std::vector<std::size_t> parse_node_counts(const std::string& text) {
  auto to_count = [](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw UsageError("--nodes: not an integer: '" + s + "'");
    }
    if (pos != s.size() || v < 2) throw UsageError("--nodes: invalid node count '" + s + "'");
    return static_cast<std::size_t>(v);
  };

  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 3) throw UsageError("--nodes: expected start:end:step");
    const auto start = to_count(parts[0]), end = to_count(parts[1]);
    std::size_t step = 0;
    try {
      step = std::stoul(parts[2]);
    } catch (const std::exception&) {
      throw UsageError("--nodes: bad step '" + parts[2] + "'");
    }
    if (step == 0 || end < start) throw UsageError("--nodes: empty or unbounded range");
    for (auto n = start; n <= end; n += step) out.push_back(n);
  } else {
    for (const auto& p : detail::split(text, ',')) out.push_back(to_count(p));
  }
  if (!std::is_sorted(out.begin(), out.end()) ||
      std::adjacent_find(out.begin(), out.end()) != out.end())
    throw UsageError("--nodes: node counts must be strictly increasing");
  return out;
}

/// Builds the sweep and output configuration from arguments (program name
/// excluded). Throws UsageError or HelpRequested.
inline CliOptions parse_args(std::vector<std::string> args) {
  CliOptions opts;
  auto& cfg = opts.config;

  std::string nodes = "30:210:15";
  std::string classifier = "all";
  std::vector<double> tcs;
  std::vector<int> ks;
  std::size_t runs = cfg.runs_per_density;
  std::string out = opts.output.csv_path;
  std::string plot;

  CLI::App app{"Injection point candidate election: density sweep over geometric random graphs",
               "injpoint"};
  app.add_option("--nodes", nodes, "Node counts: start:end:step or comma list")
      ->capture_default_str();
  app.add_option("--area", cfg.area_side, "Side of the square deployment area")
      ->capture_default_str();
  app.add_option("--range", cfg.tx_range, "Transmission range")->capture_default_str();
  app.add_option("--runs", runs, "Connected topologies per node count")->capture_default_str();
  app.add_option("--seed", cfg.master_seed, "Master seed")->capture_default_str();
  app.add_option("--classifier", classifier, "bridge|weak|oborder|rborder|degree|all")
      ->capture_default_str()
      ->check(CLI::IsMember({"bridge", "weak", "oborder", "rborder", "degree", "all"}));
  app.add_option("--tc", tcs, "Clustering-coefficient threshold(s) for weak (default 0.35,0.4)")
      ->delimiter(',');
  app.add_option("--k", ks, "Degree threshold(s) for degree (default 5,7)")->delimiter(',');
  app.add_option("--out", out, "CSV output path")->capture_default_str();
  app.add_option("--plot", plot, "SVG chart output path");
  app.add_option("--region-cut", cfg.region_cut, "Density boundary between region 1 and 2")
      ->capture_default_str();
  app.add_option("--max-rejections", cfg.max_rejections,
                 "Partitioned topologies tolerated per node count")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = hardware)")->capture_default_str();
  app.add_option("--precision", opts.output.precision, "Decimal places in the CSV")
      ->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.node_counts = parse_node_counts(nodes);
  if (runs < 1) throw UsageError("--runs: must be >= 1");
  cfg.runs_per_density = runs;
  if (!(cfg.area_side > 0.0)) throw UsageError("--area: must be > 0");
  if (!(cfg.tx_range > 0.0)) throw UsageError("--range: must be > 0");
  if (opts.output.precision < 0 || opts.output.precision > 17)
    throw UsageError("--precision: must be in [0, 17]");

  const bool want_weak = classifier == "weak" || classifier == "all";
  const bool want_degree = classifier == "degree" || classifier == "all";
  if (!tcs.empty() && !want_weak)
    throw UsageError("--tc: only applies to --classifier weak or all");
  if (!ks.empty() && !want_degree)
    throw UsageError("--k: only applies to --classifier degree or all");
  if (tcs.empty()) tcs = {0.35, 0.4};
  if (ks.empty()) ks = {5, 7};
  for (double t : tcs)
    if (!(t > 0.0 && t < 1.0)) throw UsageError("--tc: threshold must lie in (0, 1)");
  for (int k : ks)
    if (k < 1) throw UsageError("--k: threshold must be >= 1");

  cfg.specs.clear();
  if (classifier == "bridge" || classifier == "all") cfg.specs.push_back(ClassifierSpec::bridge());
  if (want_weak)
    for (double t : tcs) cfg.specs.push_back(ClassifierSpec::weak(t));
  if (classifier == "oborder" || classifier == "all")
    cfg.specs.push_back(ClassifierSpec::obtrusive_border());
  if (classifier == "rborder" || classifier == "all")
    cfg.specs.push_back(ClassifierSpec::restrained_border());
  if (want_degree)
    for (int k : ks) cfg.specs.push_back(ClassifierSpec::degree(static_cast<std::size_t>(k)));

  opts.output.csv_path = out;
  if (!plot.empty()) opts.output.plot_path = plot;
  return opts;
}

}  // namespace injpoint
