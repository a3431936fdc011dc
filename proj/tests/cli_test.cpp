#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "injpoint/cli.hpp"
#include "injpoint/report.hpp"

using namespace injpoint;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("injpoint_test_" + name)).string();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

SweepRecord record(std::size_t n, ClassifierSpec spec) {
  SweepRecord r;
  r.node_count = n;
  r.density = network_density(n, 50, 300);
  r.spec = spec;
  r.runs_used = 50;
  r.rejected_topologies = 3;
  r.mean_all_pair = 4.25;
  r.mean_candidates = 4.0;
  r.mean_discharged = 5.125;
  r.candidate_runs = r.discharged_runs = 50;
  r.mean_discharged_fraction = 0.2;
  return r;
}

}  // namespace

TEST(ParseArgs, Defaults) {
  auto o = parse_args({});
  EXPECT_EQ(o.config.node_counts.size(), 13u);
  EXPECT_EQ(o.config.node_counts.front(), 30u);
  EXPECT_EQ(o.config.node_counts.back(), 210u);
  EXPECT_EQ(o.config.runs_per_density, 50u);
  EXPECT_EQ(o.config.master_seed, 42u);
  EXPECT_EQ(o.config.area_side, 300.0);
  EXPECT_EQ(o.config.tx_range, 50.0);
  EXPECT_FALSE(o.output.plot_path);
}

TEST(ParseArgs, WeakSweep) {
  auto o = parse_args({"--nodes", "30:210:15", "--classifier", "weak", "--tc", "0.35", "--out", "w.csv"});
  EXPECT_EQ(o.config.node_counts.size(), 13u);
  ASSERT_EQ(o.config.specs.size(), 1u);
  EXPECT_EQ(o.config.specs[0], ClassifierSpec::weak(0.35));
  EXPECT_EQ(o.output.csv_path, "w.csv");
}

TEST(ParseArgs, AllGivesFullBattery) {
  auto o = parse_args({"--classifier", "all"});
  EXPECT_EQ(o.config.specs, default_battery());
  EXPECT_EQ(o.config.specs.size(), 7u);
}

TEST(ParseArgs, RepeatableThresholdsAndLists) {
  auto o = parse_args({"--classifier", "degree", "--k", "4", "--k", "6,8", "--nodes", "40,80,120",
                       "--plot", "p.svg", "--region-cut", "9.5", "--seed", "18446744073709551615"});
  ASSERT_EQ(o.config.specs.size(), 3u);
  EXPECT_EQ(o.config.specs[2], ClassifierSpec::degree(8));
  EXPECT_EQ(o.config.node_counts, (std::vector<std::size_t>{40, 80, 120}));
  EXPECT_EQ(*o.output.plot_path, "p.svg");
  EXPECT_EQ(o.config.region_cut, 9.5);
  EXPECT_EQ(o.config.master_seed, 18446744073709551615ULL);
}

TEST(ParseArgs, UsageErrorsNameTheFlag) {
  auto fails_with = [](std::vector<std::string> args, const std::string& flag) {
    try {
      parse_args(std::move(args));
    } catch (const UsageError& e) {
      EXPECT_NE(std::string(e.what()).find(flag), std::string::npos) << e.what();
      return;
    }
    ADD_FAILURE() << "expected UsageError for " << flag;
  };
  fails_with({"--tc", "1.5"}, "--tc");
  fails_with({"--k", "0"}, "--k");
  fails_with({"--runs", "abc"}, "--runs");
  fails_with({"--runs", "0"}, "--runs");
  fails_with({"--nodes", "30:20:5"}, "--nodes");
  fails_with({"--nodes", "60,45"}, "--nodes");
  fails_with({"--classifier", "bridge", "--tc", "0.3"}, "--tc");
  fails_with({"--classifier", "weak", "--k", "5"}, "--k");
  fails_with({"--classifier", "nope"}, "--classifier");
  fails_with({"--range", "-3"}, "--range");
  EXPECT_THROW(parse_args({"--bogus"}), UsageError);
  EXPECT_THROW(parse_args({"--help"}), HelpRequested);
}

TEST(EmitCsv, RowFormat) {
  auto r = record(30, ClassifierSpec::bridge());
  const auto text = csv_text({r});
  EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
  EXPECT_NE(text.find("\n2.6180,30,bridge,,50,3,4.2500,4.0000,5.1250,0.2000\n"), std::string::npos)
      << text;
  EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(EmitCsv, AbsentMetricIsEmptyField) {
  auto r = record(45, ClassifierSpec::weak(0.4));
  r.mean_candidates.reset();
  const auto text = csv_text({r});
  EXPECT_NE(text.find(",weak,0.4,50,3,4.2500,,5.1250,"), std::string::npos) << text;
}

TEST(EmitCsv, SortedByClassifierParamDensity) {
  std::vector<SweepRecord> recs{record(60, ClassifierSpec::weak(0.4)),
                                record(30, ClassifierSpec::weak(0.4)),
                                record(30, ClassifierSpec::weak(0.35)),
                                record(60, ClassifierSpec::bridge()),
                                record(30, ClassifierSpec::degree(7)),
                                record(30, ClassifierSpec::degree(5))};
  const auto back = parse_csv(csv_text(recs));
  ASSERT_EQ(back.size(), recs.size());
  std::vector<std::string> order;
  for (const auto& r : back) order.push_back(r.spec.label() + "@" + std::to_string(r.node_count));
  EXPECT_EQ(order, (std::vector<std::string>{"bridge@60", "degree(5)@30", "degree(7)@30",
                                             "weak(0.35)@30", "weak(0.4)@30", "weak(0.4)@60"}));
}

TEST(EmitCsv, RoundTripsSweepRecords) {
  SweepConfig cfg;
  cfg.node_counts = {90, 150};
  cfg.runs_per_density = 3;
  const auto recs = sweep(cfg);
  for (int precision : {4, 9}) {
    const auto back = parse_csv(csv_text(recs, precision));
    const auto sorted = sorted_records(recs);
    ASSERT_EQ(back.size(), sorted.size());
    const double tol = 0.5 * std::pow(10.0, -precision) + 1e-15;
    for (std::size_t i = 0; i < back.size(); ++i) {
      const auto &a = sorted[i], &b = back[i];
      EXPECT_EQ(a.spec, b.spec);
      EXPECT_EQ(a.node_count, b.node_count);
      EXPECT_EQ(a.runs_used, b.runs_used);
      EXPECT_EQ(a.rejected_topologies, b.rejected_topologies);
      EXPECT_NEAR(a.density, b.density, tol);
      EXPECT_NEAR(a.mean_all_pair, b.mean_all_pair, tol);
      EXPECT_NEAR(a.mean_discharged_fraction, b.mean_discharged_fraction, tol);
      ASSERT_EQ(a.mean_candidates.has_value(), b.mean_candidates.has_value());
      ASSERT_EQ(a.mean_discharged.has_value(), b.mean_discharged.has_value());
      if (a.mean_candidates) EXPECT_NEAR(*a.mean_candidates, *b.mean_candidates, tol);
      if (a.mean_discharged) EXPECT_NEAR(*a.mean_discharged, *b.mean_discharged, tol);
    }
  }
}

TEST(EmitCsv, FileOutputIsByteIdenticalAcrossSweeps) {
  SweepConfig cfg;
  cfg.node_counts = {75, 105};
  cfg.runs_per_density = 3;
  OutputSpec a{temp_path("a.csv"), std::nullopt, 4}, b{temp_path("b.csv"), std::nullopt, 4};
  emit_csv(sweep(cfg), a);
  emit_csv(sweep(cfg), b);
  EXPECT_EQ(slurp(a.csv_path), slurp(b.csv_path));
  EXPECT_FALSE(slurp(a.csv_path).empty());
}

TEST(EmitCsv, Errors) {
  EXPECT_THROW(emit_csv({}, OutputSpec{}), std::invalid_argument);
  OutputSpec bad{"/nonexistent-dir/x/y.csv", std::nullopt, 4};
  EXPECT_THROW(emit_csv({record(30, ClassifierSpec::bridge())}, bad), IoError);
}

TEST(EmitPlot, OneChartThreeLines) {
  std::vector<SweepRecord> recs;
  for (std::size_t n = 30; n <= 210; n += 15) recs.push_back(record(n, ClassifierSpec::degree(5)));
  const auto svg = plot_svg(recs);
  EXPECT_EQ(count(svg, "<polyline"), 3u);
  EXPECT_EQ(count(svg, "degree(5)</text>"), 1u);
  EXPECT_NE(svg.find("injection point candidates-to-all"), std::string::npos);
  EXPECT_NE(svg.find("discharged candidates-to-all"), std::string::npos);
  EXPECT_NE(svg.find("all-pair shortest path"), std::string::npos);
  EXPECT_EQ(plot_svg(recs), svg);
}

TEST(EmitPlot, MissingSeriesAndGaps) {
  std::vector<SweepRecord> recs;
  for (std::size_t n : {30u, 60u, 90u, 120u}) {
    auto r = record(n, ClassifierSpec::restrained_border());
    r.mean_discharged.reset();
    if (n == 60) r.mean_candidates.reset();
    recs.push_back(r);
  }
  const auto svg = plot_svg(recs);
  // all-pair: one line; candidates: split at the gap into two; discharged: none.
  EXPECT_EQ(count(svg, "<polyline"), 3u);
  EXPECT_NE(svg.find("discharged candidates-to-all (no data)"), std::string::npos);
}

TEST(EmitPlot, RequiresTwoDensities) {
  EXPECT_THROW(plot_svg({record(30, ClassifierSpec::bridge())}), std::invalid_argument);
}

TEST(EmitPlot, WritesFileOnlyWhenRequested) {
  std::vector<SweepRecord> recs{record(30, ClassifierSpec::bridge()), record(45, ClassifierSpec::bridge())};
  OutputSpec none{temp_path("x.csv"), std::nullopt, 4};
  EXPECT_NO_THROW(emit_plot(recs, none));
  OutputSpec with{temp_path("x.csv"), temp_path("p.svg"), 4};
  emit_plot(recs, with);
  EXPECT_EQ(slurp(*with.plot_path), plot_svg(recs));
}
