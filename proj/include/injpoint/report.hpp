#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "injpoint/experiment.hpp"

namespace injpoint {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputSpec {
  std::string csv_path = "sweep.csv";
  std::optional<std::string> plot_path;
  int precision = 4;
};

inline constexpr const char* kCsvHeader =
    "density,node_count,classifier,param,runs_used,rejected,all_pair,candidates_to_all,"
    "discharged_to_all,discharged_fraction";

namespace detail {

inline std::string fixed(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

inline std::string fixed(const std::optional<double>& x, int precision) {
  return x ? fixed(*x, precision) : std::string{};
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline auto record_order(const SweepRecord& r) {
  return std::make_tuple(std::string(r.spec.name()), r.spec.param_value(), r.density);
}

}  // namespace detail

/// Records sorted by (classifier name, threshold, density).
inline std::vector<SweepRecord> sorted_records(std::vector<SweepRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return detail::record_order(a) < detail::record_order(b);
  });
  return records;
}

inline std::string csv_text(const std::vector<SweepRecord>& records, int precision = 4) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : sorted_records(records)) {
    const auto all_pair =
        r.runs_used > 0 ? std::optional<double>(r.mean_all_pair) : std::optional<double>{};
    out += detail::fixed(r.density, precision) + ',' + std::to_string(r.node_count) + ',' +
           std::string(r.spec.name()) + ',' + r.spec.param_text() + ',' +
           std::to_string(r.runs_used) + ',' + std::to_string(r.rejected_topologies) + ',' +
           detail::fixed(all_pair, precision) + ',' + detail::fixed(r.mean_candidates, precision) +
           ',' + detail::fixed(r.mean_discharged, precision) + ',' +
           detail::fixed(r.mean_discharged_fraction, precision) + '\n';
  }
  return out;
}

inline void emit_csv(const std::vector<SweepRecord>& records, const OutputSpec& spec) {
  if (records.empty()) throw std::invalid_argument("emit_csv: no records");
  std::ofstream os(spec.csv_path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + spec.csv_path + " for writing");
  os << csv_text(records, spec.precision);
  if (!os.flush()) throw IoError("write failed: " + spec.csv_path);
}

/// Reads CSV text produced by csv_text(). Only the columns present in the
/// file are populated; region, run counts per set and error stay default.
inline std::vector<SweepRecord> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader)
    throw std::invalid_argument("parse_csv: unexpected header");
  auto opt = [](const std::string& s) {
    return s.empty() ? std::optional<double>{} : std::optional<double>(std::stod(s));
  };
  std::vector<SweepRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = detail::split(line, ',');
    if (f.size() != 10) throw std::invalid_argument("parse_csv: expected 10 fields: " + line);
    SweepRecord r;
    r.density = std::stod(f[0]);
    r.node_count = std::stoul(f[1]);
    const auto kind = parse_kind(f[2]);
    if (kind == ClassifierKind::Weak)
      r.spec = ClassifierSpec::weak(std::stod(f[3]));
    else if (kind == ClassifierKind::Degree)
      r.spec = ClassifierSpec::degree(std::stoul(f[3]));
    else
      r.spec = ClassifierSpec{kind, 0.0, 0};
    r.runs_used = std::stoul(f[4]);
    r.rejected_topologies = std::stoul(f[5]);
    r.mean_all_pair = opt(f[6]).value_or(0.0);
    r.mean_candidates = opt(f[7]);
    r.mean_discharged = opt(f[8]);
    r.mean_discharged_fraction = std::stod(f[9]);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG line charts, one panel per (classifier, threshold).

namespace detail {

struct Series {
  const char* name;
  const char* color;
  std::vector<std::optional<double>> values;
};

inline std::string num(double x) { return fixed(x, 2); }

inline double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

}  // namespace detail

inline std::string plot_svg(const std::vector<SweepRecord>& records) {
  std::map<std::tuple<std::string, double>, std::vector<SweepRecord>> panels;
  for (const auto& r : sorted_records(records))
    panels[{std::string(r.spec.name()), r.spec.param_value()}].push_back(r);

  for (const auto& [key, rows] : panels) {
    std::vector<double> ds;
    for (const auto& r : rows) ds.push_back(r.density);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    if (ds.size() < 2)
      throw std::invalid_argument("emit_plot: need records for at least two densities (" +
                                  rows.front().spec.label() + ")");
  }

  constexpr double W = 640, H = 400, L = 70, R = 200, T = 40, B = 50;
  const double total_h = H * static_cast<double>(panels.size());
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::num(W) << "\" height=\""
     << detail::num(total_h) << "\" viewBox=\"0 0 " << detail::num(W) << ' '
     << detail::num(total_h) << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  double y0 = 0.0;
  for (const auto& [key, rows] : panels) {
    std::vector<detail::Series> series{
        {"all-pair shortest path", "#000000", {}},
        {"injection point candidates-to-all", "#1f77b4", {}},
        {"discharged candidates-to-all", "#d62728", {}},
    };
    for (const auto& r : rows) {
      series[0].values.push_back(r.runs_used > 0 ? std::optional<double>(r.mean_all_pair)
                                                 : std::optional<double>{});
      series[1].values.push_back(r.mean_candidates);
      series[2].values.push_back(r.mean_discharged);
    }

    double xmin = rows.front().density, xmax = rows.back().density;
    double ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
      for (const auto& v : s.values)
        if (v) {
          ymin = std::min(ymin, *v);
          ymax = std::max(ymax, *v);
        }
    if (ymin > ymax) ymin = 0.0, ymax = 1.0;
    if (ymax - ymin < 1e-9) ymin -= 0.5, ymax += 0.5;
    const double ystep = detail::nice_step(ymax - ymin);
    ymin = std::floor(ymin / ystep) * ystep;
    ymax = std::ceil(ymax / ystep) * ystep;

    const double px0 = L, px1 = W - R, py0 = y0 + H - B, py1 = y0 + T;
    auto sx = [&](double x) { return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0); };
    auto sy = [&](double y) { return py0 - (y - ymin) / (ymax - ymin) * (py0 - py1); };

    os << "<g>\n<text x=\"" << detail::num(px0) << "\" y=\"" << detail::num(y0 + 22)
       << "\" font-size=\"15\">" << rows.front().spec.label() << "</text>\n";
    os << "<rect x=\"" << detail::num(px0) << "\" y=\"" << detail::num(py1) << "\" width=\""
       << detail::num(px1 - px0) << "\" height=\"" << detail::num(py0 - py1)
       << "\" fill=\"none\" stroke=\"#888888\"/>\n";
    for (double y = ymin; y <= ymax + ystep * 1e-6; y += ystep)
      os << "<text x=\"" << detail::num(px0 - 6) << "\" y=\"" << detail::num(sy(y) + 4)
         << "\" text-anchor=\"end\">" << detail::num(y) << "</text>\n";
    for (const auto& r : rows)
      os << "<text x=\"" << detail::num(sx(r.density)) << "\" y=\"" << detail::num(py0 + 16)
         << "\" text-anchor=\"middle\" font-size=\"10\">" << detail::num(r.density)
         << "</text>\n";
    os << "<text x=\"" << detail::num((px0 + px1) / 2) << "\" y=\"" << detail::num(py0 + 36)
       << "\" text-anchor=\"middle\">network density</text>\n"
       << "<text x=\"" << detail::num(18) << "\" y=\"" << detail::num((py0 + py1) / 2)
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << detail::num((py0 + py1) / 2)
       << ")\">average hops</text>\n";

    double ly = py1 + 10;
    for (const auto& s : series) {
      const bool any = std::any_of(s.values.begin(), s.values.end(),
                                   [](const auto& v) { return v.has_value(); });
      // Absent values split the line into separate polylines.
      std::vector<std::string> segments;
      std::string cur;
      std::size_t cur_pts = 0;
      auto flush = [&] {
        if (cur_pts > 0) segments.push_back(cur);
        cur.clear();
        cur_pts = 0;
      };
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!s.values[i]) {
          flush();
          continue;
        }
        if (cur_pts > 0) cur += ' ';
        cur += detail::num(sx(rows[i].density)) + ',' + detail::num(sy(*s.values[i]));
        ++cur_pts;
      }
      flush();
      for (const auto& seg : segments)
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\""
           << seg << "\"/>\n";

      os << "<line x1=\"" << detail::num(px1 + 12) << "\" y1=\"" << detail::num(ly) << "\" x2=\""
         << detail::num(px1 + 32) << "\" y2=\"" << detail::num(ly) << "\" stroke=\"" << s.color
         << "\" stroke-width=\"1.5\"/>\n<text x=\"" << detail::num(px1 + 36) << "\" y=\""
         << detail::num(ly + 4) << "\" font-size=\"10\">" << s.name
         << (any ? "" : " (no data)") << "</text>\n";
      ly += 18;
    }
    os << "</g>\n";
    y0 += H;
  }
  os << "</svg>\n";
  return os.str();
}

inline void emit_plot(const std::vector<SweepRecord>& records, const OutputSpec& spec) {
  if (!spec.plot_path) return;
  const auto svg = plot_svg(records);
  std::ofstream os(*spec.plot_path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + *spec.plot_path + " for writing");
  os << svg;
  if (!os.flush()) throw IoError("write failed: " + *spec.plot_path);
}

}  // namespace injpoint
