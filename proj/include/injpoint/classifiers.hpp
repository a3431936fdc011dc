#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "injpoint/localview.hpp"
#include "injpoint/topology.hpp"

namespace injpoint {

enum class ClassifierKind { Bridge, Weak, ObtrusiveBorder, RestrainedBorder, Degree };

inline std::string_view kind_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::Bridge: return "bridge";
    case ClassifierKind::Weak: return "weak";
    case ClassifierKind::ObtrusiveBorder: return "oborder";
    case ClassifierKind::RestrainedBorder: return "rborder";
    case ClassifierKind::Degree: return "degree";
  }
  return "?";
}

inline ClassifierKind parse_kind(std::string_view name) {
  for (auto k : {ClassifierKind::Bridge, ClassifierKind::Weak, ClassifierKind::ObtrusiveBorder,
                 ClassifierKind::RestrainedBorder, ClassifierKind::Degree})
    if (kind_name(k) == name) return k;
  throw std::invalid_argument("unknown classifier: " + std::string(name));
}

/// A heuristic plus its threshold. Only the threshold matching `kind` is
/// meaningful; build through the named constructors to get validation.
struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::Bridge;
  double cc_threshold = 0.0;
  std::size_t degree_threshold = 0;

  static ClassifierSpec bridge() { return {ClassifierKind::Bridge, 0.0, 0}; }
  static ClassifierSpec obtrusive_border() { return {ClassifierKind::ObtrusiveBorder, 0.0, 0}; }
  static ClassifierSpec restrained_border() { return {ClassifierKind::RestrainedBorder, 0.0, 0}; }

  static ClassifierSpec weak(double t_c) {
    if (!(t_c > 0.0 && t_c < 1.0))
      throw std::invalid_argument("weak threshold must lie in (0, 1)");
    return {ClassifierKind::Weak, t_c, 0};
  }

  static ClassifierSpec degree(std::size_t k) {
    if (k < 1) throw std::invalid_argument("degree threshold must be >= 1");
    return {ClassifierKind::Degree, 0.0, k};
  }

  std::string_view name() const { return kind_name(kind); }

  bool has_param() const { return kind == ClassifierKind::Weak || kind == ClassifierKind::Degree; }

  /// Numeric sort key for the threshold; 0 for parameterless kinds.
  double param_value() const {
    if (kind == ClassifierKind::Weak) return cc_threshold;
    if (kind == ClassifierKind::Degree) return static_cast<double>(degree_threshold);
    return 0.0;
  }

  /// Shortest text that identifies the threshold ("0.35", "5"), or "".
  std::string param_text() const {
    if (!has_param()) return {};
    std::ostringstream os;
    if (kind == ClassifierKind::Weak)
      os << cc_threshold;
    else
      os << degree_threshold;
    return os.str();
  }

  std::string label() const {
    auto p = param_text();
    return p.empty() ? std::string(name()) : std::string(name()) + "(" + p + ")";
  }

  friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;
};

/// Full battery: bridge, weak 0.35/0.4, both border variants, degree 5/7.
inline std::vector<ClassifierSpec> default_battery() {
  return {ClassifierSpec::bridge(),           ClassifierSpec::weak(0.35),
          ClassifierSpec::weak(0.4),          ClassifierSpec::obtrusive_border(),
          ClassifierSpec::restrained_border(), ClassifierSpec::degree(5),
          ClassifierSpec::degree(7)};
}

/// Candidates I and discharged DC, both sorted, together covering all nodes.
struct Classification {
  std::vector<NodeId> candidates;
  std::vector<NodeId> discharged;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// The neighbors of the center split into more than one group once the
/// center is removed.
inline bool is_bridge(const EgoView& view) {
  const std::size_t k = view.degree();
  if (k <= 1) return false;

  // Union-find over local indices of N(v).
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index_of = [&view](NodeId u) {
    return static_cast<std::size_t>(
        std::lower_bound(view.neighbors.begin(), view.neighbors.end(), u) -
        view.neighbors.begin());
  };
  std::size_t components = k;
  for (auto [u, w] : view.neighbor_edges) {
    auto a = find(index_of(u));
    auto b = find(index_of(w));
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components > 1;
}

inline bool is_weak(const EgoView& view, double t_c) {
  return view.degree() < 3 || clustering_coefficient(view) < t_c;
}

inline bool is_low_degree(const EgoView& view, std::size_t k) { return view.degree() < k; }

/// Tally of spanning pairs {a, b} ⊆ N(v) that have a reference node r
/// (common neighbor of a and b, outside N(v) and distinct from v), and how
/// many of those pairs cover N(v) \ {a, b} with N(a) ∪ N(b).
///
/// Coverage does not depend on which r witnesses the pair, so counting pairs
/// is equivalent to counting (a, b, r) triples for the all/any quantifiers.
struct BorderTally {
  std::size_t valid_pairs = 0;
  std::size_t covering_pairs = 0;
};

inline BorderTally border_tally(const EgoView& view) {
  BorderTally tally;
  const auto& nv = view.neighbors;
  const std::size_t k = nv.size();
  std::vector<NodeId> common;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& na = view.neighbors_of(nv[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto& nb = view.neighbors_of(nv[j]);
      common.clear();
      std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                            std::back_inserter(common));
      const bool has_reference = std::any_of(common.begin(), common.end(), [&](NodeId r) {
        return r != view.center && !view.is_neighbor(r);
      });
      if (!has_reference) continue;
      ++tally.valid_pairs;

      bool covers = true;
      for (std::size_t m = 0; m < k && covers; ++m) {
        if (m == i || m == j) continue;
        const NodeId u = nv[m];
        covers = std::binary_search(na.begin(), na.end(), u) ||
                 std::binary_search(nb.begin(), nb.end(), u);
      }
      if (covers) ++tally.covering_pairs;
    }
  }
  return tally;
}

/// Some valid (a, b, r) triple covers the neighborhood.
inline bool is_obtrusive_border(const EgoView& view) {
  return border_tally(view).covering_pairs > 0;
}

/// At least one valid triple exists and every valid triple covers.
inline bool is_restrained_border(const EgoView& view) {
  const auto t = border_tally(view);
  return t.valid_pairs > 0 && t.covering_pairs == t.valid_pairs;
}

/// True when the heuristic discharges the center node.
inline bool discharges(const ClassifierSpec& spec, const EgoView& view) {
  switch (spec.kind) {
    case ClassifierKind::Bridge: return is_bridge(view);
    case ClassifierKind::Weak: return is_weak(view, spec.cc_threshold);
    case ClassifierKind::ObtrusiveBorder: return is_obtrusive_border(view);
    case ClassifierKind::RestrainedBorder: return is_restrained_border(view);
    case ClassifierKind::Degree: return is_low_degree(view, spec.degree_threshold);
  }
  return false;
}

inline Classification classify(const Topology& topo, const ClassifierSpec& spec) {
  Classification out;
  for (NodeId v = 0; v < topo.size(); ++v) {
    if (discharges(spec, ego_view(topo, v)))
      out.discharged.push_back(v);
    else
      out.candidates.push_back(v);
  }
  return out;
}

}  // namespace injpoint
