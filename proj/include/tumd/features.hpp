#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tumd/error.hpp"
#include "tumd/format.hpp"
#include "tumd/kinematics.hpp"
#include "tumd/parallel.hpp"
#include "tumd/stats.hpp"
#include "tumd/trajectory.hpp"

namespace tumd {

inline constexpr std::size_t kSignatureCount = 5;
inline constexpr std::size_t kCurvatureCount = kSignatureCount * (kSignatureCount + 1) / 2;  // 15
inline constexpr std::size_t kFeatureCount = kCurvatureCount + 3 * kSummarySize;          // 72

// Block offsets inside a feature vector.
inline constexpr std::size_t kCurvatureOffset = 0;
inline constexpr std::size_t kIndentationOffset = kCurvatureOffset + kCurvatureCount;
inline constexpr std::size_t kSpeedOffset = kIndentationOffset + kSummarySize;
inline constexpr std::size_t kAccelerationOffset = kSpeedOffset + kSummarySize;

// Fixed ordering of the 72 movement variables: dg_s{k}_{j}, then ind_*,
// spd_*, acc_* summaries.
class VariableRegistry {
 public:
  static const VariableRegistry& instance() {
    static const VariableRegistry registry;
    return registry;
  }

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }

  std::size_t index_of(std::string_view name) const {
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) throw Error("unknown_variable", "no movement variable named '" + std::string(name) + "'");
    return it->second;
  }

  bool contains(std::string_view name) const { return index_.count(std::string(name)) > 0; }

 private:
  VariableRegistry() {
    for (std::size_t k = 1; k <= kSignatureCount; ++k)
      for (std::size_t j = 1; j <= k; ++j) names_.push_back("dg_s" + std::to_string(k) + "_" + std::to_string(j));
    for (const char* prefix : {"ind", "spd", "acc"})
      for (auto suffix : kSummarySuffixes) names_.push_back(std::string(prefix) + "_" + std::string(suffix));
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct FeatureVector {
  std::string trajectory_id;
  std::array<double, kFeatureCount> values{};
};

// Straightness ratios over k equal-arc-length sub-segments for k = 1..5,
// flattened as (1,1), (2,1), (2,2), (3,1), ... Each value is endpoint
// distance over sub-segment arc length, clamped to [0, 1].
inline std::array<double, kCurvatureCount> distance_geometry_signatures(const Trajectory& traj) {
  std::array<double, kCurvatureCount> out;
  out.fill(1.0);
  const auto& f = traj.fixes;
  if (f.size() < 2) return out;

  std::vector<double> cumulative(f.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); ++i)
    cumulative[i] = cumulative[i - 1] + ground_distance(f[i - 1], f[i], traj.mode);
  const double total = cumulative.back();
  if (total <= 1e-9) return out;

  auto point_at = [&](double s) -> Fix {
    if (s <= 0.0) return f.front();
    if (s >= total) return f.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
    const auto hi = static_cast<std::size_t>(it - cumulative.begin());
    const auto lo = hi - 1;
    const double seg = cumulative[hi] - cumulative[lo];
    const double w = seg > 0.0 ? (s - cumulative[lo]) / seg : 0.0;
    if (traj.mode == CoordinateMode::planar)
      return Fix{0.0, f[lo].x + w * (f[hi].x - f[lo].x), f[lo].y + w * (f[hi].y - f[lo].y)};
    Fix p{0.0, f[lo].x + w * detail::wrap_lon_delta(f[hi].x - f[lo].x), f[lo].y + w * (f[hi].y - f[lo].y)};
    if (p.x > 180.0) p.x -= 360.0;
    if (p.x < -180.0) p.x += 360.0;
    return p;
  };

  std::size_t slot = 0;
  for (std::size_t k = 1; k <= kSignatureCount; ++k) {
    const double piece = total / static_cast<double>(k);
    for (std::size_t j = 0; j < k; ++j) {
      const Fix a = j == 0 ? f.front() : point_at(piece * static_cast<double>(j));
      const Fix b = j + 1 == k ? f.back() : point_at(piece * static_cast<double>(j + 1));
      out[slot++] = std::clamp(ground_distance(a, b, traj.mode) / piece, 0.0, 1.0);
    }
  }
  return out;
}

inline FeatureVector build_feature_vector(const Trajectory& traj) {
  FeatureVector fv;
  fv.trajectory_id = traj.id;
  const auto dg = distance_geometry_signatures(traj);
  std::copy(dg.begin(), dg.end(), fv.values.begin() + kCurvatureOffset);

  const auto put = [&](std::size_t offset, const ParameterSeries& series) {
    const auto summary = summarize_distribution(series.values);
    std::copy(summary.begin(), summary.end(), fv.values.begin() + static_cast<std::ptrdiff_t>(offset));
  };
  put(kIndentationOffset, turning_angle_series(traj));
  put(kSpeedOffset, speed_series(traj));
  put(kAccelerationOffset, acceleration_series(traj));
  return fv;
}

inline std::vector<FeatureVector> build_feature_vectors(const std::vector<Trajectory>& trajectories,
                                                        Parallelism par = {}) {
  std::vector<FeatureVector> out(trajectories.size());
  parallel_for(trajectories.size(), par, [&](std::size_t i, std::size_t) { out[i] = build_feature_vector(trajectories[i]); });
  return out;
}

// ---------------------------------------------------------------------------
// Taxonomy

struct TaxonomyNode {
  std::string name;
  std::string parent;  // empty for the root
  std::vector<std::string> children;
  std::vector<std::size_t> indices;  // ascending

  bool is_leaf() const { return children.empty(); }
};

// Tree of named variable groups. Leaves own disjoint index sets; internal
// nodes carry the union of their children.
class Taxonomy {
 public:
  Taxonomy() = default;

  // `structure` maps each internal node to its children; `leaves` maps each
  // leaf to its variable indices. Root is the single node with no parent.
  Taxonomy(const std::vector<std::pair<std::string, std::vector<std::string>>>& structure,
           const std::map<std::string, std::vector<std::size_t>>& leaves) {
    std::set<std::string> child_names;
    for (const auto& [parent, kids] : structure) {
      add_node(parent);
      for (const auto& kid : kids) {
        add_node(kid);
        nodes_[position_.at(kid)].parent = parent;
        nodes_[position_.at(parent)].children.push_back(kid);
        child_names.insert(kid);
      }
    }
    for (const auto& [leaf, idx] : leaves) {
      add_node(leaf);
      auto& node = nodes_[position_.at(leaf)];
      if (!node.children.empty()) throw Error("bad_taxonomy", "node '" + leaf + "' is internal but given variables");
      node.indices = idx;
      std::sort(node.indices.begin(), node.indices.end());
    }
    for (const auto& node : nodes_)
      if (!child_names.count(node.name)) {
        if (!root_.empty()) throw Error("bad_taxonomy", "taxonomy has more than one root");
        root_ = node.name;
      }
    if (root_.empty()) throw Error("bad_taxonomy", "taxonomy has no root");
    fill_union(root_);
    validate();
  }

  const std::string& root() const { return root_; }
  const std::vector<TaxonomyNode>& nodes() const { return nodes_; }
  bool contains(std::string_view name) const { return position_.count(std::string(name)) > 0; }

  const TaxonomyNode& node(std::string_view name) const {
    const auto it = position_.find(std::string(name));
    if (it == position_.end()) throw Error("unknown_node", "taxonomy has no node '" + std::string(name) + "'");
    return nodes_[it->second];
  }

  std::vector<std::string> leaves() const {
    std::vector<std::string> out;
    for (const auto& n : nodes_)
      if (n.is_leaf()) out.push_back(n.name);
    return out;
  }

  // Replaces leaf variable sets by variable name; unions are recomputed.
  Taxonomy with_leaf_overrides(const std::map<std::string, std::vector<std::string>>& overrides) const {
    Taxonomy copy = *this;
    const auto& reg = VariableRegistry::instance();
    for (const auto& [leaf, names] : overrides) {
      const auto it = copy.position_.find(leaf);
      if (it == copy.position_.end()) throw Error("unknown_node", "taxonomy has no node '" + leaf + "'");
      auto& node = copy.nodes_[it->second];
      if (!node.is_leaf()) throw Error("bad_taxonomy", "only leaf nodes can be overridden, '" + leaf + "' is internal");
      node.indices.clear();
      for (const auto& n : names) node.indices.push_back(reg.index_of(n));
      std::sort(node.indices.begin(), node.indices.end());
    }
    copy.fill_union(copy.root_);
    copy.validate();
    return copy;
  }

 private:
  void add_node(const std::string& name) {
    if (position_.count(name)) return;
    position_.emplace(name, nodes_.size());
    nodes_.push_back(TaxonomyNode{name, "", {}, {}});
  }

  const std::vector<std::size_t>& fill_union(const std::string& name) {
    auto pos = position_.at(name);
    if (!nodes_[pos].is_leaf()) {
      std::vector<std::size_t> merged;
      const auto kids = nodes_[pos].children;
      for (const auto& kid : kids) {
        const auto& sub = fill_union(kid);
        merged.insert(merged.end(), sub.begin(), sub.end());
      }
      std::sort(merged.begin(), merged.end());
      nodes_[pos].indices = std::move(merged);
    }
    return nodes_[pos].indices;
  }

  void validate() const {
    std::set<std::size_t> seen;
    for (const auto& n : nodes_) {
      if (n.indices.empty()) throw Error("bad_taxonomy", "node '" + n.name + "' has no movement variables");
      for (auto i : n.indices)
        if (i >= kFeatureCount) throw Error("bad_taxonomy", "variable index out of range in '" + n.name + "'");
      if (!n.is_leaf()) continue;
      for (auto i : n.indices)
        if (!seen.insert(i).second)
          throw Error("bad_taxonomy", "variable '" + VariableRegistry::instance().name(i) + "' is in more than one leaf");
    }
  }

  std::vector<TaxonomyNode> nodes_;
  std::unordered_map<std::string, std::size_t> position_;
  std::string root_;
};

namespace detail {
inline std::vector<std::size_t> index_range(std::size_t offset, std::size_t count) {
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = offset + i;
  return out;
}
}  // namespace detail

// Movement -> {Kinematic -> {Speed, Acceleration}, Geometric -> {Curvature, Indentation}}.
inline Taxonomy default_taxonomy() {
  return Taxonomy(
      {{"Movement", {"Kinematic", "Geometric"}},
       {"Kinematic", {"Speed", "Acceleration"}},
       {"Geometric", {"Curvature", "Indentation"}}},
      {{"Curvature", detail::index_range(kCurvatureOffset, kCurvatureCount)},
       {"Indentation", detail::index_range(kIndentationOffset, kSummarySize)},
       {"Speed", detail::index_range(kSpeedOffset, kSummarySize)},
       {"Acceleration", detail::index_range(kAccelerationOffset, kSummarySize)}});
}

// ---------------------------------------------------------------------------
// Feature-matrix text format: header "id<TAB>name...", one row per trajectory.

inline void write_feature_matrix(std::ostream& out, const std::vector<FeatureVector>& vectors, char delim = '\t') {
  const auto& reg = VariableRegistry::instance();
  out << "id";
  for (const auto& n : reg.names()) out << delim << n;
  out << '\n';
  for (const auto& fv : vectors) {
    out << fv.trajectory_id;
    for (double v : fv.values) out << delim << format_double(v);
    out << '\n';
  }
}

inline std::vector<FeatureVector> read_feature_matrix(std::istream& in, char delim = '\t') {
  const auto& reg = VariableRegistry::instance();
  auto split = [delim](const std::string& line) {
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    while (true) {
      const auto pos = rest.find(delim);
      cells.push_back(trim(rest.substr(0, pos)));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    return cells;
  };

  std::string line;
  if (!std::getline(in, line)) throw Error("missing_header", "feature matrix has no header row");
  const auto header = split(line);
  if (header.empty() || header[0] != "id") throw Error("bad_feature_matrix", "first column must be 'id'");
  std::vector<std::size_t> slot(header.size(), kFeatureCount);
  std::vector<bool> present(kFeatureCount, false);
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (!reg.contains(header[c])) continue;
    slot[c] = reg.index_of(header[c]);
    present[slot[c]] = true;
  }
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    if (!present[i]) throw Error("missing_column", "feature matrix lacks column '" + reg.name(i) + "'");

  std::vector<FeatureVector> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw Error("bad_feature_matrix", "row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                                            " cells, expected " + std::to_string(header.size()));
    FeatureVector fv;
    fv.trajectory_id = std::string(cells[0]);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (slot[c] == kFeatureCount) continue;
      const auto v = parse_double(cells[c]);
      if (!v) throw Error("bad_feature_matrix", "row " + std::to_string(row) + " column '" + std::string(header[c]) +
                                                    "' is not a finite number");
      fv.values[slot[c]] = *v;
    }
    out.push_back(std::move(fv));
  }
  return out;
}

}  // namespace tumd
