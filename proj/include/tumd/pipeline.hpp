#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tumd/error.hpp"
#include "tumd/features.hpp"
#include "tumd/parallel.hpp"
#include "tumd/scoring.hpp"
#include "tumd/trajectory.hpp"

namespace tumd {

// Quadrants of the two-node score plane. Numbering follows the axis roles:
// uncommon_y is the pure-Y quadrant, uncommon_x the pure-X quadrant.
enum class ZoneLabel { common = 0, uncommon_y = 1, uncommon_x = 2, hybrid = 3 };

inline constexpr double kDefaultThreshold = 0.5;

inline std::string_view to_string(ZoneLabel z) {
  switch (z) {
    case ZoneLabel::common: return "Zone0";
    case ZoneLabel::uncommon_y: return "Zone1";
    case ZoneLabel::uncommon_x: return "Zone2";
    case ZoneLabel::hybrid: return "Zone3";
  }
  return "?";
}

// Scores at the threshold count as uncommon.
inline ZoneLabel classify_zone(double x_score, double y_score, double threshold = kDefaultThreshold) {
  const bool x = x_score >= threshold;
  const bool y = y_score >= threshold;
  if (!x && !y) return ZoneLabel::common;
  if (!x) return ZoneLabel::uncommon_y;
  if (!y) return ZoneLabel::uncommon_x;
  return ZoneLabel::hybrid;
}

// Behavior name for a zone in terms of the nodes on each axis.
inline std::string zone_behavior(ZoneLabel z, std::string_view x_node, std::string_view y_node) {
  switch (z) {
    case ZoneLabel::common: return "common";
    case ZoneLabel::uncommon_y: return "pure " + std::string(y_node);
    case ZoneLabel::uncommon_x: return "pure " + std::string(x_node);
    case ZoneLabel::hybrid: return "hybrid " + std::string(x_node) + "/" + std::string(y_node);
  }
  return "?";
}

struct ZoneCounts {
  std::array<std::size_t, 4> by_zone{};

  std::size_t operator[](ZoneLabel z) const { return by_zone[static_cast<std::size_t>(z)]; }
  std::size_t& operator[](ZoneLabel z) { return by_zone[static_cast<std::size_t>(z)]; }
  std::size_t total() const { return by_zone[0] + by_zone[1] + by_zone[2] + by_zone[3]; }

  friend bool operator==(const ZoneCounts&, const ZoneCounts&) = default;
};

struct PassAxes {
  std::string x;
  std::string y;
};

// One scoring + classification pass. Scores cover every corpus instance;
// zones are set only for the classified subset.
struct PassResult {
  std::string branch;  // node being refined; empty for the first pass
  std::string x_node;
  std::string y_node;
  double radius_x = 0.0;
  double radius_y = 0.0;
  std::vector<std::string> ids;
  std::vector<double> x_scores;
  std::vector<double> y_scores;
  std::vector<std::optional<ZoneLabel>> zones;
  ZoneCounts counts;

  std::size_t size() const { return ids.size(); }
  bool classified(std::size_t i) const { return zones[i].has_value(); }

  std::vector<std::string> ids_in(ZoneLabel z) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (zones[i] == z) out.push_back(ids[i]);
    return out;
  }
};

// Scores x and y over the full standardized corpus and classifies the
// instances flagged in `classify`.
inline PassResult run_pass(const FeatureMatrix& standardized, const TaxonomyNode& x_node, const TaxonomyNode& y_node,
                           const std::vector<bool>& classify, double threshold = kDefaultThreshold,
                           Parallelism par = {}) {
  if (classify.size() != standardized.rows())
    throw Error("bad_subset", "classification mask does not match corpus size");
  const auto xs = score_node(standardized, x_node, par);
  const auto ys = score_node(standardized, y_node, par);

  PassResult pass;
  pass.x_node = x_node.name;
  pass.y_node = y_node.name;
  pass.radius_x = xs.radius;
  pass.radius_y = ys.radius;
  pass.ids = standardized.ids;
  pass.x_scores = xs.scores;
  pass.y_scores = ys.scores;
  pass.zones.assign(pass.ids.size(), std::nullopt);
  for (std::size_t i = 0; i < pass.ids.size(); ++i) {
    if (!classify[i]) continue;
    const auto z = classify_zone(pass.x_scores[i], pass.y_scores[i], threshold);
    pass.zones[i] = z;
    ++pass.counts[z];
  }
  return pass;
}

inline PassResult run_pass(const std::vector<FeatureVector>& vectors, const TaxonomyNode& x_node,
                           const TaxonomyNode& y_node, const std::set<std::string>& classify_subset,
                           double threshold = kDefaultThreshold, Parallelism par = {}) {
  if (vectors.size() < 2) throw Error("too_few_instances", "a pass needs at least 2 instances");
  std::vector<bool> mask(vectors.size(), false);
  std::size_t found = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (classify_subset.count(vectors[i].trajectory_id)) {
      mask[i] = true;
      ++found;
    }
  if (found < classify_subset.size()) throw Error("bad_subset", "classification subset names ids outside the corpus");
  return run_pass(standardize(make_feature_matrix(vectors)).matrix, x_node, y_node, mask, threshold, par);
}

// ---------------------------------------------------------------------------
// Two-level breakdown

struct BranchBreakdown {
  std::string node;  // first-level node being refined
  std::string x_node;
  std::string y_node;
  ZoneCounts counts;  // over the pure instances of `node`
  bool refined = false;
};

struct Breakdown {
  std::size_t total = 0;
  std::string x_node;
  std::string y_node;
  ZoneCounts first;
  BranchBreakdown x_branch;  // refinement of pure-x instances
  BranchBreakdown y_branch;  // refinement of pure-y instances

  const BranchBreakdown* branch(std::string_view node) const {
    if (x_branch.node == node) return &x_branch;
    if (y_branch.node == node) return &y_branch;
    return nullptr;
  }
};

struct PipelineConfig {
  double threshold = kDefaultThreshold;
  PassAxes first{"Kinematic", "Geometric"};
  // Axes for refining each first-level node; a node missing here falls back
  // to its two taxonomy children in declaration order.
  std::map<std::string, PassAxes> refine{{"Kinematic", {"Speed", "Acceleration"}},
                                         {"Geometric", {"Curvature", "Indentation"}}};
  Parallelism parallelism{};
};

struct DatasetDescription {
  std::vector<FeatureVector> features;
  StandardizationParams standardization;
  PassResult first;
  std::optional<PassResult> refine_x;  // over pure-x ids of the first pass
  std::optional<PassResult> refine_y;  // over pure-y ids of the first pass
  Breakdown breakdown;
  double threshold = kDefaultThreshold;

  const PassResult* refinement(std::string_view node) const {
    if (refine_x && refine_x->branch == node) return &*refine_x;
    if (refine_y && refine_y->branch == node) return &*refine_y;
    return nullptr;
  }
};

namespace detail {

inline std::optional<PassAxes> refine_axes(const Taxonomy& taxonomy, const PipelineConfig& config,
                                           const std::string& node) {
  if (const auto it = config.refine.find(node); it != config.refine.end()) return it->second;
  const auto& tn = taxonomy.node(node);
  if (tn.children.size() == 2) return PassAxes{tn.children[0], tn.children[1]};
  return std::nullopt;
}

}  // namespace detail

// Runs both passes on precomputed feature vectors.
inline DatasetDescription describe_features(std::vector<FeatureVector> vectors, const Taxonomy& taxonomy,
                                            const PipelineConfig& config = {}) {
  if (vectors.size() < 2) throw Error("too_few_instances", "describing a corpus needs at least 2 trajectories");
  {
    std::unordered_set<std::string> seen;
    for (const auto& fv : vectors)
      if (!seen.insert(fv.trajectory_id).second) throw Error("duplicate_id", "trajectory id '" + fv.trajectory_id + "' repeats");
  }

  DatasetDescription desc;
  desc.threshold = config.threshold;
  auto standardized = standardize(make_feature_matrix(vectors));
  desc.standardization = standardized.params;
  desc.features = std::move(vectors);
  const auto& matrix = standardized.matrix;
  const auto par = config.parallelism;
  const auto n = matrix.rows();

  desc.first = run_pass(matrix, taxonomy.node(config.first.x), taxonomy.node(config.first.y), std::vector<bool>(n, true),
                        config.threshold, par);

  auto refine = [&](const std::string& node, ZoneLabel pure_zone, BranchBreakdown& bb) -> std::optional<PassResult> {
    bb.node = node;
    const auto axes = detail::refine_axes(taxonomy, config, node);
    if (!axes) return std::nullopt;
    bb.x_node = axes->x;
    bb.y_node = axes->y;
    std::vector<bool> mask(n, false);
    for (std::size_t i = 0; i < n; ++i) mask[i] = desc.first.zones[i] == pure_zone;
    auto pass = run_pass(matrix, taxonomy.node(axes->x), taxonomy.node(axes->y), mask, config.threshold, par);
    pass.branch = node;
    bb.counts = pass.counts;
    bb.refined = true;
    return pass;
  };

  auto& bd = desc.breakdown;
  bd.total = n;
  bd.x_node = config.first.x;
  bd.y_node = config.first.y;
  bd.first = desc.first.counts;
  desc.refine_x = refine(config.first.x, ZoneLabel::uncommon_x, bd.x_branch);
  desc.refine_y = refine(config.first.y, ZoneLabel::uncommon_y, bd.y_branch);
  return desc;
}

// Feature extraction followed by both passes.
inline DatasetDescription run_tumd(const std::vector<Trajectory>& trajectories, const Taxonomy& taxonomy,
                                   const PipelineConfig& config = {}) {
  if (trajectories.size() < 2) throw Error("too_few_instances", "describing a corpus needs at least 2 trajectories");
  return describe_features(build_feature_vectors(trajectories, config.parallelism), taxonomy, config);
}

// ---------------------------------------------------------------------------
// Effectiveness

struct BranchEffectiveness {
  std::string node;
  std::size_t pure_instances = 0;  // first-pass pure instances of `node`
  std::size_t refined_to_leaf = 0;  // of those, pure-x or pure-y in the refinement
  double fraction = 0.0;
  bool successful = false;
};

struct EffectivenessReport {
  bool pass1_effective = false;
  double pass1_uncommon_fraction = 0.0;
  BranchEffectiveness x_branch;
  BranchEffectiveness y_branch;
  bool pass2_kinematic_successful = false;
  bool pass2_geometric_successful = false;
  bool pass2_effective = false;
  bool overall_effective = false;
};

inline BranchEffectiveness evaluate_branch(const BranchBreakdown& bb, std::size_t pure_instances) {
  BranchEffectiveness out;
  out.node = bb.node;
  out.pure_instances = pure_instances;
  if (bb.refined) out.refined_to_leaf = bb.counts[ZoneLabel::uncommon_x] + bb.counts[ZoneLabel::uncommon_y];
  if (pure_instances > 0) {
    out.fraction = static_cast<double>(out.refined_to_leaf) / static_cast<double>(pure_instances);
    out.successful = 2 * out.refined_to_leaf > pure_instances;
  }
  return out;
}

// Majority rules: pass 1 needs more than half outside the common zone; a
// branch succeeds when more than half of its pure instances refine to a
// single child node. Comparisons are strict and done on integer counts.
inline EffectivenessReport evaluate_effectiveness(const Breakdown& bd) {
  EffectivenessReport r;
  const auto uncommon = bd.total - bd.first[ZoneLabel::common];
  if (bd.total > 0) {
    r.pass1_uncommon_fraction = static_cast<double>(uncommon) / static_cast<double>(bd.total);
    r.pass1_effective = 2 * uncommon > bd.total;
  }
  r.x_branch = evaluate_branch(bd.x_branch, bd.first[ZoneLabel::uncommon_x]);
  r.y_branch = evaluate_branch(bd.y_branch, bd.first[ZoneLabel::uncommon_y]);
  for (const auto* b : {&r.x_branch, &r.y_branch}) {
    if (b->node == "Kinematic") r.pass2_kinematic_successful = b->successful;
    if (b->node == "Geometric") r.pass2_geometric_successful = b->successful;
  }
  r.pass2_effective = r.x_branch.successful || r.y_branch.successful;
  r.overall_effective = r.pass1_effective && r.pass2_effective;
  return r;
}

inline EffectivenessReport evaluate_effectiveness(const DatasetDescription& desc) {
  return evaluate_effectiveness(desc.breakdown);
}

}  // namespace tumd
