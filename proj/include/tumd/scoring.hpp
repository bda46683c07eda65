#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tumd/error.hpp"
#include "tumd/features.hpp"
#include "tumd/parallel.hpp"

namespace tumd {

// N x M row-major matrix of movement variables. `columns` holds the
// registry index of each column.
struct FeatureMatrix {
  std::vector<std::string> ids;
  std::vector<std::size_t> columns;
  std::vector<double> data;

  std::size_t rows() const { return ids.size(); }
  std::size_t cols() const { return columns.size(); }
  double at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }
  double& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols(), cols()}; }
};

struct StandardizationParams {
  std::vector<double> mean;
  std::vector<double> sd;
  std::vector<bool> constant;
};

struct StandardizedMatrix {
  FeatureMatrix matrix;
  StandardizationParams params;
};

struct OutlierScoreTable {
  std::string node;
  double radius = 0.0;
  std::vector<std::string> ids;
  std::vector<double> scores;
  // Other instances within the radius, per instance.
  std::vector<std::size_t> neighbors;

  std::size_t size() const { return ids.size(); }
};

inline constexpr double kConstantColumnSd = 1e-12;

inline FeatureMatrix make_feature_matrix(const std::vector<FeatureVector>& vectors) {
  FeatureMatrix m;
  m.columns = detail::index_range(0, kFeatureCount);
  m.ids.reserve(vectors.size());
  m.data.reserve(vectors.size() * kFeatureCount);
  for (const auto& fv : vectors) {
    m.ids.push_back(fv.trajectory_id);
    for (double v : fv.values) {
      if (!std::isfinite(v)) throw Error("non_finite_feature", "trajectory '" + fv.trajectory_id + "' has a non-finite variable");
      m.data.push_back(v);
    }
  }
  return m;
}

// Keeps only the given registry indices, in the given order.
inline FeatureMatrix restrict_columns(const FeatureMatrix& m, std::span<const std::size_t> registry_indices) {
  std::vector<std::size_t> local;
  local.reserve(registry_indices.size());
  for (auto idx : registry_indices) {
    const auto it = std::find(m.columns.begin(), m.columns.end(), idx);
    if (it == m.columns.end())
      throw Error("unknown_variable", "matrix has no column for variable " + VariableRegistry::instance().name(idx));
    local.push_back(static_cast<std::size_t>(it - m.columns.begin()));
  }
  FeatureMatrix out;
  out.ids = m.ids;
  out.columns.assign(registry_indices.begin(), registry_indices.end());
  out.data.resize(m.rows() * local.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < local.size(); ++c) out.data[r * local.size() + c] = m.at(r, local[c]);
  return out;
}

// Column-wise z-scores with sample sd; near-constant columns become zeros.
inline StandardizedMatrix standardize(const FeatureMatrix& m) {
  const auto n = m.rows();
  const auto cols = m.cols();
  if (n < 2) throw Error("too_few_instances", "standardization needs at least 2 instances");

  StandardizedMatrix out{m, {std::vector<double>(cols), std::vector<double>(cols), std::vector<bool>(cols)}};
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) sum += m.at(r, c);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = m.at(r, c) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const bool constant = sd <= kConstantColumnSd;
    out.params.mean[c] = mean;
    out.params.sd[c] = sd;
    out.params.constant[c] = constant;
    for (std::size_t r = 0; r < n; ++r) out.matrix.at(r, c) = constant ? 0.0 : (m.at(r, c) - mean) / sd;
  }
  return out;
}

namespace detail {

inline constexpr std::size_t kPairTile = 64;

inline double row_distance(const double* a, const double* b, std::size_t cols) {
  double acc = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double d = a[c] - b[c];
    acc += d * d;
  }
  return std::sqrt(acc);
}

// Upper-triangular tile pairs (I <= J) over row tiles of kPairTile rows.
inline std::vector<std::pair<std::size_t, std::size_t>> tile_pairs(std::size_t n) {
  const std::size_t tiles = (n + kPairTile - 1) / kPairTile;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(tiles * (tiles + 1) / 2);
  for (std::size_t i = 0; i < tiles; ++i)
    for (std::size_t j = i; j < tiles; ++j) out.emplace_back(i, j);
  return out;
}

// Calls visit(i, j, distance) for every unordered pair i < j inside the
// tile pair, in a fixed order.
template <typename Visit>
void visit_tile(const FeatureMatrix& m, std::pair<std::size_t, std::size_t> tile, Visit&& visit) {
  const auto n = m.rows();
  const auto cols = m.cols();
  const double* base = m.data.data();
  const std::size_t i0 = tile.first * kPairTile;
  const std::size_t i1 = std::min(n, i0 + kPairTile);
  const std::size_t j0 = tile.second * kPairTile;
  const std::size_t j1 = std::min(n, j0 + kPairTile);
  for (std::size_t i = i0; i < i1; ++i) {
    const double* a = base + i * cols;
    for (std::size_t j = (tile.first == tile.second ? i + 1 : j0); j < j1; ++j)
      visit(i, j, row_distance(a, base + j * cols, cols));
  }
}

// Recursive pairwise summation; result depends only on the input order.
inline double cascade_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const auto half = v.size() / 2;
  return cascade_sum(v.first(half)) + cascade_sum(v.subspan(half));
}

}  // namespace detail

// Mean Euclidean distance over all N(N-1)/2 unordered pairs. Each tile pair
// is summed sequentially into its own slot and the slots are reduced in a
// fixed order, so the result is identical for any thread count.
inline double mean_pairwise_distance(const FeatureMatrix& m, Parallelism par = {}) {
  const auto n = m.rows();
  if (n < 2) throw Error("too_few_instances", "mean pairwise distance needs at least 2 instances");
  const auto tiles = detail::tile_pairs(n);
  std::vector<double> partial(tiles.size(), 0.0);
  parallel_for(tiles.size(), par, [&](std::size_t task, std::size_t) {
    double s = 0.0;
    detail::visit_tile(m, tiles[task], [&](std::size_t, std::size_t, double d) { s += d; });
    partial[task] = s;
  });
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return detail::cascade_sum(partial) / pairs;
}

// For each instance, the number of other instances at distance <= radius.
inline std::vector<std::size_t> neighbor_counts(const FeatureMatrix& m, double radius, Parallelism par = {}) {
  const auto n = m.rows();
  const auto tiles = detail::tile_pairs(n);
  const auto workers = worker_count(tiles.size(), par);
  std::vector<std::vector<std::uint32_t>> local(workers, std::vector<std::uint32_t>(n, 0));
  parallel_for(tiles.size(), par, [&](std::size_t task, std::size_t worker) {
    auto& counts = local[worker];
    detail::visit_tile(m, tiles[task], [&](std::size_t i, std::size_t j, double d) {
      if (d <= radius) {
        ++counts[i];
        ++counts[j];
      }
    });
  });
  std::vector<std::size_t> out(n, 0);
  for (const auto& counts : local)
    for (std::size_t i = 0; i < n; ++i) out[i] += counts[i];
  return out;
}

// Distance-based outlier score: 1 - (neighbors within radius) / (N - 1).
inline OutlierScoreTable outlier_scores(const FeatureMatrix& m, double radius, Parallelism par = {}) {
  const auto n = m.rows();
  if (n < 2) throw Error("too_few_instances", "outlier scoring needs at least 2 instances");
  if (!(radius >= 0.0)) throw Error("bad_radius", "radius must be a non-negative number");
  OutlierScoreTable table;
  table.radius = radius;
  table.ids = m.ids;
  table.neighbors = neighbor_counts(m, radius, par);
  table.scores.resize(n);
  const double others = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) table.scores[i] = 1.0 - static_cast<double>(table.neighbors[i]) / others;
  return table;
}

// Scores one taxonomy node on an already standardized full-corpus matrix.
inline OutlierScoreTable score_node(const FeatureMatrix& standardized, const TaxonomyNode& node, Parallelism par = {}) {
  const auto sub = restrict_columns(standardized, node.indices);
  const double radius = mean_pairwise_distance(sub, par);
  auto table = outlier_scores(sub, radius, par);
  table.node = node.name;
  return table;
}

inline OutlierScoreTable score_node(const std::vector<FeatureVector>& vectors, const TaxonomyNode& node,
                                    Parallelism par = {}) {
  if (vectors.size() < 2) throw Error("too_few_instances", "node scoring needs at least 2 instances");
  return score_node(standardize(make_feature_matrix(vectors)).matrix, node, par);
}

}  // namespace tumd
