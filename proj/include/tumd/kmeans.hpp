#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tumd/features.hpp"
#include "tumd/parallel.hpp"
#include "tumd/random.hpp"
#include "tumd/scoring.hpp"

namespace tumd {

struct KMeansOptions {
  std::size_t k_max = 10;
  std::size_t restarts = 50;
  std::size_t max_iterations = 100;
  std::uint64_t seed = 0;
  Parallelism parallelism{};
};

struct KMeansFit {
  std::size_t k = 0;
  std::vector<std::size_t> assignment;
  std::vector<double> centroids;  // k x cols, row-major
  double inertia = 0.0;
};

namespace detail {

inline double squared_distance(const double* a, const double* b, std::size_t cols) {
  double acc = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double d = a[c] - b[c];
    acc += d * d;
  }
  return acc;
}

// One Lloyd run from a k-means++ seeding.
inline KMeansFit lloyd(const FeatureMatrix& m, std::size_t k, std::size_t max_iterations, std::mt19937_64& rng) {
  const auto n = m.rows();
  const auto cols = m.cols();
  const double* x = m.data.data();
  KMeansFit fit;
  fit.k = k;
  fit.centroids.assign(k * cols, 0.0);
  fit.assignment.assign(n, 0);

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  auto first = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  std::copy_n(x + first * cols, cols, fit.centroids.begin());
  for (std::size_t c = 1; c < k; ++c) {
    const double* prev = fit.centroids.data() + (c - 1) * cols;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(x + i * cols, prev, cols));
      total += nearest[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double run = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        run += nearest[i];
        if (run > target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
    }
    std::copy_n(x + pick * cols, cols, fit.centroids.begin() + static_cast<std::ptrdiff_t>(c * cols));
  }

  std::vector<double> sums(k * cols);
  std::vector<std::size_t> sizes(k);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = iter == 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = squared_distance(x + i * cols, fit.centroids.data() + c * cols, cols);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (fit.assignment[i] != best) {
        fit.assignment[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = fit.assignment[i];
      ++sizes[c];
      for (std::size_t j = 0; j < cols; ++j) sums[c * cols + j] += x[i * cols + j];
    }
    // An emptied cluster keeps its previous centroid.
    for (std::size_t c = 0; c < k; ++c)
      if (sizes[c] > 0)
        for (std::size_t j = 0; j < cols; ++j) fit.centroids[c * cols + j] = sums[c * cols + j] / static_cast<double>(sizes[c]);
  }

  fit.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    fit.inertia += squared_distance(x + i * cols, fit.centroids.data() + fit.assignment[i] * cols, cols);
  return fit;
}

}  // namespace detail

// Best-of-restarts k-means. Each restart draws from its own stream derived
// from (seed, k, restart) so results do not depend on thread count.
inline KMeansFit kmeans(const FeatureMatrix& m, std::size_t k, const KMeansOptions& options) {
  if (k == 0 || k > m.rows()) throw Error("bad_k", "k must be in [1, N]");
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  std::vector<KMeansFit> fits(restarts);
  parallel_for(restarts, options.parallelism, [&](std::size_t r, std::size_t) {
    std::mt19937_64 rng(mix_seed(options.seed, k * 100003 + r));
    fits[r] = detail::lloyd(m, k, options.max_iterations, rng);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (fits[r].inertia < fits[best].inertia) best = r;
  return std::move(fits[best]);
}

// k maximizing the second difference of the inertia curve (inertia[0] is
// k = 1). Falls back to 1 for short or flat curves.
inline std::size_t elbow_k(const std::vector<double>& inertia) {
  if (inertia.size() < 3) return 1;
  if (inertia.front() - *std::min_element(inertia.begin(), inertia.end()) <= 1e-9) return 1;
  std::size_t best = 2;
  double best_curv = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < inertia.size(); ++i) {
    const double curv = inertia[i - 1] - 2.0 * inertia[i] + inertia[i + 1];
    if (curv > best_curv) {
      best_curv = curv;
      best = i + 1;
    }
  }
  return best;
}

struct Exemplar {
  std::size_t cluster = 0;
  std::string id;
  std::size_t cluster_size = 0;
};

struct ExemplarResult {
  std::size_t k = 0;
  std::vector<double> inertia;  // index k - 1
  std::vector<std::string> ids;  // sorted
  std::vector<std::size_t> assignment;  // aligned with ids
  std::vector<Exemplar> exemplars;
};

// Clusters common-zone instances and returns, per cluster, the member
// nearest its centroid (ties go to the smallest id).
inline ExemplarResult zone0_exemplars(std::vector<FeatureVector> zone0, const KMeansOptions& options = {}) {
  ExemplarResult out;
  if (zone0.empty()) return out;
  std::sort(zone0.begin(), zone0.end(),
            [](const FeatureVector& a, const FeatureVector& b) { return a.trajectory_id < b.trajectory_id; });
  for (const auto& fv : zone0) out.ids.push_back(fv.trajectory_id);

  auto matrix = make_feature_matrix(zone0);
  if (matrix.rows() >= 2) matrix = standardize(matrix).matrix;
  const auto n = matrix.rows();
  const auto cols = matrix.cols();

  const std::size_t k_limit = std::min(std::max<std::size_t>(options.k_max, 1), n);
  std::vector<KMeansFit> fits;
  for (std::size_t k = 1; k <= k_limit; ++k) {
    fits.push_back(kmeans(matrix, k, options));
    out.inertia.push_back(fits.back().inertia);
  }
  out.k = n < 3 ? 1 : elbow_k(out.inertia);
  const auto& fit = fits[out.k - 1];
  out.assignment = fit.assignment;

  for (std::size_t c = 0; c < out.k; ++c) {
    std::size_t best = n;
    std::size_t size = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (fit.assignment[i] != c) continue;
      ++size;
      const double d = detail::squared_distance(matrix.data.data() + i * cols, fit.centroids.data() + c * cols, cols);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best < n) out.exemplars.push_back({c, out.ids[best], size});
  }
  return out;
}

}  // namespace tumd
