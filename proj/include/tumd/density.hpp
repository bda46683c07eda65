#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tumd/error.hpp"
#include "tumd/stats.hpp"

namespace tumd {

inline constexpr double kBoxCoxLambdaMin = -2.0;
inline constexpr double kBoxCoxLambdaStep = 0.01;
inline constexpr std::size_t kBoxCoxGridSize = 401;  // -2.00 .. 2.00
inline constexpr std::size_t kMinHistogramBins = 10;
inline constexpr std::size_t kMaxHistogramBins = 1000;
inline constexpr std::size_t kGrid2dBins = 50;

inline double box_cox(double x, double lambda) {
  if (std::abs(lambda) < 1e-12) return std::log(x);
  return (std::pow(x, lambda) - 1.0) / lambda;
}

// Profile log-likelihood of a Box-Cox transform for strictly positive data:
// -n/2 log(var(y)) + (lambda - 1) sum(log x), var with denominator n.
inline double box_cox_log_likelihood(std::span<const double> x, double lambda) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0, log_sum = 0.0;
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = box_cox(x[i], lambda);
    mean += y[i];
    log_sum += std::log(x[i]);
  }
  mean /= n;
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  var /= n;
  return -0.5 * n * std::log(var) + (lambda - 1.0) * log_sum;
}

struct PowerTransform {
  double lambda = 1.0;
  double shift = 0.0;  // added before transforming
};

// Grid maximum-likelihood lambda over [-2, 2] in steps of 0.01. Data with a
// non-positive minimum is shifted by (1e-9 - min) first.
inline PowerTransform fit_box_cox(std::span<const double> values) {
  if (values.size() < 2) throw Error("too_few_values", "power transform needs at least 2 values");
  PowerTransform pt;
  const double lo = *std::min_element(values.begin(), values.end());
  if (lo <= 0.0) pt.shift = 1e-9 - lo;
  std::vector<double> x(values.begin(), values.end());
  for (double& v : x) v += pt.shift;

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < kBoxCoxGridSize; ++g) {
    const double lambda = kBoxCoxLambdaMin + kBoxCoxLambdaStep * static_cast<double>(g);
    const double ll = box_cox_log_likelihood(x, lambda);
    if (std::isfinite(ll) && ll > best) {
      best = ll;
      pt.lambda = lambda;
    }
  }
  return pt;
}

inline std::vector<double> apply_power_transform(std::span<const double> values, const PowerTransform& pt) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = box_cox(values[i] + pt.shift, pt.lambda);
  return out;
}

struct Density1D {
  std::string label;
  bool transformed = false;
  PowerTransform transform;
  double lo = 0.0;
  double bin_width = 0.0;
  std::vector<double> density;  // per bin, integrates to 1
  bool degenerate = false;

  double bin_center(std::size_t b) const { return lo + (static_cast<double>(b) + 0.5) * bin_width; }
};

struct Density2D {
  std::string x_label;
  std::string y_label;
  bool transformed = false;
  PowerTransform x_transform;
  PowerTransform y_transform;
  double x_lo = 0.0, y_lo = 0.0;
  double x_width = 0.0, y_width = 0.0;
  std::size_t x_bins = 0, y_bins = 0;
  std::vector<double> density;  // x-major: [xb * y_bins + yb]
  bool degenerate = false;
};

namespace detail {

inline std::size_t bin_of(double v, double lo, double width, std::size_t bins) {
  const auto b = static_cast<std::size_t>(std::max(0.0, std::floor((v - lo) / width)));
  return std::min(b, bins - 1);
}

}  // namespace detail

// Freedman-Diaconis histogram (at least 10 bins, at most 1000) normalized to
// unit area. Constant data collapses to one flagged bin of width 1.
inline Density1D density_1d(std::span<const double> values, bool power_transform, std::string label = "") {
  if (values.size() < 2) throw Error("too_few_values", "density needs at least 2 values");
  Density1D d;
  d.label = std::move(label);
  std::vector<double> v(values.begin(), values.end());
  const auto [mn0, mx0] = std::minmax_element(v.begin(), v.end());
  if (power_transform && *mx0 > *mn0) {
    d.transformed = true;
    d.transform = fit_box_cox(v);
    v = apply_power_transform(v, d.transform);
  }

  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  const double n = static_cast<double>(v.size());
  if (!(hi - lo > 0.0)) {
    d.degenerate = true;
    d.lo = lo - 0.5;
    d.bin_width = 1.0;
    d.density = {1.0};
    return d;
  }

  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  std::size_t bins = kMinHistogramBins;
  if (iqr > 0.0) {
    const double fd = 2.0 * iqr / std::cbrt(n);
    const double want = std::ceil((hi - lo) / fd);
    bins = static_cast<std::size_t>(std::clamp(want, static_cast<double>(kMinHistogramBins),
                                               static_cast<double>(kMaxHistogramBins)));
  }
  d.lo = lo;
  d.bin_width = (hi - lo) / static_cast<double>(bins);
  d.density.assign(bins, 0.0);
  for (double x : v) d.density[detail::bin_of(x, lo, d.bin_width, bins)] += 1.0;
  for (double& c : d.density) c /= n * d.bin_width;
  return d;
}

// 50 x 50 histogram over the bounding box, normalized to unit volume.
inline Density2D density_2d(std::span<const std::pair<double, double>> points, bool power_transform,
                            std::string x_label = "", std::string y_label = "") {
  if (points.size() < 2) throw Error("too_few_values", "density needs at least 2 points");
  Density2D d;
  d.x_label = std::move(x_label);
  d.y_label = std::move(y_label);
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& [x, y] : points) {
    xs.push_back(x);
    ys.push_back(y);
  }
  if (power_transform) {
    d.transformed = true;
    auto maybe = [](std::vector<double>& v, PowerTransform& pt) {
      const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
      if (*mx > *mn) {
        pt = fit_box_cox(v);
        v = apply_power_transform(v, pt);
      }
    };
    maybe(xs, d.x_transform);
    maybe(ys, d.y_transform);
  }
  const auto [xmn, xmx] = std::minmax_element(xs.begin(), xs.end());
  const auto [ymn, ymx] = std::minmax_element(ys.begin(), ys.end());
  const double n = static_cast<double>(points.size());
  if (!(*xmx > *xmn) || !(*ymx > *ymn)) {
    d.degenerate = true;
    d.x_lo = *xmn - 0.5;
    d.y_lo = *ymn - 0.5;
    d.x_width = d.y_width = 1.0;
    d.x_bins = d.y_bins = 1;
    d.density = {1.0};
    return d;
  }
  d.x_bins = d.y_bins = kGrid2dBins;
  d.x_lo = *xmn;
  d.y_lo = *ymn;
  d.x_width = (*xmx - *xmn) / static_cast<double>(kGrid2dBins);
  d.y_width = (*ymx - *ymn) / static_cast<double>(kGrid2dBins);
  d.density.assign(d.x_bins * d.y_bins, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto bx = detail::bin_of(xs[i], d.x_lo, d.x_width, d.x_bins);
    const auto by = detail::bin_of(ys[i], d.y_lo, d.y_width, d.y_bins);
    d.density[bx * d.y_bins + by] += 1.0;
  }
  for (double& c : d.density) c /= n * d.x_width * d.y_width;
  return d;
}

}  // namespace tumd
