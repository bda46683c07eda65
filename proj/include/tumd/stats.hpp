#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tumd/error.hpp"

namespace tumd {

inline constexpr std::size_t kSummarySize = 19;

// Order of the 19 summary statistics; variable names are "<prefix>_<suffix>".
inline constexpr std::array<std::string_view, kSummarySize> kSummarySuffixes = {
    "distinct", "zeros", "mean", "sem", "q05", "q10", "q25", "q50", "q75", "q90",
    "q95",      "sd",    "cv",   "mad", "iqr", "skew", "kurt", "min", "max"};

inline constexpr std::array<double, 7> kSummaryQuantiles = {0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95};

inline constexpr double kStatTolerance = 1e-12;

using Summary = std::array<double, kSummarySize>;

// Linear interpolation between order statistics of an ascending sample
// (h = (n - 1) p).
inline double quantile_sorted(std::span<const double> sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// 19-statistic distribution summary: distinct count, zero count, mean, SEM,
// seven quantiles, sample sd, CV, MAD, IQR, adjusted skewness, excess
// kurtosis, min, max. Degenerate spreads map sd-derived values to 0.
inline Summary summarize_distribution(std::span<const double> values) {
  if (values.empty()) throw Error("empty_series", "cannot summarize an empty series");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  const double nd = static_cast<double>(n);

  double distinct = 1.0;
  for (std::size_t i = 1; i < n; ++i)
    if (sorted[i] - sorted[i - 1] > kStatTolerance) distinct += 1.0;

  double zeros = 0.0;
  double sum = 0.0;
  for (double v : values) {
    if (std::abs(v) <= kStatTolerance) zeros += 1.0;
    sum += v;
  }
  const double mean = sum / nd;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }

  // A series whose range is within tolerance is treated as constant so that
  // rounding noise in the mean cannot leak into sd, skewness or kurtosis.
  const double range = sorted.back() - sorted.front();
  const double scale = std::max({1.0, std::abs(sorted.front()), std::abs(sorted.back())});
  const bool constant = range <= kStatTolerance * scale;

  const double sd = (n > 1 && !constant) ? std::sqrt(m2 / (nd - 1.0)) : 0.0;
  const double sem = n > 1 ? sd / std::sqrt(nd) : 0.0;
  const double cv = std::abs(mean) <= kStatTolerance ? 0.0 : sd / mean;

  double skew = 0.0;
  if (n >= 3 && sd > 0.0) {
    const double b2 = m2 / nd;
    const double g1 = (m3 / nd) / std::pow(b2, 1.5);
    skew = std::sqrt(nd * (nd - 1.0)) / (nd - 2.0) * g1;
  }
  double kurt = 0.0;
  if (n >= 4 && sd > 0.0) {
    const double b2 = m2 / nd;
    const double g2 = (m4 / nd) / (b2 * b2) - 3.0;
    kurt = ((nd + 1.0) * g2 + 6.0) * (nd - 1.0) / ((nd - 2.0) * (nd - 3.0));
  }

  const double median = quantile_sorted(sorted, 0.5);
  std::vector<double> abs_dev(n);
  for (std::size_t i = 0; i < n; ++i) abs_dev[i] = std::abs(sorted[i] - median);
  std::sort(abs_dev.begin(), abs_dev.end());
  const double mad = quantile_sorted(abs_dev, 0.5);

  Summary out{};
  out[0] = distinct;
  out[1] = zeros;
  out[2] = mean;
  out[3] = sem;
  for (std::size_t q = 0; q < kSummaryQuantiles.size(); ++q) out[4 + q] = quantile_sorted(sorted, kSummaryQuantiles[q]);
  out[11] = sd;
  out[12] = cv;
  out[13] = mad;
  out[14] = out[8] - out[6];
  out[15] = skew;
  out[16] = kurt;
  out[17] = sorted.front();
  out[18] = sorted.back();
  return out;
}

}  // namespace tumd
