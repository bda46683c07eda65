#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "tumd/error.hpp"
#include "tumd/trajectory.hpp"

namespace tumd {

inline constexpr double kEarthRadiusMeters = 6371008.8;

enum class ParameterKind { speed, acceleration_magnitude, turning_angle };

inline std::string_view to_string(ParameterKind kind) {
  switch (kind) {
    case ParameterKind::speed: return "speed";
    case ParameterKind::acceleration_magnitude: return "acceleration_magnitude";
    case ParameterKind::turning_angle: return "turning_angle";
  }
  return "?";
}

// Per-point movement parameter: m/s, m/s^2 or degrees in [0, 180].
struct ParameterSeries {
  ParameterKind kind = ParameterKind::speed;
  std::vector<double> values;
  std::string source_id;
};

namespace detail {

inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Longitude difference wrapped into [-180, 180].
inline double wrap_lon_delta(double d) {
  while (d > 180.0) d -= 360.0;
  while (d < -180.0) d += 360.0;
  return d;
}

struct Vec2 {
  double x;
  double y;
};

// Displacement a -> b in metres, in the tangent plane at `origin` for
// geographic mode.
inline Vec2 displacement(const Fix& a, const Fix& b, const Fix& origin, CoordinateMode mode) {
  if (mode == CoordinateMode::planar) return {b.x - a.x, b.y - a.y};
  const double k = deg2rad(1.0) * kEarthRadiusMeters;
  const double cos_lat = std::cos(deg2rad(origin.y));
  return {wrap_lon_delta(b.x - a.x) * cos_lat * k, (b.y - a.y) * k};
}

}  // namespace detail

// Euclidean metres (planar) or haversine great-circle metres (geographic).
inline double ground_distance(const Fix& a, const Fix& b, CoordinateMode mode) {
  if (mode == CoordinateMode::planar) return std::hypot(b.x - a.x, b.y - a.y);
  using detail::deg2rad;
  const double phi1 = deg2rad(a.y);
  const double phi2 = deg2rad(b.y);
  const double dphi = phi2 - phi1;
  const double dlambda = deg2rad(b.x - a.x);
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(h));
}

inline ParameterSeries speed_series(const Trajectory& traj) {
  ParameterSeries out{ParameterKind::speed, {}, traj.id};
  const auto& f = traj.fixes;
  if (f.size() < 2) return out;
  out.values.reserve(f.size() - 1);
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    out.values.push_back(ground_distance(f[i], f[i + 1], traj.mode) / (f[i + 1].t - f[i].t));
  return out;
}

// |dv/dt| between consecutive segments, differenced at segment-midpoint times.
inline ParameterSeries acceleration_series(const Trajectory& traj) {
  const auto& f = traj.fixes;
  if (f.size() < 3) throw Error("too_short_for_acceleration", "trajectory '" + traj.id + "' has fewer than 3 fixes");
  const auto speed = speed_series(traj);
  ParameterSeries out{ParameterKind::acceleration_magnitude, {}, traj.id};
  out.values.reserve(f.size() - 2);
  for (std::size_t i = 0; i + 2 < f.size(); ++i) {
    const double mid_a = 0.5 * (f[i].t + f[i + 1].t);
    const double mid_b = 0.5 * (f[i + 1].t + f[i + 2].t);
    out.values.push_back(std::abs(speed.values[i + 1] - speed.values[i]) / (mid_b - mid_a));
  }
  return out;
}

// Unsigned course change at each interior fix, degrees in [0, 180].
// A zero-length displacement on either side yields 0.
inline ParameterSeries turning_angle_series(const Trajectory& traj) {
  const auto& f = traj.fixes;
  if (f.size() < 3) throw Error("too_short_for_turning", "trajectory '" + traj.id + "' has fewer than 3 fixes");
  ParameterSeries out{ParameterKind::turning_angle, {}, traj.id};
  out.values.reserve(f.size() - 2);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    const auto in = detail::displacement(f[i - 1], f[i], f[i], traj.mode);
    const auto outv = detail::displacement(f[i], f[i + 1], f[i], traj.mode);
    if ((in.x == 0.0 && in.y == 0.0) || (outv.x == 0.0 && outv.y == 0.0)) {
      out.values.push_back(0.0);
      continue;
    }
    const double cross = in.x * outv.y - in.y * outv.x;
    const double dot = in.x * outv.x + in.y * outv.y;
    out.values.push_back(std::atan2(std::abs(cross), dot) * 180.0 / std::numbers::pi);
  }
  return out;
}

}  // namespace tumd
