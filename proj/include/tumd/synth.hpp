#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tumd/error.hpp"
#include "tumd/random.hpp"
#include "tumd/trajectory.hpp"

namespace tumd {

enum class Archetype { baseline, speed_burst, stop_and_go, zigzag, loop };

inline std::string_view to_string(Archetype a) {
  switch (a) {
    case Archetype::baseline: return "baseline";
    case Archetype::speed_burst: return "speed_burst";
    case Archetype::stop_and_go: return "stop_and_go";
    case Archetype::zigzag: return "zigzag";
    case Archetype::loop: return "loop";
  }
  return "?";
}

struct SyntheticSpec {
  std::size_t n_baseline = 80;
  std::size_t n_speed_burst = 0;
  std::size_t n_stop_and_go = 0;
  std::size_t n_zigzag = 0;
  std::size_t n_loop = 0;
  std::size_t n_fixes = 50;
  double dt = 10.0;  // seconds between fixes
  std::uint64_t seed = 0;
};

struct SyntheticCorpus {
  std::vector<Trajectory> trajectories;
  std::vector<Archetype> labels;  // aligned with trajectories

  std::vector<std::string> ids_of(Archetype a) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == a) out.push_back(trajectories[i].id);
    return out;
  }
};

namespace detail {

inline constexpr double kBaseSpeedMin = 8.0;  // m/s
inline constexpr double kBaseSpeedMax = 12.0;
inline constexpr double kHeadingNoiseDeg = 1.0;
inline constexpr double kMaxDriftDeg = 1.0;  // per step
inline constexpr double kStepNoise = 0.02;   // relative step-length noise
inline constexpr double kBurstFactor = 10.0;

inline double rad(double deg) { return deg * std::numbers::pi / 180.0; }

inline Trajectory synth_one(Archetype kind, const std::string& id, const SyntheticSpec& spec, std::uint64_t stream) {
  std::mt19937_64 rng(mix_seed(spec.seed, stream));
  auto uni = [&](double a, double b) { return a + (b - a) * uniform01(rng); };
  auto gauss = [&](double sd) {
    // Box-Muller keeps the stream identical across standard libraries.
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };

  const std::size_t n = spec.n_fixes;
  Trajectory traj;
  traj.id = id;
  traj.mode = CoordinateMode::planar;
  traj.fixes.reserve(n);

  const double x0 = uni(0.0, 10000.0);
  const double y0 = uni(0.0, 10000.0);
  double speed = uni(kBaseSpeedMin, kBaseSpeedMax);

  if (kind == Archetype::loop) {
    // Closed circle: chord per step matches the baseline step length.
    const double step_angle = 2.0 * std::numbers::pi / static_cast<double>(n - 1);
    const double radius = speed * spec.dt / (2.0 * std::sin(step_angle / 2.0));
    const double phase = uni(0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = phase + step_angle * static_cast<double>(i % (n - 1));
      const double r = (i == 0 || i + 1 == n) ? radius : radius * (1.0 + gauss(0.005));
      traj.fixes.push_back({spec.dt * static_cast<double>(i), x0 + r * std::cos(a), y0 + r * std::sin(a)});
    }
    return traj;
  }

  if (kind == Archetype::speed_burst) speed *= kBurstFactor;
  const double drift = uni(-kMaxDriftDeg, kMaxDriftDeg);
  const double zig = uni(20.0, 35.0);
  double heading = uni(0.0, 360.0);
  double x = x0, y = y0;
  traj.fixes.push_back({0.0, x, y});
  for (std::size_t i = 1; i < n; ++i) {
    heading += drift + gauss(kHeadingNoiseDeg);
    double course = heading;
    if (kind == Archetype::zigzag) course += (i % 2 == 0 ? zig : -zig);
    double v = speed;
    if (kind == Archetype::stop_and_go) v *= ((i - 1) / 5) % 2 == 0 ? 0.2 : 1.8;
    const double step = v * spec.dt * std::max(0.1, 1.0 + gauss(kStepNoise));
    x += step * std::cos(rad(course));
    y += step * std::sin(rad(course));
    traj.fixes.push_back({spec.dt * static_cast<double>(i), x, y});
  }
  return traj;
}

}  // namespace detail

// Planar synthetic corpus with ground-truth archetypes. Baseline objects move
// at 8-12 m/s on gently curving paths; anomalies are 10x speed, alternating
// slow/fast blocks, alternating +/-20-35 degree course offsets, or closed
// circles. Ids are "<archetype>_<index>" and each trajectory draws from its
// own seeded stream.
inline SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec) {
  if (spec.n_baseline < 2) throw Error("bad_synth_spec", "n_baseline must be at least 2");
  if (spec.n_fixes < 3) throw Error("bad_synth_spec", "n_fixes must be at least 3");
  if (!(spec.dt > 0.0)) throw Error("bad_synth_spec", "dt must be positive");

  SyntheticCorpus corpus;
  std::uint64_t stream = 0;
  auto add = [&](Archetype kind, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s_%04zu", std::string(to_string(kind)).c_str(), i);
      corpus.trajectories.push_back(detail::synth_one(kind, buf, spec, stream++));
      corpus.labels.push_back(kind);
    }
  };
  add(Archetype::baseline, spec.n_baseline);
  add(Archetype::speed_burst, spec.n_speed_burst);
  add(Archetype::stop_and_go, spec.n_stop_and_go);
  add(Archetype::zigzag, spec.n_zigzag);
  add(Archetype::loop, spec.n_loop);
  return corpus;
}

}  // namespace tumd
