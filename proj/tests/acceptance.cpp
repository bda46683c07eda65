// Acceptance harness: one [PASS]/[FAIL] line per criterion, nonzero exit if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/scoring_oracle.hpp"
#include "oracles/stats_oracle.hpp"
#include "published.hpp"
#include "test_support.hpp"
#include "tumd/tumd.hpp"

using namespace tumd;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

FeatureMatrix matrix_of(const oracle::Rows& rows) {
  FeatureMatrix m;
  m.columns.resize(rows[0].size());
  for (std::size_t c = 0; c < m.columns.size(); ++c) m.columns[c] = c;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.ids.push_back(std::to_string(i));
    m.data.insert(m.data.end(), rows[i].begin(), rows[i].end());
  }
  return m;
}

Outcome scoring_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  std::normal_distribution<double> g(0.0, 1.0);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 99;
    const std::size_t m = 1 + rng() % 72;
    oracle::Rows rows(n, std::vector<double>(m));
    for (auto& r : rows)
      for (auto& v : r) v = g(rng);
    const auto fm = matrix_of(rows);
    const auto got = outlier_scores(fm, mean_pairwise_distance(fm));
    const auto want = oracle::score(rows);
    if (got.neighbors != want.neighbors || got.scores != want.scores ||
        std::abs(got.radius - want.radius) > 1e-12 * std::max(1.0, want.radius))
      ++mismatches;
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && t < 60.0,
          std::to_string(mismatches) + " of 200 matrices differ, " + fmt("%.2f s", t)};
}

Outcome hand_case() {
  const auto fm = matrix_of({{0.0}, {1.0}, {10.0}});
  const double radius = mean_pairwise_distance(fm);
  const auto t = outlier_scores(fm, radius);
  const bool ok = std::abs(radius - 20.0 / 3.0) < 1e-12 && t.scores == std::vector<double>{0.5, 0.5, 1.0};
  return {ok, "radius " + fmt("%.15g", radius) + ", scores (" + fmt("%g", t.scores[0]) + ", " + fmt("%g", t.scores[1]) +
                  ", " + fmt("%g", t.scores[2]) + ")"};
}

Outcome stats_oracle() {
  std::mt19937_64 rng(202);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = testing_support::random_series(rng);
    const auto s = summarize_distribution(v);
    const auto o = oracle::compute(v).flat();
    const double scale = std::max(1.0, std::max(std::abs(s[17]), std::abs(s[18])));
    for (std::size_t i = 0; i < kSummarySize; ++i)
      if (std::abs(s[i] - o[i]) > 1e-9 * std::max(std::abs(s[i]), std::abs(o[i])) + 1e-12 * scale) {
        ++bad;
        break;
      }
  }
  std::size_t bad_constant = 0;
  for (double c : {0.0, 1.0, -3.5, 1e6}) {
    for (std::size_t n : {1u, 2u, 5u, 50u}) {
      const auto s = summarize_distribution(std::vector<double>(n, c));
      // sd, cv, skew, kurt
      if (s[11] != 0.0 || s[12] != 0.0 || s[15] != 0.0 || s[16] != 0.0) ++bad_constant;
    }
  }
  return {bad == 0 && bad_constant == 0,
          std::to_string(bad) + " of 1000 series differ; " + std::to_string(bad_constant) + " constant-series violations"};
}

Outcome dg_invariants() {
  std::vector<std::pair<double, double>> line;
  for (int i = 0; i < 25; ++i) line.emplace_back(2.0 * i, -1.5 * i);
  const auto straight = distance_geometry_signatures(testing_support::planar_path(line));
  double worst_straight = 0;
  for (double v : straight) worst_straight = std::max(worst_straight, std::abs(v - 1.0));

  const auto back = distance_geometry_signatures(testing_support::planar_path({{0, 0}, {3, 4}, {6, 8}, {3, 4}, {0, 0}}));

  std::mt19937_64 rng(303);
  std::size_t out_of_range = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto t = testing_support::random_walk(rng, 3 + rng() % 98);
    for (double v : distance_geometry_signatures(t))
      if (!(v >= 0.0 && v <= 1.0)) {
        ++out_of_range;
        break;
      }
  }
  const bool ok = worst_straight <= 1e-9 && std::abs(back[0]) <= 1e-9 && out_of_range == 0;
  return {ok, "straight max |dg-1| " + fmt("%.3g", worst_straight) + ", out-and-back sig1 " + fmt("%.3g", back[0]) +
                  ", " + std::to_string(out_of_range) + " of 10000 random trajectories out of [0,1]"};
}

Outcome zone_geometry() {
  std::size_t wrong = 0, non_monotone = 0;
  const double thresholds[] = {0.25, 0.5, 0.75};
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const double x = i / 100.0, y = j / 100.0;
      const int expected = (x >= 0.5 ? 2 : 0) + (y >= 0.5 ? 1 : 0);  // bit 2: x side, bit 1: y side
      const ZoneLabel want = expected == 0 ? ZoneLabel::common
                             : expected == 1 ? ZoneLabel::uncommon_y
                             : expected == 2 ? ZoneLabel::uncommon_x
                                             : ZoneLabel::hybrid;
      if (classify_zone(x, y) != want) ++wrong;
      // Raising the threshold can only drop axes from the uncommon side.
      auto axes = [&](double t) {
        const auto z = classify_zone(x, y, t);
        return std::pair{z == ZoneLabel::uncommon_x || z == ZoneLabel::hybrid,
                         z == ZoneLabel::uncommon_y || z == ZoneLabel::hybrid};
      };
      for (int k = 0; k + 1 < 3; ++k) {
        const auto lo = axes(thresholds[k]), hi = axes(thresholds[k + 1]);
        if ((hi.first && !lo.first) || (hi.second && !lo.second)) ++non_monotone;
      }
    }
  return {wrong == 0 && non_monotone == 0,
          std::to_string(wrong) + " misclassified grid points, " + std::to_string(non_monotone) + " monotonicity violations"};
}

Outcome published_effectiveness() {
  std::string detail;
  bool ok = true;
  bool any_overall = false;
  for (const auto& c : published::cases()) {
    const auto e = evaluate_effectiveness(c.breakdown);
    ok = ok && e.pass1_effective == c.pass1_effective && e.pass2_effective == c.pass2_effective;
    any_overall = any_overall || e.overall_effective;
    detail += c.name + " p1=" + (e.pass1_effective ? "eff" : "ineff") + " p2=" + (e.pass2_effective ? "eff" : "ineff") + "; ";
  }
  detail += std::string("verdict: ") + (any_overall ? "effective" : "ineffective");
  return {ok && any_overall, detail};
}

Outcome planted_recovery() {
  const auto start = Clock::now();
  const auto corpus = generate_synthetic_corpus({.n_baseline = 80, .n_speed_burst = 10, .n_zigzag = 10, .seed = 0});
  Config cfg;
  const auto result = describe_corpus(corpus.trajectories, cfg);
  const double t = seconds_since(start);
  const auto& desc = result.description;

  auto index_of = [&](const std::string& id) {
    return static_cast<std::size_t>(std::find(desc.first.ids.begin(), desc.first.ids.end(), id) - desc.first.ids.begin());
  };
  // Returns (recovered in pass 1, pure ones, pure ones landing in a zone that involves `leaf`).
  auto check = [&](Archetype kind, ZoneLabel pure, const PassResult& refinement, const std::string& leaf) {
    std::size_t recovered = 0, pure_count = 0, pure_ok = 0;
    for (const auto& id : corpus.ids_of(kind)) {
      const auto i = index_of(id);
      const auto z = *desc.first.zones[i];
      if (z == pure || z == ZoneLabel::hybrid) ++recovered;
      if (z != pure) continue;
      ++pure_count;
      const auto rz = *refinement.zones[i];
      const bool involves = rz == ZoneLabel::hybrid || (rz == ZoneLabel::uncommon_x && refinement.x_node == leaf) ||
                            (rz == ZoneLabel::uncommon_y && refinement.y_node == leaf);
      if (involves) ++pure_ok;
    }
    return std::tuple{recovered, pure_count, pure_ok};
  };
  const auto [sr, sp, so] = check(Archetype::speed_burst, ZoneLabel::uncommon_x, *desc.refinement("Kinematic"), "Speed");
  const auto [zr, zp, zo] = check(Archetype::zigzag, ZoneLabel::uncommon_y, *desc.refinement("Geometric"), "Indentation");
  const bool ok = sr >= 8 && so == sp && zr >= 8 && zo == zp && t < 30.0;
  return {ok, "speed-burst " + std::to_string(sr) + "/10 Kinematic-involved, " + std::to_string(so) + "/" +
                  std::to_string(sp) + " pure ones Speed-involved; zigzag " + std::to_string(zr) +
                  "/10 Geometric-involved, " + std::to_string(zo) + "/" + std::to_string(zp) +
                  " pure ones Indentation-involved; " + fmt("%.2f s", t)};
}

std::map<std::string, std::string> read_tree(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    out[std::filesystem::relative(e.path(), dir).string()] = s.str();
  }
  return out;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tumd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / ("tumd_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const auto corpus = (dir / "corpus.csv").string();
  bool ok = cli({"synth", "--out", corpus, "--n-baseline", "150", "--n-speed-burst", "10", "--n-stop-and-go", "10",
                 "--n-zigzag", "10", "--n-loop", "10", "--seed", "11"}) == 0;
  std::vector<std::map<std::string, std::string>> runs;
  for (const char* threads : {"1", "1", "8", "8"}) {
    const auto out = dir / ("run" + std::to_string(runs.size()));
    ok = ok && cli({"describe", "--input", corpus, "--out", out.string(), "--seed", "3", "--threads", threads}) == 0;
    runs.push_back(ok ? read_tree(out) : std::map<std::string, std::string>{});
  }
  fs::remove_all(dir);
  const bool same = ok && !runs[0].empty() && runs[0] == runs[1] && runs[2] == runs[3] && runs[0] == runs[2];
  return {same, std::to_string(runs[0].size()) + " output files; 1-thread pair " + (runs[0] == runs[1] ? "identical" : "differ") +
                    ", 8-thread pair " + (runs[2] == runs[3] ? "identical" : "differ") + ", across thread counts " +
                    (runs[0] == runs[2] ? "identical" : "differ")};
}

Outcome invariance() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> offset(-1e4, 1e4), angle(0.0, 2 * std::numbers::pi), shift(-1e5, 1e5);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = testing_support::random_walk(rng, 5 + rng() % 120);
    const auto base = build_feature_vector(t).values;
    const double dx = offset(rng), dy = offset(rng), th = angle(rng), dt = shift(rng);
    for (int kind = 0; kind < 3; ++kind) {
      Trajectory u = t;
      for (auto& f : u.fixes) {
        if (kind == 0) {
          f.x += dx;
          f.y += dy;
        } else if (kind == 1) {
          const double x = f.x, y = f.y;
          f.x = std::cos(th) * x - std::sin(th) * y;
          f.y = std::sin(th) * x + std::cos(th) * y;
        } else {
          f.t += dt;
        }
      }
      const auto moved = build_feature_vector(u).values;
      for (std::size_t i = 0; i < kFeatureCount; ++i)
        worst = std::max(worst, std::abs(base[i] - moved[i]) / std::max(1.0, std::abs(base[i])));
    }
  }
  return {worst <= 1e-9, "max relative change " + fmt("%.3g", worst) + " over 100 trajectories x 3 transforms"};
}

Outcome performance() {
  const auto corpus = generate_synthetic_corpus(
      {.n_baseline = 4500, .n_speed_burst = 125, .n_stop_and_go = 125, .n_zigzag = 125, .n_loop = 125, .n_fixes = 200, .seed = 5});
  const Parallelism par{4};
  const auto start = Clock::now();
  const auto vectors = build_feature_vectors(corpus.trajectories, par);
  const auto standardized = standardize(make_feature_matrix(vectors)).matrix;
  const auto tax = default_taxonomy();
  for (const auto& node : tax.nodes()) score_node(standardized, node, par);
  const double total = seconds_since(start);

  const auto movement = restrict_columns(standardized, tax.node("Movement").indices);
  auto core = [&](std::size_t threads) {
    const Parallelism p{threads};
    const auto s = Clock::now();
    const double r = mean_pairwise_distance(movement, p);
    neighbor_counts(movement, r, p);
    return seconds_since(s);
  };
  const double t1 = std::min(core(1), core(1));
  const double t4 = std::min(core(4), core(4));
  const double speedup = t1 / t4;
  const auto cores = std::thread::hardware_concurrency();
  return {total < 300.0 && speedup >= 2.5,
          "5000 x 200 fixes, features + " + std::to_string(tax.nodes().size()) + " node scorings " + fmt("%.2f s", total) +
              "; pairwise core 1 thread " + fmt("%.2f s", t1) + ", 4 threads " + fmt("%.2f s", t4) + ", speedup " +
              fmt("%.2fx", speedup) + " (hardware threads: " + std::to_string(cores) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"scoring oracle equivalence", scoring_oracle},
      {"hand-computed scoring case", hand_case},
      {"statistics oracle", stats_oracle},
      {"distance-geometry invariants", dg_invariants},
      {"zone geometry", zone_geometry},
      {"effectiveness on published numbers", published_effectiveness},
      {"planted-anomaly recovery", planted_recovery},
      {"determinism", determinism},
      {"invariance suite", invariance},
      {"performance gate", performance},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
