#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tumd/config.hpp"
#include "tumd/density.hpp"
#include "tumd/kinematics.hpp"
#include "tumd/kmeans.hpp"
#include "tumd/pipeline.hpp"
#include "tumd/plots.hpp"
#include "tumd/report.hpp"
#include "tumd/svg.hpp"

namespace tumd {

// Relative path -> file content. Everything a describe run writes is
// rendered here first so that nothing touches disk until it all succeeded.
using OutputFiles = std::map<std::string, std::string>;

struct DescribeResult {
  DatasetDescription description;
  EffectivenessReport effectiveness;
  ExemplarResult exemplars;
  ReportDocument report;
  OutputFiles files;
};

namespace detail {

template <typename T>
std::string render_delimited(const T& data) {
  std::ostringstream o;
  write_delimited(o, data);
  return o.str();
}

inline std::string file_safe(const std::string& id) {
  std::string out = id;
  for (char& c : out)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  return out;
}

}  // namespace detail

// Speed paired with acceleration at each interior fix; the speed is the mean
// of the two adjacent segment speeds.
inline std::vector<std::pair<double, double>> speed_acceleration_pairs(const Trajectory& traj) {
  const auto v = speed_series(traj).values;
  const auto a = acceleration_series(traj).values;
  std::vector<std::pair<double, double>> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.emplace_back(0.5 * (v[i] + v[i + 1]), a[i]);
  return out;
}

inline DescribeResult describe_corpus(const std::vector<Trajectory>& trajectories, const Config& config,
                                      std::optional<IngestReport> ingest = std::nullopt) {
  if (trajectories.empty()) throw Error("no_admitted", "no admitted trajectories");

  DescribeResult r;
  r.description = run_tumd(trajectories, config.taxonomy(), config.pipeline);
  r.effectiveness = evaluate_effectiveness(r.description);

  const auto& first = r.description.first;
  std::vector<FeatureVector> zone0;
  for (std::size_t i = 0; i < first.size(); ++i)
    if (first.zones[i] == ZoneLabel::common) zone0.push_back(r.description.features[i]);
  r.exemplars = zone0_exemplars(std::move(zone0), config.kmeans_options());

  r.report = make_report(r.description, r.effectiveness, r.exemplars, config.echo(), std::move(ingest));
  r.files["report.json"] = emit_report(r.report, ReportFormat::structured);
  r.files["instances.csv"] = emit_report(r.report, ReportFormat::delimited);
  r.files["summary.txt"] = emit_report(r.report, ReportFormat::summary);
  if (config.plots == PlotMode::none) return r;

  std::vector<std::pair<std::string, ScatterData>> scatters;
  scatters.emplace_back("pass1", scatter_data(first, config.pipeline.threshold));
  for (const auto* p : {r.description.refine_x ? &*r.description.refine_x : nullptr,
                        r.description.refine_y ? &*r.description.refine_y : nullptr})
    if (p) scatters.emplace_back("pass2_" + detail::file_safe(p->branch), scatter_data(*p, config.pipeline.threshold));
  const auto donut = donut_data(r.description.breakdown);

  for (const auto& [name, s] : scatters) r.files["plots/scatter_" + name + ".csv"] = detail::render_delimited(s);
  r.files["plots/donut.csv"] = detail::render_delimited(donut);

  std::unordered_map<std::string, const Trajectory*> by_id;
  for (const auto& t : trajectories) by_id.emplace(t.id, &t);
  for (const auto& ex : r.exemplars.exemplars) {
    const auto* traj = by_id.at(ex.id);
    const auto stem = detail::file_safe(ex.id);
    const auto speeds = speed_series(*traj).values;
    if (speeds.size() >= 2)
      r.files["plots/density_speed_" + stem + ".csv"] =
          detail::render_delimited(density_1d(speeds, config.density_power_transform, "speed " + ex.id));
    const auto pairs = speed_acceleration_pairs(*traj);
    if (pairs.size() >= 2)
      r.files["plots/density2d_speed_acceleration_" + stem + ".csv"] =
          detail::render_delimited(density_2d(pairs, config.density_power_transform, "speed", "acceleration"));
  }

  if (config.plots == PlotMode::svg) {
    for (const auto& [name, s] : scatters) r.files["plots/scatter_" + name + ".svg"] = render_svg(s);
    r.files["plots/donut.svg"] = render_svg(donut);
  }
  return r;
}

}  // namespace tumd
