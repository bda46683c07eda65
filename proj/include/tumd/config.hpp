#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tumd/error.hpp"
#include "tumd/features.hpp"
#include "tumd/ingest.hpp"
#include "tumd/kmeans.hpp"
#include "tumd/pipeline.hpp"

namespace tumd {

enum class PlotMode { none, data, svg };

inline PlotMode parse_plot_mode(std::string_view s) {
  if (s == "none") return PlotMode::none;
  if (s == "data") return PlotMode::data;
  if (s == "svg") return PlotMode::svg;
  throw Error("bad_config", "plots must be none, data or svg, got '" + std::string(s) + "'");
}

inline std::string_view to_string(PlotMode m) {
  return m == PlotMode::none ? "none" : m == PlotMode::data ? "data" : "svg";
}

// Every tunable of a describe run. Flat "key = value" files map onto it;
// see apply_config_entry for the key list.
struct Config {
  Schema schema;
  CoordinateMode mode = CoordinateMode::planar;
  std::size_t min_fixes = 10;

  PipelineConfig pipeline;
  std::map<std::string, std::vector<std::string>> taxonomy_overrides;

  std::size_t k_max = 10;
  std::size_t kmeans_restarts = 50;
  std::uint64_t seed = 0;
  PlotMode plots = PlotMode::data;
  bool density_power_transform = true;

  Taxonomy taxonomy() const {
    auto tax = default_taxonomy();
    return taxonomy_overrides.empty() ? tax : tax.with_leaf_overrides(taxonomy_overrides);
  }

  KMeansOptions kmeans_options() const {
    KMeansOptions o;
    o.k_max = k_max;
    o.restarts = kmeans_restarts;
    o.seed = seed;
    o.parallelism = pipeline.parallelism;
    return o;
  }

  // Ordered key/value echo of the effective configuration.
  std::vector<std::pair<std::string, std::string>> echo() const {
    std::vector<std::pair<std::string, std::string>> out = {
        {"ingest.id_col", schema.id_col},
        {"ingest.t_col", schema.t_col},
        {"ingest.x_col", schema.x_col},
        {"ingest.y_col", schema.y_col},
        {"ingest.delimiter", std::string(1, schema.delimiter)},
        {"ingest.mode", std::string(to_string(mode))},
        {"ingest.min_fixes", std::to_string(min_fixes)},
        {"scoring.method", "distance_based"},
        {"scoring.radius", "mean_pairwise_distance"},
        {"pipeline.threshold", format_double(pipeline.threshold)},
        {"pipeline.pass1.x", pipeline.first.x},
        {"pipeline.pass1.y", pipeline.first.y},
    };
    for (const auto& [node, axes] : pipeline.refine) {
      out.emplace_back("pipeline.refine." + node + ".x", axes.x);
      out.emplace_back("pipeline.refine." + node + ".y", axes.y);
    }
    for (const auto& [leaf, names] : taxonomy_overrides) {
      std::string joined;
      for (const auto& n : names) joined += (joined.empty() ? "" : ",") + n;
      out.emplace_back("pipeline.taxonomy." + leaf, joined);
    }
    out.emplace_back("report.k_max", std::to_string(k_max));
    out.emplace_back("report.kmeans_restarts", std::to_string(kmeans_restarts));
    out.emplace_back("report.seed", std::to_string(seed));
    out.emplace_back("report.plots", std::string(to_string(plots)));
    out.emplace_back("report.density_power_transform", density_power_transform ? "true" : "false");
    return out;
  }
};

namespace detail {

inline std::size_t to_size(const std::string& key, std::string_view v) {
  std::size_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw Error("bad_config", key + " expects a non-negative integer, got '" + std::string(v) + "'");
  return out;
}

inline bool to_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("bad_config", key + " expects true/false, got '" + std::string(v) + "'");
}

inline std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  while (!v.empty()) {
    const auto pos = v.find(',');
    const auto item = trim(v.substr(0, pos));
    if (!item.empty()) out.emplace_back(item);
    if (pos == std::string_view::npos) break;
    v.remove_prefix(pos + 1);
  }
  return out;
}

}  // namespace detail

inline void apply_config_entry(Config& cfg, const std::string& key, std::string_view value) {
  value = trim(value);
  const std::string v(value);
  if (key == "ingest.id_col") cfg.schema.id_col = v;
  else if (key == "ingest.t_col") cfg.schema.t_col = v;
  else if (key == "ingest.x_col") cfg.schema.x_col = v;
  else if (key == "ingest.y_col") cfg.schema.y_col = v;
  else if (key == "ingest.delimiter") {
    if (v == "\\t" || v == "tab") cfg.schema.delimiter = '\t';
    else if (v.size() == 1) cfg.schema.delimiter = v[0];
    else throw Error("bad_config", "ingest.delimiter must be a single character or 'tab'");
  } else if (key == "ingest.mode") cfg.mode = parse_coordinate_mode(v);
  else if (key == "ingest.min_fixes") {
    cfg.min_fixes = detail::to_size(key, v);
    if (cfg.min_fixes < 3) throw Error("bad_config", "ingest.min_fixes must be at least 3");
  } else if (key == "scoring.method") {
    if (v != "distance_based") throw Error("bad_config", "only scoring.method = distance_based is supported");
  } else if (key == "scoring.radius") {
    if (v != "mean_pairwise_distance") throw Error("bad_config", "only scoring.radius = mean_pairwise_distance is supported");
  } else if (key == "pipeline.threshold") {
    const auto t = parse_double(v);
    if (!t || *t < 0.0 || *t > 1.0) throw Error("bad_config", "pipeline.threshold must be in [0, 1]");
    cfg.pipeline.threshold = *t;
  } else if (key == "pipeline.pass1.x") cfg.pipeline.first.x = v;
  else if (key == "pipeline.pass1.y") cfg.pipeline.first.y = v;
  else if (key == "pipeline.threads") cfg.pipeline.parallelism.threads = detail::to_size(key, v);
  else if (key.rfind("pipeline.refine.", 0) == 0) {
    const auto rest = key.substr(16);
    const auto dot = rest.rfind('.');
    if (dot == std::string::npos || (rest.substr(dot) != ".x" && rest.substr(dot) != ".y"))
      throw Error("bad_config", "expected pipeline.refine.<Node>.x or .y, got '" + key + "'");
    auto& axes = cfg.pipeline.refine[rest.substr(0, dot)];
    (rest.back() == 'x' ? axes.x : axes.y) = v;
  } else if (key.rfind("pipeline.taxonomy.", 0) == 0) {
    cfg.taxonomy_overrides[key.substr(18)] = detail::split_list(value);
  } else if (key == "report.k_max") cfg.k_max = detail::to_size(key, v);
  else if (key == "report.kmeans_restarts") cfg.kmeans_restarts = detail::to_size(key, v);
  else if (key == "report.seed") cfg.seed = detail::to_size(key, v);
  else if (key == "report.plots") cfg.plots = parse_plot_mode(v);
  else if (key == "report.density_power_transform") cfg.density_power_transform = detail::to_bool(key, v);
  else throw Error("bad_config", "unknown configuration key '" + key + "'");
}

// Reads "key = value" lines; blank lines and '#' comments are ignored.
inline void load_config(std::istream& in, Config& cfg) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const auto body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw Error("bad_config", "line " + std::to_string(lineno) + ": expected key = value");
    apply_config_entry(cfg, std::string(trim(body.substr(0, eq))), body.substr(eq + 1));
  }
}

}  // namespace tumd
