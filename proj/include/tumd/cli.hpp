#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tumd/config.hpp"
#include "tumd/describe.hpp"
#include "tumd/features.hpp"
#include "tumd/ingest.hpp"
#include "tumd/scoring.hpp"
#include "tumd/synth.hpp"

namespace tumd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

namespace cli_detail {

// Flags shared by subcommands that read trajectories; unset flags leave the
// config-file value alone.
struct IngestFlags {
  std::string input;
  std::string config_path;
  std::string mode;
  std::size_t min_fixes = 0;
  std::string delimiter;
  std::string id_col, t_col, x_col, y_col;
  std::size_t threads = 0;

  void attach(CLI::App* app, bool input_required = true) {
    auto* in = app->add_option("--input", input, "Delimited trajectory file (header row required)");
    if (input_required) in->required();
    app->add_option("--config", config_path, "Flat key = value configuration file");
    app->add_option("--mode", mode, "Coordinate mode")->check(CLI::IsMember({"geographic", "planar"}));
    app->add_option("--min-fixes", min_fixes, "Minimum fixes for a trajectory to be admitted");
    app->add_option("--delimiter", delimiter, "Field delimiter (single character or 'tab')");
    app->add_option("--id-col", id_col, "Trajectory id column");
    app->add_option("--t-col", t_col, "Timestamp column");
    app->add_option("--x-col", x_col, "x / longitude column");
    app->add_option("--y-col", y_col, "y / latitude column");
    app->add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  void apply(Config& cfg) const {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error("io", "cannot open config file '" + config_path + "'");
      load_config(in, cfg);
    }
    if (!mode.empty()) apply_config_entry(cfg, "ingest.mode", mode);
    if (min_fixes != 0) apply_config_entry(cfg, "ingest.min_fixes", std::to_string(min_fixes));
    if (!delimiter.empty()) apply_config_entry(cfg, "ingest.delimiter", delimiter);
    if (!id_col.empty()) cfg.schema.id_col = id_col;
    if (!t_col.empty()) cfg.schema.t_col = t_col;
    if (!x_col.empty()) cfg.schema.x_col = x_col;
    if (!y_col.empty()) cfg.schema.y_col = y_col;
    if (threads != 0) cfg.pipeline.parallelism.threads = threads;
  }
};

inline IngestResult read_trajectories(const std::string& path, const Config& cfg) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open input file '" + path + "'");
  return parse_trajectories(in, cfg.schema, cfg.mode, cfg.min_fixes);
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("io", "failed writing '" + path.string() + "'");
}

inline void emit(const std::string& out_path, const std::string& text, std::ostream& out) {
  if (out_path.empty() || out_path == "-") out << text;
  else write_text(out_path, text);
}

inline void print_ingest(std::ostream& out, const IngestReport& r) {
  out << "admitted: " << r.admitted << "\nrejected: " << r.rejected.size()
      << "\nduplicates_dropped: " << r.duplicates_dropped << "\nrows_rejected: " << r.rows_rejected << '\n';
  for (const auto& rej : r.rejected) out << "  " << rej.id << ": " << rej.reason << '\n';
}

}  // namespace cli_detail

// Entry point of the tumd tool. Exit codes: 0 success, 1 usage error,
// 2 data or I/O error.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Taxonomy-driven description of unlabeled movement data", "tumd"};
  app.require_subcommand(1);

  // describe
  cli_detail::IngestFlags describe_flags;
  std::string describe_out;
  double threshold = -1.0;
  std::optional<std::uint64_t> seed;
  std::string plots;
  auto* describe = app.add_subcommand("describe", "Run the full pipeline and write report + plot data");
  describe_flags.attach(describe);
  describe->add_option("--out", describe_out, "Output directory")->required();
  describe->add_option("--threshold", threshold, "Zone decision threshold")->check(CLI::Range(0.0, 1.0));
  describe->add_option("--seed", seed, "Seed for k-means restarts");
  describe->add_option("--plots", plots, "Plot output")->check(CLI::IsMember({"none", "data", "svg"}));

  // features
  cli_detail::IngestFlags feature_flags;
  std::string features_out;
  auto* features = app.add_subcommand("features", "Write the 72-variable feature matrix");
  feature_flags.attach(features);
  features->add_option("--out", features_out, "Output file ('-' for stdout)");

  // score
  std::string score_input, score_out, score_config;
  std::vector<std::string> score_nodes;
  std::size_t score_threads = 0;
  auto* score = app.add_subcommand("score", "Score a feature matrix per taxonomy node");
  score->add_option("--input", score_input, "Feature matrix file (tab-separated)")->required();
  score->add_option("--node", score_nodes, "Taxonomy node to score (repeatable; default: all)");
  score->add_option("--out", score_out, "Output file ('-' for stdout)");
  score->add_option("--config", score_config, "Configuration file (taxonomy overrides)");
  score->add_option("--threads", score_threads, "Worker threads (0 = all cores)");

  // synth
  SyntheticSpec synth_spec;
  std::string synth_out, synth_labels;
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus with planted anomalies");
  synth->add_option("--out", synth_out, "Output trajectory file ('-' for stdout)");
  synth->add_option("--labels", synth_labels, "Optional ground-truth file (id,archetype)");
  synth->add_option("--n-baseline", synth_spec.n_baseline, "Baseline trajectories");
  synth->add_option("--n-speed-burst", synth_spec.n_speed_burst, "10x speed trajectories");
  synth->add_option("--n-stop-and-go", synth_spec.n_stop_and_go, "Stop-and-go trajectories");
  synth->add_option("--n-zigzag", synth_spec.n_zigzag, "Zigzag trajectories");
  synth->add_option("--n-loop", synth_spec.n_loop, "Closed-loop trajectories");
  synth->add_option("--n-fixes", synth_spec.n_fixes, "Fixes per trajectory");
  synth->add_option("--seed", synth_spec.seed, "Generator seed");

  // validate
  cli_detail::IngestFlags validate_flags;
  auto* validate = app.add_subcommand("validate", "Run ingest checks only");
  validate_flags.attach(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (describe->parsed()) {
      Config cfg;
      describe_flags.apply(cfg);
      if (threshold >= 0.0) cfg.pipeline.threshold = threshold;
      if (seed) cfg.seed = *seed;
      if (!plots.empty()) cfg.plots = parse_plot_mode(plots);
      auto ingest = cli_detail::read_trajectories(describe_flags.input, cfg);
      if (ingest.trajectories.empty()) throw Error("no_admitted", "no admitted trajectories");
      const auto result = describe_corpus(ingest.trajectories, cfg, ingest.report);
      const std::filesystem::path dir(describe_out);
      for (const auto& [name, text] : result.files) cli_detail::write_text(dir / name, text);
      out << result.files.at("summary.txt");
      return kExitOk;
    }
    if (features->parsed()) {
      Config cfg;
      feature_flags.apply(cfg);
      auto ingest = cli_detail::read_trajectories(feature_flags.input, cfg);
      if (ingest.trajectories.empty()) throw Error("no_admitted", "no admitted trajectories");
      std::ostringstream text;
      write_feature_matrix(text, build_feature_vectors(ingest.trajectories, cfg.pipeline.parallelism));
      cli_detail::emit(features_out, text.str(), out);
      return kExitOk;
    }
    if (score->parsed()) {
      Config cfg;
      if (!score_config.empty()) {
        std::ifstream in(score_config);
        if (!in) throw Error("io", "cannot open config file '" + score_config + "'");
        load_config(in, cfg);
      }
      if (score_threads != 0) cfg.pipeline.parallelism.threads = score_threads;
      std::ifstream in(score_input);
      if (!in) throw Error("io", "cannot open feature matrix '" + score_input + "'");
      const auto vectors = read_feature_matrix(in);
      if (vectors.size() < 2) throw Error("too_few_instances", "scoring needs at least 2 instances");
      const auto taxonomy = cfg.taxonomy();
      if (score_nodes.empty())
        for (const auto& n : taxonomy.nodes()) score_nodes.push_back(n.name);
      const auto standardized = standardize(make_feature_matrix(vectors)).matrix;
      std::ostringstream text;
      text << "id\tnode\tscore\tradius\n";
      for (const auto& name : score_nodes) {
        const auto table = score_node(standardized, taxonomy.node(name), cfg.pipeline.parallelism);
        for (std::size_t i = 0; i < table.size(); ++i)
          text << table.ids[i] << '\t' << table.node << '\t' << format_double(table.scores[i]) << '\t'
               << format_double(table.radius) << '\n';
      }
      cli_detail::emit(score_out, text.str(), out);
      return kExitOk;
    }
    if (synth->parsed()) {
      const auto corpus = generate_synthetic_corpus(synth_spec);
      std::ostringstream text;
      write_trajectories(text, corpus.trajectories);
      cli_detail::emit(synth_out, text.str(), out);
      if (!synth_labels.empty()) {
        std::ostringstream labels;
        labels << "id,archetype\n";
        for (std::size_t i = 0; i < corpus.trajectories.size(); ++i)
          labels << corpus.trajectories[i].id << ',' << to_string(corpus.labels[i]) << '\n';
        cli_detail::write_text(synth_labels, labels.str());
      }
      return kExitOk;
    }
    if (validate->parsed()) {
      Config cfg;
      validate_flags.apply(cfg);
      const auto ingest = cli_detail::read_trajectories(validate_flags.input, cfg);
      cli_detail::print_ingest(out, ingest.report);
      for (const auto& t : ingest.trajectories)
        for (const auto& v : validate_trajectory(t, cfg.min_fixes))
          out << "  " << t.id << ": " << v.code << " at " << v.index << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace tumd
