#include <gtest/gtest.h>

#include <sstream>

#include "tumd/config.hpp"

using namespace tumd;

TEST(Config, LoadsKeys) {
  std::istringstream in(R"(# comment
ingest.id_col = vessel
ingest.delimiter = tab
ingest.mode = geographic
ingest.min_fixes = 20
pipeline.threshold = 0.65   # stricter
pipeline.threads = 2
pipeline.refine.Geometric.x = Indentation
pipeline.refine.Geometric.y = Curvature
pipeline.taxonomy.Speed = spd_mean, spd_max
report.plots = svg
report.seed = 7
)");
  Config cfg;
  load_config(in, cfg);
  EXPECT_EQ(cfg.schema.id_col, "vessel");
  EXPECT_EQ(cfg.schema.delimiter, '\t');
  EXPECT_EQ(cfg.mode, CoordinateMode::geographic);
  EXPECT_EQ(cfg.min_fixes, 20u);
  EXPECT_EQ(cfg.pipeline.threshold, 0.65);
  EXPECT_EQ(cfg.pipeline.parallelism.threads, 2u);
  EXPECT_EQ(cfg.pipeline.refine.at("Geometric").x, "Indentation");
  EXPECT_EQ(cfg.taxonomy().node("Speed").indices.size(), 2u);
  EXPECT_EQ(cfg.plots, PlotMode::svg);
  EXPECT_EQ(cfg.seed, 7u);
}

TEST(Config, RejectsBadEntries) {
  for (const char* text : {"nope = 1", "pipeline.threshold = 1.5", "ingest.min_fixes = 2", "scoring.method = lof",
                           "report.plots = png", "just a line", "pipeline.refine.Kinematic = Speed"}) {
    std::istringstream in(text);
    Config cfg;
    EXPECT_THROW(load_config(in, cfg), Error) << text;
  }
}

TEST(Config, EchoRoundTrips) {
  Config cfg;
  cfg.pipeline.threshold = 0.6;
  cfg.taxonomy_overrides["Acceleration"] = {"acc_mean", "acc_sd"};
  std::ostringstream text;
  for (const auto& [k, v] : cfg.echo()) text << k << " = " << (v == "\t" ? "tab" : v) << '\n';
  std::istringstream in(text.str());
  Config back;
  load_config(in, back);
  EXPECT_EQ(back.echo(), cfg.echo());
}
