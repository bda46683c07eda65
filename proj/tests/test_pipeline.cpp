#include <gtest/gtest.h>

#include <random>
#include <set>

#include "published.hpp"
#include "test_support.hpp"
#include "tumd/pipeline.hpp"
#include "tumd/synth.hpp"

using namespace tumd;

TEST(Zones, Quadrants) {
  EXPECT_EQ(classify_zone(0.2, 0.3), ZoneLabel::common);
  EXPECT_EQ(classify_zone(0.9, 0.1), ZoneLabel::uncommon_x);
  EXPECT_EQ(classify_zone(0.1, 0.9), ZoneLabel::uncommon_y);
  EXPECT_EQ(classify_zone(0.8, 0.7), ZoneLabel::hybrid);
  EXPECT_EQ(classify_zone(0.5, 0.5), ZoneLabel::hybrid);
  EXPECT_EQ(classify_zone(0.49999, 0.5), ZoneLabel::uncommon_y);
  EXPECT_EQ(classify_zone(0.7, 0.7, 0.75), ZoneLabel::common);
}

TEST(Zones, BehaviorNames) {
  EXPECT_EQ(zone_behavior(ZoneLabel::uncommon_x, "Speed", "Acceleration"), "pure Speed");
  EXPECT_EQ(zone_behavior(ZoneLabel::uncommon_y, "Speed", "Acceleration"), "pure Acceleration");
  EXPECT_EQ(zone_behavior(ZoneLabel::hybrid, "Kinematic", "Geometric"), "hybrid Kinematic/Geometric");
  EXPECT_EQ(to_string(ZoneLabel::uncommon_y), "Zone1");
}

namespace {

std::vector<FeatureVector> random_vectors(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FeatureVector> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(build_feature_vector(testing_support::random_walk(rng, 12 + i % 20, "w" + std::to_string(i))));
  return out;
}

}  // namespace

TEST(RunPass, SubsetClassificationOnly) {
  const auto vs = random_vectors(30, 1);
  const auto tax = default_taxonomy();
  const auto pass = run_pass(vs, tax.node("Speed"), tax.node("Acceleration"), {"w1", "w4", "w9"});
  EXPECT_EQ(pass.size(), 30u);
  EXPECT_EQ(pass.counts.total(), 3u);
  for (std::size_t i = 0; i < pass.size(); ++i) EXPECT_EQ(pass.classified(i), i == 1 || i == 4 || i == 9);

  const auto empty = run_pass(vs, tax.node("Speed"), tax.node("Acceleration"), {});
  EXPECT_EQ(empty.counts.total(), 0u);
  EXPECT_EQ(empty.x_scores, pass.x_scores);
  EXPECT_THROW(run_pass(vs, tax.node("Speed"), tax.node("Acceleration"), {"nope"}), Error);
}

TEST(Pipeline, IdenticalCorpusIsAllCommon) {
  std::vector<Trajectory> trajs;
  for (int i = 0; i < 12; ++i) {
    auto t = testing_support::planar_path({{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 3}}, 2.0, "same" + std::to_string(i));
    trajs.push_back(t);
  }
  const auto desc = run_tumd(trajs, default_taxonomy());
  EXPECT_EQ(desc.breakdown.first[ZoneLabel::common], 12u);
  const auto eff = evaluate_effectiveness(desc);
  EXPECT_FALSE(eff.pass1_effective);
  EXPECT_FALSE(eff.overall_effective);
}

TEST(Pipeline, Errors) {
  std::vector<Trajectory> one{testing_support::planar_path({{0, 0}, {1, 0}, {2, 0}})};
  EXPECT_THROW(run_tumd(one, default_taxonomy()), Error);
  auto vs = random_vectors(4, 2);
  vs[3].trajectory_id = vs[0].trajectory_id;
  EXPECT_THROW(describe_features(vs, default_taxonomy()), Error);
}

TEST(Pipeline, RefinementStaysInsidePureSets) {
  const auto corpus = generate_synthetic_corpus({.n_baseline = 60, .n_speed_burst = 8, .n_zigzag = 8, .seed = 4});
  const auto desc = run_tumd(corpus.trajectories, default_taxonomy());
  const auto& first = desc.first;
  ASSERT_TRUE(desc.refine_x && desc.refine_y);
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(desc.refine_x->classified(i), first.zones[i] == ZoneLabel::uncommon_x);
    EXPECT_EQ(desc.refine_y->classified(i), first.zones[i] == ZoneLabel::uncommon_y);
  }
  const auto& bd = desc.breakdown;
  EXPECT_EQ(bd.first.total(), bd.total);
  EXPECT_EQ(bd.x_branch.counts.total(), bd.first[ZoneLabel::uncommon_x]);
  EXPECT_EQ(bd.y_branch.counts.total(), bd.first[ZoneLabel::uncommon_y]);
  EXPECT_EQ(desc.refine_x->x_node, "Speed");
  EXPECT_EQ(desc.refine_y->y_node, "Indentation");
}

TEST(Pipeline, ThreadCountDoesNotChangeResults) {
  const auto corpus = generate_synthetic_corpus({.n_baseline = 100, .n_speed_burst = 10, .n_zigzag = 10, .seed = 8});
  PipelineConfig one, many;
  one.parallelism = {1};
  many.parallelism = {8};
  const auto a = run_tumd(corpus.trajectories, default_taxonomy(), one);
  const auto b = run_tumd(corpus.trajectories, default_taxonomy(), many);
  EXPECT_EQ(a.first.x_scores, b.first.x_scores);
  EXPECT_EQ(a.first.y_scores, b.first.y_scores);
  EXPECT_EQ(a.first.zones, b.first.zones);
  EXPECT_EQ(a.refine_x->x_scores, b.refine_x->x_scores);
  EXPECT_EQ(a.refine_y->zones, b.refine_y->zones);
}

TEST(Effectiveness, PublishedCaseStudies) {
  for (const auto& c : published::cases()) {
    const auto eff = evaluate_effectiveness(c.breakdown);
    EXPECT_EQ(eff.pass1_effective, c.pass1_effective) << c.name;
    EXPECT_EQ(eff.pass2_effective, c.pass2_effective) << c.name;
    EXPECT_EQ(eff.overall_effective, c.pass1_effective && c.pass2_effective) << c.name;
  }
  const auto ships = evaluate_effectiveness(published::cases()[0].breakdown);
  EXPECT_TRUE(ships.pass2_kinematic_successful);
  EXPECT_TRUE(ships.pass2_geometric_successful);
  EXPECT_NEAR(ships.pass1_uncommon_fraction, 0.72, 1e-12);
  const auto foxes = evaluate_effectiveness(published::cases()[1].breakdown);
  EXPECT_FALSE(foxes.pass2_kinematic_successful);
  EXPECT_FALSE(foxes.pass2_geometric_successful);
}

TEST(Effectiveness, StrictMajority) {
  const auto half = published::breakdown(50, 25, 25, 0, published::zones(0, 10, 0, 15), published::zones(0, 12, 0, 13));
  auto eff = evaluate_effectiveness(half);
  EXPECT_FALSE(eff.pass1_effective);  // exactly half uncommon
  EXPECT_FALSE(eff.pass2_effective);  // 10/25 and 12/25

  const auto tied = published::breakdown(10, 4, 6, 0, published::zones(0, 1, 1, 2), published::zones(0, 3, 0, 3));
  eff = evaluate_effectiveness(tied);
  EXPECT_FALSE(eff.x_branch.successful);  // 2 of 4
  EXPECT_FALSE(eff.y_branch.successful);  // 3 of 6
}

TEST(Effectiveness, AllCommon) {
  const auto bd = published::breakdown(100, 0, 0, 0, published::zones(0, 0, 0, 0), published::zones(0, 0, 0, 0));
  const auto eff = evaluate_effectiveness(bd);
  EXPECT_FALSE(eff.pass1_effective);
  EXPECT_FALSE(eff.pass2_effective);
  EXPECT_FALSE(eff.overall_effective);
}
