#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles/scoring_oracle.hpp"
#include "tumd/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tumd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tumd::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tumd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "_" +
            std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SynthThenDescribe) {
  ASSERT_EQ(run({"synth", "--out", path("corpus.csv"), "--labels", path("labels.csv"), "--n-baseline", "30",
                 "--n-speed-burst", "3", "--n-zigzag", "3", "--seed", "5"})
                .code,
            0);
  const auto r = run({"describe", "--input", path("corpus.csv"), "--out", path("out"), "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"report.json", "instances.csv", "summary.txt", "plots/scatter_pass1.csv", "plots/donut.csv"})
    EXPECT_TRUE(fs::exists(path("out") + "/" + f)) << f;
  EXPECT_NE(slurp(path("out") + "/summary.txt").find("pass 1"), std::string::npos);
  EXPECT_NE(slurp(path("labels.csv")).find("zigzag"), std::string::npos);
}

TEST_F(CliTest, NoAdmittedTrajectories) {
  std::ofstream(path("short.csv")) << "id,t,x,y\nA,0,0,0\nA,1,1,0\nB,0,5,5\nB,1,6,6\n";
  const auto r = run({"describe", "--input", path("short.csv"), "--out", path("out")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("no admitted trajectories"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("out") + "/report.json"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"describe", "--bogus"}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);
  EXPECT_EQ(run({"describe", "--input", path("x.csv")}).code, 1);  // --out missing
  EXPECT_EQ(run({"describe", "--input", path("missing.csv"), "--out", path("o")}).code, 2);
}

TEST_F(CliTest, FeaturesThenScoreMatchesBruteForce) {
  ASSERT_EQ(run({"synth", "--out", path("c.csv"), "--n-baseline", "25", "--n-loop", "4", "--seed", "9"}).code, 0);
  ASSERT_EQ(run({"features", "--input", path("c.csv"), "--out", path("f.tsv")}).code, 0);
  const auto r = run({"score", "--input", path("f.tsv"), "--node", "Speed", "--out", "-"});
  ASSERT_EQ(r.code, 0) << r.err;

  std::ifstream fin(path("f.tsv"));
  const auto vectors = tumd::read_feature_matrix(fin);
  const auto z = tumd::standardize(tumd::make_feature_matrix(vectors)).matrix;
  const auto taxonomy = tumd::default_taxonomy();
  const auto& idx = taxonomy.node("Speed").indices;
  oracle::Rows rows;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    rows.emplace_back();
    for (auto c : idx) rows.back().push_back(z.at(i, c));
  }
  const auto want = oracle::score(rows);

  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "id\tnode\tscore\tradius");
  std::size_t i = 0;
  while (std::getline(lines, line)) {
    std::istringstream f(line);
    std::string id, node, score, radius;
    std::getline(f, id, '\t');
    std::getline(f, node, '\t');
    std::getline(f, score, '\t');
    std::getline(f, radius, '\t');
    ASSERT_LT(i, vectors.size());
    EXPECT_EQ(id, vectors[i].trajectory_id);
    EXPECT_EQ(node, "Speed");
    EXPECT_NEAR(std::stod(score), want.scores[i], 1e-12);
    EXPECT_NEAR(std::stod(radius), want.radius, 1e-9 * want.radius);
    ++i;
  }
  EXPECT_EQ(i, vectors.size());
}

TEST_F(CliTest, ValidateReportsRejections) {
  std::ofstream(path("v.csv")) << "id,t,x,y\n"
                                  "A,0,0,0\nA,1,1,0\nA,2,2,0\nA,3,3,0\n"
                                  "B,0,0,0\nB,1,oops,0\nB,2,1,1\n";
  const auto r = run({"validate", "--input", path("v.csv"), "--min-fixes", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("admitted"), std::string::npos) << r.out;
}
