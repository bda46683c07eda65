// Builds a small synthetic corpus, describes it, and prints the verbal
// summary plus the behavior of each planted anomaly.
#include <iostream>

#include "tumd/tumd.hpp"

int main() {
  tumd::SyntheticSpec spec;
  spec.n_baseline = 60;
  spec.n_speed_burst = 5;
  spec.n_zigzag = 5;
  spec.n_loop = 5;
  const auto corpus = tumd::generate_synthetic_corpus(spec);

  tumd::Config config;
  config.plots = tumd::PlotMode::none;
  const auto result = tumd::describe_corpus(corpus.trajectories, config);

  std::cout << result.files.at("summary.txt") << '\n';
  for (const auto& rec : result.report.instances) {
    if (rec.id.rfind("baseline", 0) == 0) continue;
    std::cout << rec.id << ": " << rec.pass1_behavior;
    if (rec.pass2_zone) std::cout << " -> " << rec.pass2_behavior;
    std::cout << '\n';
  }
  return 0;
}
