// End-to-end runs of the documented example setups, driven by the shipped
// configs. Slower than the unit suite.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fishschool/cohesion.hpp"
#include "fishschool/harness/bootstrap_cache.hpp"
#include "fishschool/harness/config.hpp"
#include "fishschool/harness/run.hpp"
#include "fishschool/harness/serialize.hpp"
#include "fishschool/harness/sweeps.hpp"
#include "fishschool/metrics.hpp"
#include "fishschool/patterns.hpp"
#include "fishschool/sde.hpp"

namespace fishschool {

void PrintTo(PatternLabel label, std::ostream* os) { *os << to_string(label); }

namespace harness {
namespace {

namespace fs = std::filesystem;
using L = PatternLabel;

ExperimentConfig shipped(const std::string& name) {
  return load_config(fs::path(FISHSCHOOL_CONFIG_DIR) / name);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path scratch(const std::string& name) {
  return fs::temp_directory_path() / ("fishschool_examples_" + name);
}

// One cache for the whole binary; every sweep below reuses its schools.
BootstrapCache& cache() {
  static BootstrapCache instance;
  return instance;
}

TEST(PlanarEncounter, FastestPanelSchoolEndsPastTheObstacle) {
  auto config = shipped("pattern_run_p2.json");
  config.model.p_exp = 4.0;
  config.model.q_exp = 5.0;
  auto& avoid = std::get<ObstacleAvoidance>(config.model.external_force);
  avoid.p_obs = 4.0;
  avoid.q_obs = 5.0;
  const auto run = pattern_run(config, cache());
  Vec axis = Vec::Zero(2);
  axis(0) = 1.0;
  EXPECT_TRUE(passed_obstacle(run.summary, avoid.obstacle, axis))
      << "label " << to_string(run.label);
}

TEST(PlanarEncounter, VeryLargeSpeedAbortsInsteadOfProducingNaN) {
  auto config = shipped("pattern_run_p2.json");
  config.placement.speed = 2000.0;
  const auto run = pattern_run(config, cache());
  EXPECT_FALSE(completed(run.trajectory.termination));
  EXPECT_EQ(run.label, L::kBlowUp);
  for (const auto& s : run.trajectory.states) ASSERT_TRUE(s.all_finite());
}

TEST(SpeedSweep, CoarseGridVisitsEveryPattern) {
  const auto config = shipped("sweep_speed.json");
  const auto report = sweep_speed(config, {0.5, 2.0, 4.0, 10.0}, cache(), 4);
  EXPECT_EQ(report.labels, (std::vector<L>{L::kRebound, L::kPullback,
                                           L::kPassAndReunion, L::kSeparation}));
}

TEST(SpeedSweep, CrawlingSchoolRebounds) {
  const auto config = shipped("sweep_speed.json");
  const auto report = sweep_speed(config, {0.001}, cache(), 1);
  ASSERT_EQ(report.labels.size(), 1u);
  EXPECT_EQ(report.labels[0], L::kRebound) << report.errors[0];
}

TEST(CriticalDistanceSweep, SmallDistancesSeparate) {
  const auto config = shipped("sweep_rcrit.json");
  const auto report = sweep_critical_distance(config, {0.2, 0.3}, cache(), 2);
  EXPECT_EQ(report.labels, (std::vector<L>{L::kSeparation, L::kSeparation}));
}

TEST(CriticalDistanceSweep, LargeDistancesRebound) {
  const auto config = shipped("sweep_rcrit.json");
  const auto report = sweep_critical_distance(config, {2.1, 2.8}, cache(), 2);
  EXPECT_EQ(report.labels, (std::vector<L>{L::kRebound, L::kRebound}));
}

TEST(CriticalDistanceSweep, RelaxedSchoolIsStrictlySchooling) {
  const auto config = shipped("sweep_rcrit.json");
  const auto params = bootstrap_params(config, 0.5);
  const auto school = relax_to_schooling(params, {0.5, 1e-6, 0.0}, 1,
                                         bootstrap_options(config));
  EXPECT_EQ(epsilon_components(school, 0.5), 1);
  EXPECT_LE(sigma_v(school), 1e-6);
  EXPECT_EQ(school.size(), 20);
}

TEST(SpatialEncounter, SpeedLadderVisitsEveryPattern) {
  const auto base = shipped("pattern_run_3d.json");
  const std::vector<double> speeds{0.3, 2.5, 6.0, 13.5};
  const std::vector<L> expected{L::kRebound, L::kPullback, L::kPassAndReunion,
                                L::kSeparation};
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    auto config = base;
    config.placement.speed = speeds[i];
    const auto run = pattern_run(config, cache());
    EXPECT_EQ(run.label, expected[i]) << "speed " << speeds[i];
  }
}

TEST(FreeSchool, LowNoiseRunIsSchooling) {
  const fs::path dir = scratch("free");
  RunOptions options;
  options.out_dir = dir;
  const auto config = shipped("simulate_sigma002.json");
  ASSERT_EQ(run(config, options), kExitOk);
  const std::string summary = read_file(dir / "summary.json");
  EXPECT_NE(summary.find("\"schooling\": true"), std::string::npos) << summary;
  EXPECT_NE(summary.find(config_hash(config)), std::string::npos);
  fs::remove_all(dir);
}

TEST(FreeSchool, CohesionReportCarriesSigmaBar) {
  const fs::path dir = scratch("cohesion");
  auto config = shipped("cohesion.json");
  // Reduced trial count and grid so the run stays within a few minutes.
  config.cohesion.n_trials = 4;
  config.cohesion.sigma_step = 0.005;
  config.cohesion.coarse_step = 0.0;
  RunOptions options;
  options.out_dir = dir;
  options.workers = 4;
  ASSERT_EQ(run(config, options), kExitOk);
  const auto record = cohesion_record_from_json(read_file(dir / "report.json"));
  EXPECT_EQ(record.config_hash, config_hash(config));
  EXPECT_GE(record.report.sigma_bar, 0.02);
  EXPECT_LT(record.report.sigma_bar, 0.2);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace harness
}  // namespace fishschool
