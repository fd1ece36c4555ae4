#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>

#include "fishschool/brownian.hpp"
#include "fishschool/dynamics.hpp"
#include "fishschool/model.hpp"
#include "fishschool/sde.hpp"

namespace {

using namespace fishschool;

ModelParams school_params(int n, int dim, double p) {
  ModelParams m;
  m.n_agents = n;
  m.dim = dim;
  m.alpha = 4.0;
  m.beta = 1.0;
  m.p_exp = p;
  m.q_exp = p + 1.0;
  m.r_crit = 0.5;
  m.external_force = LinearDrag{1.0};
  return m;
}

SwarmState spread_school(int n, int dim) {
  return random_school(dim, n, std::pow(static_cast<double>(n), 1.0 / dim),
                       0.25, 7);
}

// Integer exponents take the multiplication path; 3.62 goes through pow.
void BM_Drift(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const int dim = static_cast<int>(st.range(1));
  const double p = static_cast<double>(st.range(2)) / 100.0;
  DriftKernel kernel(validate(school_params(n, dim, p)));
  const SwarmState s = spread_school(n, dim);
  AgentMatrix accel;
  for (auto _ : st) {
    kernel.accelerations(s, accel);
    benchmark::DoNotOptimize(accel.data());
  }
  st.SetItemsProcessed(st.iterations() * n * (n - 1) / 2);
}
BENCHMARK(BM_Drift)
    ->ArgsProduct({{20, 50, 200}, {2, 3}, {200, 362, 400}})
    ->ArgNames({"N", "d", "p100"});

void BM_DriftWithObstacle(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  ModelParams m = school_params(n, 2, 2.0);
  Obstacle o{Vec::Zero(2), 1.2};
  o.center(0) = 40.0;
  m.external_force = ObstacleAvoidance{o, 1.0, 2.0, 3.0, 0.5};
  DriftKernel kernel(validate(m));
  SwarmState s = spread_school(n, 2);
  s.velocities.row(0).setConstant(1.75);
  AgentMatrix accel;
  for (auto _ : st) {
    kernel.accelerations(s, accel);
    benchmark::DoNotOptimize(accel.data());
  }
}
BENCHMARK(BM_DriftWithObstacle)->Arg(20)->Arg(50);

// One cohesion-style trial segment: 1000 noisy steps of a 50-agent school.
void BM_NoisySteps(benchmark::State& st) {
  const auto params = validate(school_params(50, 2, 4.0)).with_sigma(0.05);
  const SwarmState initial = spread_school(50, 2);
  const BrownianPaths paths{3, 50, 2, 1000};
  for (auto _ : st) {
    BrownianStream noise(paths);
    const auto traj = simulate(initial, params, noise,
                               SimulationOptions{1e-3, 1.0, 1000, 0.0});
    benchmark::DoNotOptimize(traj.states.back().positions.data());
  }
  st.SetItemsProcessed(st.iterations() * 1000);
}
BENCHMARK(BM_NoisySteps)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
