// Copyright 2026 The formation-dqn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fdqn/agent.hpp"
#include "fdqn/dynamics.hpp"
#include "fdqn/environment.hpp"
#include "fdqn/formation.hpp"
#include "fdqn/neural_net.hpp"
#include "fdqn/replay.hpp"

namespace fdqn {
namespace {

std::vector<double> RandomFeatures(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

SensorMode ModeArg(const benchmark::State& state) {
  return state.range(0) == 0 ? SensorMode::kLocalization : SensorMode::kLandmarks;
}

void BM_Forward(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const SensorMode mode = ModeArg(state);
  const QNetwork net = InitNetwork(mode, rng);
  const std::vector<double> s = RandomFeatures(rng, FeatureLength(mode));
  for (auto _ : state) benchmark::DoNotOptimize(net.Forward(s, Action::kUp));
}
BENCHMARK(BM_Forward)->Arg(0)->Arg(1);

void BM_QValues(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const SensorMode mode = ModeArg(state);
  const QNetwork net = InitNetwork(mode, rng);
  const std::vector<double> s = RandomFeatures(rng, FeatureLength(mode));
  for (auto _ : state) benchmark::DoNotOptimize(net.QValues(s));
}
BENCHMARK(BM_QValues)->Arg(0)->Arg(1);

void BM_TrainStep(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const SensorMode mode = ModeArg(state);
  QNetwork net = InitNetwork(mode, rng);
  OptimizerState opt = OptimizerState::For(net);
  AgentConfig cfg;
  cfg.warmup = 1000;
  ReplayMemory memory(cfg.warmup);
  std::uniform_real_distribution<double> reward(-1.0, 1.0);
  for (std::size_t i = 0; i < cfg.warmup; ++i) {
    memory.Push({{RandomFeatures(rng, FeatureLength(mode))},
                 ActionFromIndex(static_cast<int>(i % kNumActions)), reward(rng),
                 {RandomFeatures(rng, FeatureLength(mode))}, false});
  }
  for (auto _ : state) benchmark::DoNotOptimize(TrainStep(net, opt, memory, cfg, rng));
}
BENCHMARK(BM_TrainStep)->Arg(0)->Arg(1);

void BM_DynamicsStep(benchmark::State& state) {
  UavState s{0.1, -0.2, 0.3, 0.0};
  const Accel u = ActionToAccel(Action::kRight, 1.0);
  for (auto _ : state) {
    s = Step(s, u, 1e-6);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_DynamicsStep);

void BM_EnvironmentStep(benchmark::State& state) {
  std::mt19937_64 rng(1);
  EnvConfig cfg;
  cfg.n_uavs = static_cast<int>(state.range(0));
  const FormationSpec spec = MakeFigure8(cfg.n_uavs);
  Environment env(cfg);
  env.Reset(spec, rng);
  const std::vector<Action> actions(cfg.n_uavs, Action::kCoast);
  for (auto _ : state) {
    if (env.done()) {
      state.PauseTiming();
      env.Reset(spec, rng);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(env.Step(actions));
  }
}
BENCHMARK(BM_EnvironmentStep)->Arg(1)->Arg(5);

}  // namespace
}  // namespace fdqn

BENCHMARK_MAIN();
