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

#ifndef FDQN_AGENT_HPP_
#define FDQN_AGENT_HPP_

#include <array>
#include <cstddef>
#include <random>
#include <span>

#include "fdqn/dynamics.hpp"
#include "fdqn/environment.hpp"
#include "fdqn/neural_net.hpp"
#include "fdqn/replay.hpp"

namespace fdqn {

struct AgentConfig {
  double gamma = 0.95;
  double epsilon_train = 0.5;
  double epsilon_eval = 0.0;
  std::size_t minibatch = 16;
  std::size_t warmup = 10'000;  // random-policy transitions before learning starts

  void Validate() const;
};

std::array<double, kNumActions> QValues(const QNetwork& net, const AgentState& s);

// Index of the largest value; ties go to the lowest index.
std::size_t GreedyIndex(std::span<const double> q);

// With probability epsilon a uniformly random action (greedy one included),
// otherwise the argmax of q.
Action EpsilonGreedy(std::span<const double, kNumActions> q, double epsilon, std::mt19937_64& rng);
Action SelectAction(const QNetwork& net, const AgentState& s, double epsilon, std::mt19937_64& rng);

// r + gamma * max(next_q).
double BellmanTarget(double reward, std::span<const double> next_q, double gamma);

// Bellman target for a stored transition. Time-limit ends (t.done) still
// bootstrap from s_next.
double ComputeTarget(const Transition& t, const QNetwork& net, double gamma);

// One minibatch update: targets are computed with the pre-update network,
// gradients are averaged over the batch and applied with RMSProp. Returns
// the mean loss. Throws NotReadyError before warm-up and NumericalError on
// divergence.
double TrainStep(QNetwork& net, OptimizerState& opt, const ReplayMemory& memory,
                 const AgentConfig& cfg, std::mt19937_64& rng);

// sum_i gamma^i r_i over the given reward sequence.
double ComputeReturn(std::span<const double> rewards, double gamma);

}  // namespace fdqn

#endif  // FDQN_AGENT_HPP_
