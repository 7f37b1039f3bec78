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

#include "fdqn/agent.hpp"

#include <algorithm>
#include <string>

#include "fdqn/errors.hpp"

namespace fdqn {

void AgentConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ParameterError(std::string("agent config: ") + what);
  };
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must be in [0, 1]");
  require(epsilon_train >= 0.0 && epsilon_train <= 1.0, "epsilon_train must be in [0, 1]");
  require(epsilon_eval >= 0.0 && epsilon_eval <= 1.0, "epsilon_eval must be in [0, 1]");
  require(minibatch >= 1, "minibatch must be >= 1");
}

std::array<double, kNumActions> QValues(const QNetwork& net, const AgentState& s) {
  return net.QValues(s.features);
}

std::size_t GreedyIndex(std::span<const double> q) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < q.size(); ++i) {
    if (q[i] > q[best]) best = i;
  }
  return best;
}

Action EpsilonGreedy(std::span<const double, kNumActions> q, double epsilon,
                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (epsilon > 0.0 && coin(rng) < epsilon) {
    std::uniform_int_distribution<std::size_t> any(0, kNumActions - 1);
    return ActionFromIndex(any(rng));
  }
  return ActionFromIndex(GreedyIndex(q));
}

Action SelectAction(const QNetwork& net, const AgentState& s, double epsilon,
                    std::mt19937_64& rng) {
  const auto q = QValues(net, s);
  return EpsilonGreedy(q, epsilon, rng);
}

double BellmanTarget(double reward, std::span<const double> next_q, double gamma) {
  return reward + gamma * next_q[GreedyIndex(next_q)];
}

double ComputeTarget(const Transition& t, const QNetwork& net, double gamma) {
  if (gamma == 0.0) return t.r;
  const auto q = QValues(net, t.s_next);
  return BellmanTarget(t.r, q, gamma);
}

double TrainStep(QNetwork& net, OptimizerState& opt, const ReplayMemory& memory,
                 const AgentConfig& cfg, std::mt19937_64& rng) {
  const std::size_t needed = std::max(cfg.warmup, cfg.minibatch);
  if (memory.size() < needed) {
    throw NotReadyError("replay memory holds " + std::to_string(memory.size()) + " of " +
                        std::to_string(needed) + " transitions required to train");
  }
  const auto batch = memory.Sample(cfg.minibatch, rng);

  std::vector<double> targets;
  targets.reserve(batch.size());
  for (const Transition* t : batch) targets.push_back(ComputeTarget(*t, net, cfg.gamma));

  ParameterSet grads = net.ZeroGradients();
  const double scale = 1.0 / static_cast<double>(batch.size());
  double loss_sum = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    loss_sum += net.AccumulateGradients(batch[i]->s.features, batch[i]->a, targets[i], grads, scale);
  }
  RmsPropUpdate(net, opt, grads);
  return loss_sum * scale;
}

double ComputeReturn(std::span<const double> rewards, double gamma) {
  double ret = 0.0;
  for (std::size_t i = rewards.size(); i-- > 0;) ret = rewards[i] + gamma * ret;
  return ret;
}

}  // namespace fdqn
