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

#ifndef FDQN_TESTS_TEST_NETWORKS_HPP_
#define FDQN_TESTS_TEST_NETWORKS_HPP_

#include <array>
#include <cstddef>
#include <random>
#include <vector>

#include "fdqn/neural_net.hpp"

namespace fdqn::testing {

// Network whose Q-values ignore the state: Q(s, a) = values[a] for any s.
// One hidden unit h = relu(1 + values[a] + offset), output h - 1 - offset,
// so any values above -1 - offset are representable.
inline QNetwork ConstantQNetwork(std::size_t state_len, const std::array<double, 5>& values,
                                 double offset = 0.0) {
  const std::size_t hidden[] = {1};
  QNetwork net(SensorMode::kLocalization, state_len, hidden);
  DenseLayer& l0 = net.layers()[0];
  for (std::size_t a = 0; a < values.size(); ++a) l0.weight(state_len + a, 0) = values[a];
  l0.biases[0] = 1.0 + offset;
  net.layers()[1].weight(0, 0) = 1.0;
  net.layers()[1].biases[0] = -1.0 - offset;
  return net;
}

inline std::vector<double> RandomState(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> s(n);
  for (double& v : s) v = d(rng);
  return s;
}

// Random biases too, so that bias paths and kinks are exercised.
inline QNetwork RandomNetwork(std::mt19937_64& rng, SensorMode mode = SensorMode::kLocalization) {
  QNetwork net(mode, FeatureLength(mode));
  net.InitUniform(rng, 0.3);
  std::uniform_real_distribution<double> d(-0.1, 0.1);
  for (DenseLayer& l : net.layers())
    for (double& b : l.biases) b = d(rng);
  return net;
}

}  // namespace fdqn::testing

#endif  // FDQN_TESTS_TEST_NETWORKS_HPP_
