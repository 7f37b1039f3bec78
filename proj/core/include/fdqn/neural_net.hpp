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

#ifndef FDQN_NEURAL_NET_HPP_
#define FDQN_NEURAL_NET_HPP_

#include <array>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdqn/dynamics.hpp"
#include "fdqn/environment.hpp"

namespace fdqn {

// Fully-connected layer. Weights are stored input-major: weights[j * out + o]
// connects input j to unit o.
struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;
  std::vector<double> biases;

  DenseLayer() = default;
  DenseLayer(std::size_t in_width, std::size_t out_width)
      : in(in_width), out(out_width), weights(in_width * out_width, 0.0), biases(out_width, 0.0) {}

  double& weight(std::size_t input, std::size_t unit) { return weights[input * out + unit]; }
  double weight(std::size_t input, std::size_t unit) const { return weights[input * out + unit]; }
};

// Same shapes as the network; used for gradients and optimizer caches.
using ParameterSet = std::vector<DenseLayer>;

void ZeroParameters(ParameterSet& params);
bool AllFinite(const ParameterSet& params);

inline constexpr std::array<std::size_t, 3> kDefaultHiddenWidths = {128, 64, 32};

// Q(s, a) approximator: [state ++ one_hot(a)] -> ReLU hidden layers -> linear
// scalar. Forward passes on a const network are safe from multiple threads.
class QNetwork {
 public:
  QNetwork() = default;

  // Zero-initialized network. The input width is state_len + kNumActions.
  QNetwork(SensorMode mode, std::size_t state_len,
           std::span<const std::size_t> hidden_widths = kDefaultHiddenWidths);

  // Weights i.i.d. uniform in [-limit, limit]; biases zero.
  void InitUniform(std::mt19937_64& rng, double limit = 0.05);

  SensorMode sensor_mode() const { return mode_; }
  std::size_t state_len() const { return state_len_; }
  std::vector<std::size_t> LayerSizes() const;
  std::size_t ParameterCount() const;

  ParameterSet& layers() { return layers_; }
  const ParameterSet& layers() const { return layers_; }

  // Throws DimensionError if the state width does not match.
  double Forward(std::span<const double> state, Action a) const;

  // Q(s, a) for every action in index order. Shares the state half of the
  // first layer; bitwise identical to calling Forward five times.
  std::array<double, kNumActions> QValues(std::span<const double> state) const;

  // Loss 0.5 * (target - Q(s, a))^2. Adds scale * dLoss/dparam into `grads`,
  // which must have this network's shapes. `target` is a constant.
  // Throws NumericalError if the loss is not finite.
  double AccumulateGradients(std::span<const double> state, Action a, double target,
                             ParameterSet& grads, double scale = 1.0) const;

  ParameterSet ZeroGradients() const;

 private:
  void CheckWidth(std::span<const double> state) const;

  SensorMode mode_ = SensorMode::kLocalization;
  std::size_t state_len_ = 0;
  ParameterSet layers_;
};

// Convenience: a network for `mode` with the default architecture, uniformly
// initialized.
QNetwork InitNetwork(SensorMode mode, std::mt19937_64& rng);

struct LossAndGradients {
  double loss = 0.0;
  ParameterSet gradients;
};

LossAndGradients ComputeLossAndGradients(const QNetwork& net, std::span<const double> state,
                                         Action a, double target);

struct RmsPropConfig {
  double learning_rate = 5e-6;
  double rho = 0.9;
  double epsilon = 1e-8;
};

struct OptimizerState {
  RmsPropConfig config;
  ParameterSet cache;  // running mean of squared gradients

  static OptimizerState For(const QNetwork& net, RmsPropConfig config = {});
};

// Per parameter: cache = rho*cache + (1-rho)*g^2; w -= lr*g/(sqrt(cache)+eps).
// Throws DimensionError on a shape mismatch and NumericalError if any
// parameter becomes non-finite.
void RmsPropUpdate(QNetwork& net, OptimizerState& opt, const ParameterSet& grads);

inline constexpr int kModelFormatVersion = 1;

// JSON model document:
//   {version, sensor_mode, layer_sizes, weights: [layer][unit][input], biases: [layer][unit]}
std::string SaveModel(const QNetwork& net);

// Throws FormatError on malformed documents, unknown versions or
// inconsistent shapes.
QNetwork LoadModel(std::string_view document);

// As above, and also rejects models whose sensor mode or input width does
// not match `expected`.
QNetwork LoadModel(std::string_view document, SensorMode expected);

void SaveModelFile(const QNetwork& net, const std::string& path);
QNetwork LoadModelFile(const std::string& path);

}  // namespace fdqn

#endif  // FDQN_NEURAL_NET_HPP_
