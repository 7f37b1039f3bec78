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

#include "fdqn/neural_net.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "fdqn/errors.hpp"
#include "json.hpp"

namespace fdqn {
namespace {

// Per-thread scratch space so const forward passes stay allocation-free and
// safe to run concurrently.
struct Scratch {
  std::vector<std::vector<double>> act;  // post-activation per layer (last = output)
};

Scratch& ThreadScratch(const ParameterSet& layers) {
  thread_local Scratch scratch;
  if (scratch.act.size() != layers.size()) scratch.act.resize(layers.size());
  for (std::size_t l = 0; l < layers.size(); ++l) scratch.act[l].resize(layers[l].out);
  return scratch;
}

// y = b + sum_j x_j W[j, :], skipping zero inputs (exact: x_j = 0 adds nothing).
void DenseInto(const DenseLayer& layer, std::span<const double> x, std::vector<double>& y) {
  y.assign(layer.biases.begin(), layer.biases.end());
  const std::size_t out = layer.out;
  double* __restrict yp = y.data();
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* __restrict w = layer.weights.data() + j * out;
    for (std::size_t o = 0; o < out; ++o) yp[o] += xj * w[o];
  }
}

void AddRow(const DenseLayer& layer, std::size_t row, std::vector<double>& y) {
  const double* w = layer.weights.data() + row * layer.out;
  for (std::size_t o = 0; o < layer.out; ++o) y[o] += w[o];
}

void Relu(std::vector<double>& y) {
  for (double& v : y) v = v > 0.0 ? v : 0.0;
}

// Layers after the first; `scratch.act[0]` must already hold the first
// layer's pre-activation.
double FinishForward(const ParameterSet& layers, Scratch& scratch) {
  const std::size_t n = layers.size();
  if (n > 1) Relu(scratch.act[0]);
  for (std::size_t l = 1; l < n; ++l) {
    DenseInto(layers[l], scratch.act[l - 1], scratch.act[l]);
    if (l + 1 < n) Relu(scratch.act[l]);
  }
  return scratch.act[n - 1][0];
}

void CheckSameShapes(const ParameterSet& a, const ParameterSet& b, const char* what) {
  bool ok = a.size() == b.size();
  for (std::size_t l = 0; ok && l < a.size(); ++l) {
    ok = a[l].in == b[l].in && a[l].out == b[l].out && a[l].weights.size() == b[l].weights.size() &&
         a[l].biases.size() == b[l].biases.size();
  }
  if (!ok) throw DimensionError(std::string(what) + ": parameter shape mismatch");
}

}  // namespace

void ZeroParameters(ParameterSet& params) {
  for (DenseLayer& l : params) {
    std::fill(l.weights.begin(), l.weights.end(), 0.0);
    std::fill(l.biases.begin(), l.biases.end(), 0.0);
  }
}

bool AllFinite(const ParameterSet& params) {
  for (const DenseLayer& l : params) {
    for (double w : l.weights)
      if (!std::isfinite(w)) return false;
    for (double b : l.biases)
      if (!std::isfinite(b)) return false;
  }
  return true;
}

QNetwork::QNetwork(SensorMode mode, std::size_t state_len,
                   std::span<const std::size_t> hidden_widths)
    : mode_(mode), state_len_(state_len) {
  if (state_len == 0) throw DimensionError("QNetwork: state length must be >= 1");
  std::size_t in = state_len + kNumActions;
  for (std::size_t width : hidden_widths) {
    if (width == 0) throw DimensionError("QNetwork: hidden width must be >= 1");
    layers_.emplace_back(in, width);
    in = width;
  }
  layers_.emplace_back(in, 1);
}

void QNetwork::InitUniform(std::mt19937_64& rng, double limit) {
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (DenseLayer& l : layers_) {
    for (double& w : l.weights) w = dist(rng);
    std::fill(l.biases.begin(), l.biases.end(), 0.0);
  }
}

std::vector<std::size_t> QNetwork::LayerSizes() const {
  std::vector<std::size_t> sizes;
  if (layers_.empty()) return sizes;
  sizes.push_back(layers_.front().in);
  for (const DenseLayer& l : layers_) sizes.push_back(l.out);
  return sizes;
}

std::size_t QNetwork::ParameterCount() const {
  std::size_t n = 0;
  for (const DenseLayer& l : layers_) n += l.weights.size() + l.biases.size();
  return n;
}

void QNetwork::CheckWidth(std::span<const double> state) const {
  if (layers_.empty()) throw DimensionError("QNetwork: empty network");
  if (state.size() != state_len_) {
    throw DimensionError("QNetwork: state has " + std::to_string(state.size()) +
                         " features, network expects " + std::to_string(state_len_));
  }
}

double QNetwork::Forward(std::span<const double> state, Action a) const {
  CheckWidth(state);
  Scratch& scratch = ThreadScratch(layers_);
  DenseInto(layers_[0], state, scratch.act[0]);
  AddRow(layers_[0], state_len_ + ActionIndex(a), scratch.act[0]);
  return FinishForward(layers_, scratch);
}

std::array<double, kNumActions> QNetwork::QValues(std::span<const double> state) const {
  CheckWidth(state);
  Scratch& scratch = ThreadScratch(layers_);
  thread_local std::vector<double> state_part;
  DenseInto(layers_[0], state, state_part);
  std::array<double, kNumActions> q{};
  for (std::size_t a = 0; a < kNumActions; ++a) {
    scratch.act[0] = state_part;
    AddRow(layers_[0], state_len_ + a, scratch.act[0]);
    q[a] = FinishForward(layers_, scratch);
  }
  return q;
}

ParameterSet QNetwork::ZeroGradients() const {
  ParameterSet g;
  g.reserve(layers_.size());
  for (const DenseLayer& l : layers_) g.emplace_back(l.in, l.out);
  return g;
}

double QNetwork::AccumulateGradients(std::span<const double> state, Action a, double target,
                                     ParameterSet& grads, double scale) const {
  CheckWidth(state);
  CheckSameShapes(layers_, grads, "AccumulateGradients");
  const double q = Forward(state, a);
  const double residual = q - target;
  const double loss = 0.5 * residual * residual;
  if (!std::isfinite(loss)) throw NumericalError("non-finite loss (Q=" + std::to_string(q) + ")");

  // Forward left post-activations in this thread's scratch.
  Scratch& scratch = ThreadScratch(layers_);
  const std::size_t n = layers_.size();
  std::vector<double> delta{scale * residual};  // dL/d(pre-activation) of the current layer
  std::vector<double> prev_delta;
  for (std::size_t l = n; l-- > 0;) {
    const DenseLayer& layer = layers_[l];
    DenseLayer& g = grads[l];
    for (std::size_t o = 0; o < layer.out; ++o) g.biases[o] += delta[o];

    if (l == 0) {
      for (std::size_t j = 0; j < state_len_; ++j) {
        const double xj = state[j];
        if (xj == 0.0) continue;
        double* gw = g.weights.data() + j * layer.out;
        for (std::size_t o = 0; o < layer.out; ++o) gw[o] += xj * delta[o];
      }
      double* gw = g.weights.data() + (state_len_ + ActionIndex(a)) * layer.out;
      for (std::size_t o = 0; o < layer.out; ++o) gw[o] += delta[o];
      break;
    }

    const std::vector<double>& input = scratch.act[l - 1];
    prev_delta.assign(layer.in, 0.0);
    for (std::size_t j = 0; j < layer.in; ++j) {
      const double xj = input[j];
      if (xj <= 0.0) continue;  // ReLU inactive: no weight gradient, no backprop
      const double* w = layer.weights.data() + j * layer.out;
      double* gw = g.weights.data() + j * layer.out;
      double acc = 0.0;
      for (std::size_t o = 0; o < layer.out; ++o) {
        gw[o] += xj * delta[o];
        acc += w[o] * delta[o];
      }
      prev_delta[j] = acc;
    }
    delta.swap(prev_delta);
  }
  return loss;
}

QNetwork InitNetwork(SensorMode mode, std::mt19937_64& rng) {
  QNetwork net(mode, FeatureLength(mode));
  net.InitUniform(rng);
  return net;
}

LossAndGradients ComputeLossAndGradients(const QNetwork& net, std::span<const double> state,
                                         Action a, double target) {
  LossAndGradients out;
  out.gradients = net.ZeroGradients();
  out.loss = net.AccumulateGradients(state, a, target, out.gradients);
  return out;
}

OptimizerState OptimizerState::For(const QNetwork& net, RmsPropConfig config) {
  return {config, net.ZeroGradients()};
}

void RmsPropUpdate(QNetwork& net, OptimizerState& opt, const ParameterSet& grads) {
  ParameterSet& params = net.layers();
  CheckSameShapes(params, grads, "RmsPropUpdate");
  CheckSameShapes(params, opt.cache, "RmsPropUpdate");
  const double lr = opt.config.learning_rate;
  const double rho = opt.config.rho;
  const double eps = opt.config.epsilon;
  auto update = [&](std::vector<double>& w, std::vector<double>& c, const std::vector<double>& g) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      c[i] = rho * c[i] + (1.0 - rho) * g[i] * g[i];
      w[i] -= lr * g[i] / (std::sqrt(c[i]) + eps);
    }
  };
  for (std::size_t l = 0; l < params.size(); ++l) {
    update(params[l].weights, opt.cache[l].weights, grads[l].weights);
    update(params[l].biases, opt.cache[l].biases, grads[l].biases);
  }
  if (!AllFinite(params)) throw NumericalError("RMSProp update produced a non-finite parameter");
}

std::string SaveModel(const QNetwork& net) {
  nlohmann::ordered_json doc;
  doc["version"] = kModelFormatVersion;
  doc["sensor_mode"] = SensorModeName(net.sensor_mode());
  doc["layer_sizes"] = net.LayerSizes();
  nlohmann::ordered_json weights = nlohmann::ordered_json::array();
  nlohmann::ordered_json biases = nlohmann::ordered_json::array();
  for (const DenseLayer& l : net.layers()) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t o = 0; o < l.out; ++o) {
      std::vector<double> row(l.in);
      for (std::size_t j = 0; j < l.in; ++j) row[j] = l.weight(j, o);
      rows.push_back(std::move(row));
    }
    weights.push_back(std::move(rows));
    biases.push_back(l.biases);
  }
  doc["weights"] = std::move(weights);
  doc["biases"] = std::move(biases);
  return doc.dump();
}

QNetwork LoadModel(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("model: invalid JSON: ") + e.what());
  }
  try {
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw FormatError("model: unsupported format version " + std::to_string(version));
    }
    SensorMode mode;
    try {
      mode = ParseSensorMode(doc.at("sensor_mode").get<std::string>());
    } catch (const ParameterError& e) {
      throw FormatError(std::string("model: ") + e.what());
    }
    const auto sizes = doc.at("layer_sizes").get<std::vector<std::size_t>>();
    if (sizes.size() < 2 || sizes.back() != 1 || sizes.front() <= kNumActions) {
      throw FormatError("model: invalid layer_sizes");
    }
    std::vector<std::size_t> hidden(sizes.begin() + 1, sizes.end() - 1);
    QNetwork net(mode, sizes.front() - kNumActions, hidden);
    const auto& weights = doc.at("weights");
    const auto& biases = doc.at("biases");
    if (weights.size() != net.layers().size() || biases.size() != net.layers().size()) {
      throw FormatError("model: layer count does not match layer_sizes");
    }
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
      DenseLayer& layer = net.layers()[l];
      const auto rows = weights[l].get<std::vector<std::vector<double>>>();
      auto b = biases[l].get<std::vector<double>>();
      if (rows.size() != layer.out || b.size() != layer.out) {
        throw FormatError("model: layer " + std::to_string(l) + " has wrong unit count");
      }
      for (std::size_t o = 0; o < layer.out; ++o) {
        if (rows[o].size() != layer.in) {
          throw FormatError("model: layer " + std::to_string(l) + " has wrong input width");
        }
        for (std::size_t j = 0; j < layer.in; ++j) layer.weight(j, o) = rows[o][j];
      }
      layer.biases = std::move(b);
    }
    if (!AllFinite(net.layers())) throw FormatError("model: non-finite parameter");
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model: ") + e.what());
  }
}

QNetwork LoadModel(std::string_view document, SensorMode expected) {
  QNetwork net = LoadModel(document);
  if (net.sensor_mode() != expected || net.state_len() != FeatureLength(expected)) {
    throw FormatError("model: trained for sensor mode \"" +
                      std::string(SensorModeName(net.sensor_mode())) + "\" (input width " +
                      std::to_string(net.state_len() + kNumActions) + "), requested \"" +
                      std::string(SensorModeName(expected)) + "\"");
  }
  return net;
}

void SaveModelFile(const QNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open model file for writing: " + path);
  out << SaveModel(net) << '\n';
  if (!out) throw FormatError("failed writing model file: " + path);
}

QNetwork LoadModelFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open model file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return LoadModel(text);
}

}  // namespace fdqn
