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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "fdqn/errors.hpp"
#include "gradient_oracle.hpp"
#include "test_networks.hpp"

namespace fdqn {
namespace {

using testing::RandomNetwork;
using testing::RandomState;

TEST(QNetworkTest, ArchitectureWidths) {
  std::mt19937_64 rng(1);
  const QNetwork loc = InitNetwork(SensorMode::kLocalization, rng);
  EXPECT_EQ(loc.LayerSizes(), (std::vector<std::size_t>{11, 128, 64, 32, 1}));
  const QNetwork lm = InitNetwork(SensorMode::kLandmarks, rng);
  EXPECT_EQ(lm.LayerSizes(), (std::vector<std::size_t>{15, 128, 64, 32, 1}));
}

TEST(QNetworkTest, ParameterCount) {
  const QNetwork net(SensorMode::kLocalization, 6);
  EXPECT_EQ(net.ParameterCount(),
            11u * 128 + 128 + 128 * 64 + 64 + 64 * 32 + 32 + 32 * 1 + 1);
  EXPECT_EQ(net.ParameterCount(), 11905u);
}

TEST(QNetworkTest, UniformInitIsSeededAndBounded) {
  std::mt19937_64 a(99), b(99);
  const QNetwork na = InitNetwork(SensorMode::kLocalization, a);
  const QNetwork nb = InitNetwork(SensorMode::kLocalization, b);
  for (std::size_t l = 0; l < na.layers().size(); ++l) {
    EXPECT_EQ(na.layers()[l].weights, nb.layers()[l].weights);
    for (double w : na.layers()[l].weights) EXPECT_LE(std::abs(w), 0.05);
    for (double bias : na.layers()[l].biases) EXPECT_EQ(bias, 0.0);
  }
}

TEST(QNetworkTest, ZeroNetworkOutputsZero) {
  const QNetwork net(SensorMode::kLocalization, 6);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(net.Forward(RandomState(rng, 6), ActionFromIndex(i % 5)), 0.0);
  }
}

TEST(QNetworkTest, ForwardIsDeterministic) {
  std::mt19937_64 rng(4);
  const QNetwork net = InitNetwork(SensorMode::kLocalization, rng);
  const auto s = RandomState(rng, 6);
  const double first = net.Forward(s, Action::kUp);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(net.Forward(s, Action::kUp), first);
}

TEST(QNetworkTest, HandBuiltSingleHiddenUnit) {
  const std::size_t hidden[] = {1};
  QNetwork net(SensorMode::kLocalization, 2, hidden);
  // Input [x0, x1, onehot(5)] -> relu(w.x + b) -> v*h + c
  DenseLayer& l0 = net.layers()[0];
  l0.weight(0, 0) = 0.5;
  l0.weight(1, 0) = -2.0;
  l0.weight(2 + ActionIndex(Action::kLeft), 0) = 0.25;
  l0.biases[0] = 0.1;
  net.layers()[1].weight(0, 0) = 3.0;
  net.layers()[1].biases[0] = -1.0;
  const std::vector<double> x = {2.0, -0.5};
  // relu(0.5*2 + -2*-0.5 + 0.25 + 0.1) = 2.35 -> 3*2.35 - 1
  EXPECT_DOUBLE_EQ(net.Forward(x, Action::kLeft), 3.0 * 2.35 - 1.0);
  // relu(0.5*2 + 1 + 0 + 0.1) = 2.1
  EXPECT_DOUBLE_EQ(net.Forward(x, Action::kRight), 3.0 * 2.1 - 1.0);
  const std::vector<double> y = {-4.0, 0.0};
  EXPECT_DOUBLE_EQ(net.Forward(y, Action::kLeft), -1.0);  // hidden unit inactive
}

TEST(QNetworkTest, QValuesMatchIndividualForwardPasses) {
  std::mt19937_64 rng(12);
  const QNetwork net = RandomNetwork(rng);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = RandomState(rng, 6);
    const auto q = net.QValues(s);
    for (Action a : kAllActions) EXPECT_EQ(q[ActionIndex(a)], net.Forward(s, a));
  }
}

TEST(QNetworkTest, WidthMismatchThrows) {
  const QNetwork net(SensorMode::kLocalization, 6);
  const std::vector<double> s(10, 0.0);
  EXPECT_THROW(net.Forward(s, Action::kUp), DimensionError);
  EXPECT_THROW(net.QValues(s), DimensionError);
}

TEST(QNetworkTest, PositivelyHomogeneousWithoutBiasesOrActionWeights) {
  // With zero biases and zero action rows, every pre-activation of the first
  // layer scales by alpha, and ReLU layers pass that scaling through.
  std::mt19937_64 rng(21);
  QNetwork net = InitNetwork(SensorMode::kLocalization, rng);
  DenseLayer& l0 = net.layers()[0];
  for (std::size_t a = 0; a < kNumActions; ++a)
    for (std::size_t o = 0; o < l0.out; ++o) l0.weight(6 + a, o) = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = RandomState(rng, 6);
    const double alpha = 0.5 + trial;
    std::vector<double> scaled(s);
    for (double& v : scaled) v *= alpha;
    EXPECT_NEAR(net.Forward(scaled, Action::kUp), alpha * net.Forward(s, Action::kUp), 1e-12);
  }
}

TEST(LossAndGradientsTest, ZeroResidualGivesZeroGradient) {
  std::mt19937_64 rng(8);
  const QNetwork net = RandomNetwork(rng);
  const auto s = RandomState(rng, 6);
  const auto lg = ComputeLossAndGradients(net, s, Action::kDown, net.Forward(s, Action::kDown));
  EXPECT_EQ(lg.loss, 0.0);
  for (const DenseLayer& l : lg.gradients) {
    for (double g : l.weights) EXPECT_EQ(g, 0.0);
    for (double g : l.biases) EXPECT_EQ(g, 0.0);
  }
}

TEST(LossAndGradientsTest, ZeroNetworkUnitTarget) {
  const QNetwork net(SensorMode::kLocalization, 6);
  const std::vector<double> s(6, 0.3);
  EXPECT_DOUBLE_EQ(ComputeLossAndGradients(net, s, Action::kCoast, 1.0).loss, 0.5);
}

TEST(LossAndGradientsTest, NonFiniteTargetThrows) {
  const QNetwork net(SensorMode::kLocalization, 6);
  const std::vector<double> s(6, 0.0);
  EXPECT_THROW(ComputeLossAndGradients(net, s, Action::kUp, std::nan("")), NumericalError);
}

TEST(LossAndGradientsTest, MatchesCentralFiniteDifferences) {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> target(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const QNetwork net = RandomNetwork(rng, trial % 2 ? SensorMode::kLandmarks : SensorMode::kLocalization);
    const auto s = RandomState(rng, net.state_len());
    const Action a = ActionFromIndex(trial % kNumActions);
    const double t = target(rng);
    const auto analytic = ComputeLossAndGradients(net, s, a, t);
    const auto numeric = testing::FiniteDifferenceGradients(net, s, a, t);
    EXPECT_LT(testing::MaxRelativeError(analytic.gradients, numeric), 1e-4) << "trial " << trial;
  }
}

TEST(LossAndGradientsTest, AccumulateScalesAndSums) {
  std::mt19937_64 rng(31);
  const QNetwork net = RandomNetwork(rng);
  const auto s1 = RandomState(rng, 6);
  const auto s2 = RandomState(rng, 6);
  ParameterSet sum = net.ZeroGradients();
  net.AccumulateGradients(s1, Action::kUp, 0.3, sum, 0.5);
  net.AccumulateGradients(s2, Action::kLeft, -0.2, sum, 0.5);
  const auto g1 = ComputeLossAndGradients(net, s1, Action::kUp, 0.3).gradients;
  const auto g2 = ComputeLossAndGradients(net, s2, Action::kLeft, -0.2).gradients;
  for (std::size_t l = 0; l < sum.size(); ++l) {
    for (std::size_t i = 0; i < sum[l].weights.size(); ++i) {
      EXPECT_NEAR(sum[l].weights[i], 0.5 * (g1[l].weights[i] + g2[l].weights[i]), 1e-15);
    }
  }
}

TEST(RmsPropTest, ScalarUpdateFromZeroCache) {
  const std::size_t no_hidden[] = {1};
  QNetwork net(SensorMode::kLocalization, 1, no_hidden);
  OptimizerState opt = OptimizerState::For(net);
  ParameterSet g = net.ZeroGradients();
  g[0].weights[0] = 1.0;
  RmsPropUpdate(net, opt, g);
  EXPECT_NEAR(opt.cache[0].weights[0], 0.1, 1e-16);
  EXPECT_NEAR(net.layers()[0].weights[0], -5e-6 / (std::sqrt(0.1) + 1e-8), 1e-18);
  EXPECT_NEAR(net.layers()[0].weights[0], -1.5811e-5, 1e-9);
  EXPECT_EQ(net.layers()[0].weights[1], 0.0);
}

TEST(RmsPropTest, ZeroGradientOnlyDecaysCache) {
  std::mt19937_64 rng(3);
  QNetwork net = RandomNetwork(rng);
  const QNetwork before = net;
  OptimizerState opt = OptimizerState::For(net);
  for (DenseLayer& c : opt.cache) std::fill(c.weights.begin(), c.weights.end(), 2.0);
  RmsPropUpdate(net, opt, net.ZeroGradients());
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    EXPECT_EQ(net.layers()[l].weights, before.layers()[l].weights);
    EXPECT_EQ(net.layers()[l].biases, before.layers()[l].biases);
    for (double c : opt.cache[l].weights) EXPECT_DOUBLE_EQ(c, 0.9 * 2.0);
  }
}

TEST(RmsPropTest, StepOpposesGradientSign) {
  std::mt19937_64 rng(17);
  QNetwork net = RandomNetwork(rng);
  const QNetwork before = net;
  OptimizerState opt = OptimizerState::For(net);
  const auto s = RandomState(rng, 6);
  const auto g = ComputeLossAndGradients(net, s, Action::kUp, 3.0).gradients;
  RmsPropUpdate(net, opt, g);
  for (std::size_t l = 0; l < g.size(); ++l) {
    for (std::size_t i = 0; i < g[l].weights.size(); ++i) {
      const double delta = net.layers()[l].weights[i] - before.layers()[l].weights[i];
      if (g[l].weights[i] > 0) EXPECT_LT(delta, 0.0);
      if (g[l].weights[i] < 0) EXPECT_GT(delta, 0.0);
      if (g[l].weights[i] == 0) EXPECT_EQ(delta, 0.0);
    }
  }
}

TEST(RmsPropTest, SmallStepNeverIncreasesSampleLoss) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> target(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    QNetwork net = RandomNetwork(rng);
    OptimizerState opt = OptimizerState::For(net, {1e-8, 0.9, 1e-8});
    const auto s = RandomState(rng, 6);
    const Action a = ActionFromIndex(trial % kNumActions);
    const double t = target(rng);
    const auto lg = ComputeLossAndGradients(net, s, a, t);
    RmsPropUpdate(net, opt, lg.gradients);
    EXPECT_LE(testing::SampleLoss(net, s, a, t), lg.loss) << "trial " << trial;
  }
}

TEST(RmsPropTest, NonFiniteResultThrows) {
  const std::size_t hidden[] = {1};
  QNetwork net(SensorMode::kLocalization, 1, hidden);
  OptimizerState opt = OptimizerState::For(net);
  ParameterSet g = net.ZeroGradients();
  g[0].weights[0] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(RmsPropUpdate(net, opt, g), NumericalError);
}

TEST(RmsPropTest, ShapeMismatchThrows) {
  QNetwork net(SensorMode::kLocalization, 6);
  OptimizerState opt = OptimizerState::For(net);
  const QNetwork other(SensorMode::kLandmarks, 10);
  EXPECT_THROW(RmsPropUpdate(net, opt, other.ZeroGradients()), DimensionError);
}

TEST(ModelFileTest, RoundTripIsBitExact) {
  std::mt19937_64 rng(1234);
  const QNetwork net = RandomNetwork(rng);
  const QNetwork back = LoadModel(SaveModel(net));
  for (int i = 0; i < 100; ++i) {
    const auto s = RandomState(rng, 6, 3.0);
    const Action a = ActionFromIndex(i % kNumActions);
    const double x = net.Forward(s, a);
    const double y = back.Forward(s, a);
    EXPECT_EQ(std::memcmp(&x, &y, sizeof x), 0);
  }
}

TEST(ModelFileTest, RecordsLayoutAndMode) {
  std::mt19937_64 rng(1);
  const std::string doc = SaveModel(InitNetwork(SensorMode::kLocalization, rng));
  EXPECT_NE(doc.find("\"layer_sizes\":[11,128,64,32,1]"), std::string::npos);
  EXPECT_NE(doc.find("\"sensor_mode\":\"loc\""), std::string::npos);
  EXPECT_NE(doc.find("\"version\":1"), std::string::npos);
}

TEST(ModelFileTest, ModeMismatchIsFormatError) {
  std::mt19937_64 rng(1);
  const std::string doc = SaveModel(InitNetwork(SensorMode::kLandmarks, rng));
  EXPECT_NO_THROW(LoadModel(doc, SensorMode::kLandmarks));
  EXPECT_THROW(LoadModel(doc, SensorMode::kLocalization), FormatError);
}

TEST(ModelFileTest, RejectsCorruptDocuments) {
  std::mt19937_64 rng(1);
  std::string doc = SaveModel(InitNetwork(SensorMode::kLocalization, rng));
  EXPECT_THROW(LoadModel("{}"), FormatError);
  EXPECT_THROW(LoadModel("garbage"), FormatError);
  std::string wrong_version = doc;
  wrong_version.replace(wrong_version.find("\"version\":1"), 11, "\"version\":7");
  EXPECT_THROW(LoadModel(wrong_version), FormatError);
  std::string wrong_shape = doc;
  wrong_shape.replace(wrong_shape.find("[11,128"), 7, "[11,127");
  EXPECT_THROW(LoadModel(wrong_shape), FormatError);
}

}  // namespace
}  // namespace fdqn
