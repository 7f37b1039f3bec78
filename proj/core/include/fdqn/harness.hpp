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

#ifndef FDQN_HARNESS_HPP_
#define FDQN_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fdqn/agent.hpp"
#include "fdqn/environment.hpp"
#include "fdqn/formation.hpp"
#include "fdqn/neural_net.hpp"

namespace fdqn {

struct RunConfig {
  EnvConfig env;
  AgentConfig agent;
  RmsPropConfig optimizer;
  std::size_t replay_capacity = kDefaultReplayCapacity;
  int episodes = 300;
  std::uint64_t seed = 0;
  std::string model_out;
  std::string metrics_out;

  void Validate() const;
};

// Applies `key = value` lines on top of `base`. Blank lines and lines
// starting with '#' are ignored. Unknown keys and unparsable values throw
// ParseError.
RunConfig ParseRunConfig(std::string_view text, RunConfig base = {});
RunConfig LoadRunConfigFile(const std::string& path, RunConfig base = {});

struct EpisodeMetrics {
  int episode = 0;
  double total_clipped_reward = 0.0;
  double mean_loss = 0.0;  // 0 when no update ran during the episode
  double epsilon = 0.0;    // mean exploration rate over the episode's steps
  std::size_t train_steps = 0;
};

struct TrainResult {
  QNetwork net;
  std::vector<EpisodeMetrics> metrics;
  std::size_t train_steps = 0;
};

// The network a training run starts from (seeded from cfg.seed).
QNetwork InitialNetwork(const RunConfig& cfg);

using EpisodeCallback = std::function<void(const EpisodeMetrics&)>;

// Runs the act / store / learn cycle for cfg.episodes episodes on a
// single-UAV environment, each episode with a freshly sampled training
// formation. Deterministic for a fixed config. A NumericalError is rethrown
// with the episode and step where it happened.
TrainResult Train(const RunConfig& cfg, const EpisodeCallback& on_episode = {});

// Train, then write cfg.model_out and cfg.metrics_out (when non-empty).
TrainResult RunTraining(const RunConfig& cfg, const EpisodeCallback& on_episode = {});

inline constexpr std::string_view kMetricsHeader = "episode,total_clipped_reward,mean_loss,epsilon";
std::string MetricsToCsv(const std::vector<EpisodeMetrics>& metrics);
std::vector<EpisodeMetrics> MetricsFromCsv(std::string_view text);

struct EvalConfig {
  EnvConfig env;  // n_uavs is taken from the formation
  int episodes = 1;
  std::uint64_t seed = 0;
  int tail_steps = 100;
};

struct TrajectoryRow {
  int episode = 0;
  double t = 0.0;
  int uav_id = 0;
  double x = 0.0;
  double y = 0.0;
  double gx = 0.0;
  double gy = 0.0;
  double reward = 0.0;
};

struct EvalSummary {
  int episodes = 0;
  int n_uavs = 0;
  double mean_reward = 0.0;               // per UAV per step, normalized
  double mean_tracking_error = 0.0;       // over all steps
  double mean_tail_tracking_error = 0.0;  // over the last tail_steps steps
};

struct EvalResult {
  EvalSummary summary;
  std::vector<TrajectoryRow> rows;  // t = 0 row plus one row per step per UAV
};

// A controller instance for one UAV. Instances share frozen parameters and
// act only on their own observation.
class AgentInstance {
 public:
  explicit AgentInstance(std::shared_ptr<const QNetwork> net) : net_(std::move(net)) {}
  Action Act(const AgentState& s) const;

 private:
  std::shared_ptr<const QNetwork> net_;
};

// Greedy evaluation with one AgentInstance per UAV. Throws FormatError if
// the model's sensor mode differs from cfg.env.sensor_mode.
EvalResult Evaluate(const QNetwork& net, const FormationSpec& spec, const EvalConfig& cfg);

// Same protocol with uniformly random actions; a reference baseline.
EvalResult EvaluateRandomPolicy(const FormationSpec& spec, const EvalConfig& cfg);

inline constexpr std::string_view kTrajectoryHeader = "episode,t,uav_id,x,y,gx,gy,reward";
std::string TrajectoriesToCsv(const std::vector<TrajectoryRow>& rows);
std::vector<TrajectoryRow> TrajectoriesFromCsv(std::string_view text);
std::string SummaryToJson(const EvalSummary& summary);

// Whole-file helpers. Throw ParseError when the file cannot be opened.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

}  // namespace fdqn

#endif  // FDQN_HARNESS_HPP_
