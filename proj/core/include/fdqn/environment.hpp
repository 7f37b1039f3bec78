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

#ifndef FDQN_ENVIRONMENT_HPP_
#define FDQN_ENVIRONMENT_HPP_

#include <array>
#include <cstddef>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "fdqn/dynamics.hpp"
#include "fdqn/formation.hpp"

namespace fdqn {

enum class SensorMode { kLocalization, kLandmarks };

// "loc" / "landmark"; the parser also accepts "localization" and "landmarks".
std::string_view SensorModeName(SensorMode mode);
SensorMode ParseSensorMode(std::string_view name);

// Length of the agent feature vector: 6 for kLocalization, 10 for kLandmarks.
std::size_t FeatureLength(SensorMode mode);

struct EnvConfig {
  double dt = 0.1;
  double a_max = 1.0;
  int episode_len = 400;
  int n_uavs = 1;
  double arena_half_width = 5.0;
  std::array<Goal, 4> landmarks = {{{10.0, 10.0}, {-10.0, 10.0}, {-10.0, -10.0}, {10.0, -10.0}}};
  SensorMode sensor_mode = SensorMode::kLocalization;
  double scale_pos = 10.0;
  double scale_vel = 5.0;

  // Throws ParameterError on a non-positive dt, scale, episode length, etc.
  void Validate() const;
};

struct AgentState {
  std::vector<double> features;
  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct StepResult {
  std::vector<AgentState> states;
  std::vector<double> rewards;
  bool done = false;
};

// Negative Euclidean distance to the goal.
double RawReward(double x, double y, const Goal& g);

// clip(r + 1, -1, 1).
double NormalizeReward(double raw);

// Builds the agent's feature vector from the vehicle state and its current goal.
//   kLocalization: [x, y, vx, vy, gx, gy]
//   kLandmarks:    [|p - L1|..|p - L4|, vx, vy, |g - L1|..|g - L4|]
// Positions and distances are divided by scale_pos, velocities by scale_vel.
AgentState Observe(const UavState& s, const Goal& g, const EnvConfig& cfg);

// Episodic multi-UAV world. UAVs are dynamically uncoupled; each one only
// sees its own state and goal. Not thread-safe.
class Environment {
 public:
  explicit Environment(EnvConfig cfg);

  // Starts a new episode: every UAV is placed uniformly at random in the
  // arena with zero velocity. Throws ArityError if spec.n_uavs differs from
  // the configured team size.
  std::vector<AgentState> Reset(const FormationSpec& spec, std::mt19937_64& rng);

  // Advances every UAV by one time step. Throws EpisodeFinishedError after
  // episode_len steps (or before the first Reset), ArityError on an action
  // count mismatch.
  StepResult Step(std::span<const Action> actions);

  const EnvConfig& config() const { return cfg_; }
  const FormationSpec& formation() const { return spec_; }
  int step_count() const { return step_count_; }
  double time() const { return step_count_ * cfg_.dt; }
  bool done() const { return done_; }
  std::span<const UavState> uavs() const { return uavs_; }
  Goal goal(int uav_index) const { return GoalPosition(spec_, uav_index, time()); }
  std::vector<AgentState> Observations() const;

  // Overrides one vehicle's state mid-episode (tests, scripted scenarios).
  void SetUavState(int uav_index, const UavState& s);

 private:
  EnvConfig cfg_;
  FormationSpec spec_;
  std::vector<UavState> uavs_;
  int step_count_ = 0;
  bool done_ = true;
};

}  // namespace fdqn

#endif  // FDQN_ENVIRONMENT_HPP_
