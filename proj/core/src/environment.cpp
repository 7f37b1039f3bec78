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

#include "fdqn/environment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdqn/errors.hpp"

namespace fdqn {

std::string_view SensorModeName(SensorMode mode) {
  return mode == SensorMode::kLocalization ? "loc" : "landmark";
}

SensorMode ParseSensorMode(std::string_view name) {
  if (name == "loc" || name == "localization") return SensorMode::kLocalization;
  if (name == "landmark" || name == "landmarks") return SensorMode::kLandmarks;
  throw ParameterError("unknown sensor mode \"" + std::string(name) + "\" (expected loc|landmark)");
}

std::size_t FeatureLength(SensorMode mode) { return mode == SensorMode::kLocalization ? 6 : 10; }

void EnvConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ParameterError(std::string("environment config: ") + what);
  };
  require(dt > 0.0 && std::isfinite(dt), "dt must be positive");
  require(a_max > 0.0 && std::isfinite(a_max), "a_max must be positive");
  require(episode_len >= 1, "episode_len must be >= 1");
  require(n_uavs >= 1, "n_uavs must be >= 1");
  require(arena_half_width > 0.0, "arena_half_width must be positive");
  require(scale_pos > 0.0 && scale_vel > 0.0, "scales must be positive");
}

double RawReward(double x, double y, const Goal& g) { return -std::hypot(x - g.gx, y - g.gy); }

double NormalizeReward(double raw) { return std::clamp(raw + 1.0, -1.0, 1.0); }

AgentState Observe(const UavState& s, const Goal& g, const EnvConfig& cfg) {
  AgentState out;
  if (cfg.sensor_mode == SensorMode::kLocalization) {
    out.features = {s.x / cfg.scale_pos,  s.y / cfg.scale_pos,  s.vx / cfg.scale_vel,
                    s.vy / cfg.scale_vel, g.gx / cfg.scale_pos, g.gy / cfg.scale_pos};
    return out;
  }
  out.features.reserve(10);
  for (const Goal& l : cfg.landmarks) {
    out.features.push_back(std::hypot(s.x - l.gx, s.y - l.gy) / cfg.scale_pos);
  }
  out.features.push_back(s.vx / cfg.scale_vel);
  out.features.push_back(s.vy / cfg.scale_vel);
  for (const Goal& l : cfg.landmarks) {
    out.features.push_back(std::hypot(g.gx - l.gx, g.gy - l.gy) / cfg.scale_pos);
  }
  return out;
}

Environment::Environment(EnvConfig cfg) : cfg_(cfg), uavs_(cfg.n_uavs) {
  cfg_.Validate();
  spec_.n_uavs = cfg_.n_uavs;
  spec_.params = FixedOffsetsParams{std::vector<Goal>(cfg_.n_uavs)};
}

std::vector<AgentState> Environment::Reset(const FormationSpec& spec, std::mt19937_64& rng) {
  if (spec.n_uavs != cfg_.n_uavs) {
    throw ArityError("formation has " + std::to_string(spec.n_uavs) + " UAVs, environment has " +
                     std::to_string(cfg_.n_uavs));
  }
  spec_ = spec;
  std::uniform_real_distribution<double> pos(-cfg_.arena_half_width, cfg_.arena_half_width);
  for (UavState& u : uavs_) {
    const double x = pos(rng);
    const double y = pos(rng);
    u = {x, y, 0.0, 0.0};
  }
  step_count_ = 0;
  done_ = false;
  return Observations();
}

std::vector<AgentState> Environment::Observations() const {
  std::vector<AgentState> states;
  states.reserve(uavs_.size());
  for (int i = 0; i < cfg_.n_uavs; ++i) states.push_back(Observe(uavs_[i], goal(i), cfg_));
  return states;
}

StepResult Environment::Step(std::span<const Action> actions) {
  if (done_) throw EpisodeFinishedError("episode finished; call Reset first");
  if (actions.size() != uavs_.size()) {
    throw ArityError("expected " + std::to_string(uavs_.size()) + " actions, got " +
                     std::to_string(actions.size()));
  }
  for (std::size_t i = 0; i < uavs_.size(); ++i) {
    uavs_[i] = fdqn::Step(uavs_[i], ActionToAccel(actions[i], cfg_.a_max), cfg_.dt);
  }
  ++step_count_;

  StepResult result;
  result.rewards.reserve(uavs_.size());
  result.states.reserve(uavs_.size());
  for (int i = 0; i < cfg_.n_uavs; ++i) {
    const Goal g = goal(i);
    result.rewards.push_back(NormalizeReward(RawReward(uavs_[i].x, uavs_[i].y, g)));
    result.states.push_back(Observe(uavs_[i], g, cfg_));
  }
  done_ = step_count_ >= cfg_.episode_len;
  result.done = done_;
  return result;
}

void Environment::SetUavState(int uav_index, const UavState& s) {
  if (uav_index < 0 || uav_index >= cfg_.n_uavs) throw IndexError("uav index out of range");
  if (!s.IsFinite()) throw InvalidStateError("SetUavState: non-finite state");
  uavs_[uav_index] = s;
}

}  // namespace fdqn
