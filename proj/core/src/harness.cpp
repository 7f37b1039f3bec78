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

#include "fdqn/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "fdqn/errors.hpp"
#include "fdqn/replay.hpp"
#include "json.hpp"

namespace fdqn {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(Trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

double ParseDouble(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string(what) + ": not a number: \"" + std::string(s) + "\"");
  }
  return v;
}

template <class Int>
Int ParseInt(std::string_view s, std::string_view what) {
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string(what) + ": not an integer: \"" + std::string(s) + "\"");
  }
  return v;
}

// Shortest text that reads back to the same double.
std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Content lines of a CSV document after checking the header row.
std::vector<std::string_view> CsvBody(std::string_view text, std::string_view header) {
  std::vector<std::string_view> lines;
  for (std::string_view line : SplitLines(text)) {
    line = Trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty CSV input");
  if (lines.front() != header) {
    throw ParseError("unexpected CSV header \"" + std::string(lines.front()) + "\", expected \"" +
                     std::string(header) + "\"");
  }
  lines.erase(lines.begin());
  return lines;
}

}  // namespace

void RunConfig::Validate() const {
  env.Validate();
  agent.Validate();
  if (episodes < 1) throw ParameterError("run config: episodes must be >= 1");
  if (replay_capacity < 1) throw ParameterError("run config: replay_capacity must be >= 1");
  if (optimizer.learning_rate <= 0.0 || optimizer.rho < 0.0 || optimizer.rho >= 1.0 ||
      optimizer.epsilon <= 0.0) {
    throw ParameterError("run config: invalid RMSProp parameters");
  }
}

RunConfig ParseRunConfig(std::string_view text, RunConfig base) {
  RunConfig cfg = std::move(base);
  using Setter = std::function<void(std::string_view)>;
  auto real = [](double& field, const char* key) -> Setter {
    return [&field, key](std::string_view v) { field = ParseDouble(v, key); };
  };
  auto integer = [](int& field, const char* key) -> Setter {
    return [&field, key](std::string_view v) { field = ParseInt<int>(v, key); };
  };
  auto size = [](std::size_t& field, const char* key) -> Setter {
    return [&field, key](std::string_view v) { field = ParseInt<std::size_t>(v, key); };
  };
  auto text_field = [](std::string& field) -> Setter {
    return [&field](std::string_view v) { field = std::string(v); };
  };
  const std::map<std::string, Setter, std::less<>> setters = {
      {"dt", real(cfg.env.dt, "dt")},
      {"a_max", real(cfg.env.a_max, "a_max")},
      {"episode_len", integer(cfg.env.episode_len, "episode_len")},
      {"n_uavs", integer(cfg.env.n_uavs, "n_uavs")},
      {"arena_half_width", real(cfg.env.arena_half_width, "arena_half_width")},
      {"scale_pos", real(cfg.env.scale_pos, "scale_pos")},
      {"scale_vel", real(cfg.env.scale_vel, "scale_vel")},
      {"sensor",
       [&cfg](std::string_view v) {
         try {
           cfg.env.sensor_mode = ParseSensorMode(v);
         } catch (const ParameterError& e) {
           throw ParseError(e.what());
         }
       }},
      {"gamma", real(cfg.agent.gamma, "gamma")},
      {"epsilon_train", real(cfg.agent.epsilon_train, "epsilon_train")},
      {"epsilon_eval", real(cfg.agent.epsilon_eval, "epsilon_eval")},
      {"minibatch", size(cfg.agent.minibatch, "minibatch")},
      {"warmup", size(cfg.agent.warmup, "warmup")},
      {"learning_rate", real(cfg.optimizer.learning_rate, "learning_rate")},
      {"rho", real(cfg.optimizer.rho, "rho")},
      {"rmsprop_epsilon", real(cfg.optimizer.epsilon, "rmsprop_epsilon")},
      {"replay_capacity", size(cfg.replay_capacity, "replay_capacity")},
      {"episodes", integer(cfg.episodes, "episodes")},
      {"seed", [&cfg](std::string_view v) { cfg.seed = ParseInt<std::uint64_t>(v, "seed"); }},
      {"model_out", text_field(cfg.model_out)},
      {"metrics_out", text_field(cfg.metrics_out)},
  };

  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw ParseError("config line " + std::to_string(line_no) + ": unknown key \"" +
                       std::string(key) + "\"");
    }
    it->second(value);
  }
  return cfg;
}

RunConfig LoadRunConfigFile(const std::string& path, RunConfig base) {
  return ParseRunConfig(ReadTextFile(path), std::move(base));
}

namespace {

// Independent streams so that, e.g., changing the minibatch size does not
// alter the sequence of start positions.
std::mt19937_64 Stream(std::uint64_t seed, std::uint32_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), id};
  return std::mt19937_64(seq);
}

}  // namespace

QNetwork InitialNetwork(const RunConfig& cfg) {
  std::mt19937_64 init_rng = Stream(cfg.seed, 1);
  QNetwork net(cfg.env.sensor_mode, FeatureLength(cfg.env.sensor_mode));
  net.InitUniform(init_rng);
  return net;
}

TrainResult Train(const RunConfig& cfg, const EpisodeCallback& on_episode) {
  cfg.Validate();
  EnvConfig env_cfg = cfg.env;
  env_cfg.n_uavs = 1;  // UAVs are uncoupled; one shared learner sees one vehicle

  std::mt19937_64 world_rng = Stream(cfg.seed, 2);
  std::mt19937_64 action_rng = Stream(cfg.seed, 3);
  std::mt19937_64 replay_rng = Stream(cfg.seed, 4);

  TrainResult result;
  result.net = InitialNetwork(cfg);
  OptimizerState opt = OptimizerState::For(result.net, cfg.optimizer);
  ReplayMemory memory(cfg.replay_capacity);
  Environment env(env_cfg);
  const std::size_t ready_at = std::max(cfg.agent.warmup, cfg.agent.minibatch);

  for (int episode = 0; episode < cfg.episodes; ++episode) {
    FormationSpec spec = SampleTrainingFormation(world_rng, 1);
    AgentState state = env.Reset(spec, world_rng).front();
    EpisodeMetrics m;
    m.episode = episode;
    double loss_sum = 0.0;
    double epsilon_sum = 0.0;
    int step = 0;
    try {
      while (!env.done()) {
        const bool warming_up = memory.size() < ready_at;
        const double epsilon = warming_up ? 1.0 : cfg.agent.epsilon_train;
        epsilon_sum += epsilon;
        Action a;
        if (warming_up) {
          std::uniform_int_distribution<std::size_t> any(0, kNumActions - 1);
          a = ActionFromIndex(any(action_rng));
        } else {
          a = SelectAction(result.net, state, epsilon, action_rng);
        }
        const Action actions[] = {a};
        StepResult sr = env.Step(actions);
        ++step;
        m.total_clipped_reward += sr.rewards.front();
        AgentState next = std::move(sr.states.front());
        memory.Push({state, a, sr.rewards.front(), next, sr.done});
        state = std::move(next);
        if (memory.size() >= ready_at) {
          loss_sum += TrainStep(result.net, opt, memory, cfg.agent, replay_rng);
          ++m.train_steps;
        }
      }
    } catch (const NumericalError& e) {
      throw NumericalError("numerical failure at episode " + std::to_string(episode) + ", step " +
                           std::to_string(step) + ": " + e.what());
    }
    m.mean_loss = m.train_steps ? loss_sum / static_cast<double>(m.train_steps) : 0.0;
    m.epsilon = epsilon_sum / static_cast<double>(step);
    result.train_steps += m.train_steps;
    result.metrics.push_back(m);
    if (on_episode) on_episode(m);
  }
  return result;
}

TrainResult RunTraining(const RunConfig& cfg, const EpisodeCallback& on_episode) {
  TrainResult result = Train(cfg, on_episode);
  if (!cfg.metrics_out.empty()) WriteTextFile(cfg.metrics_out, MetricsToCsv(result.metrics));
  if (!cfg.model_out.empty()) SaveModelFile(result.net, cfg.model_out);
  return result;
}

std::string MetricsToCsv(const std::vector<EpisodeMetrics>& metrics) {
  std::string out(kMetricsHeader);
  out += '\n';
  for (const EpisodeMetrics& m : metrics) {
    out += std::to_string(m.episode);
    out += ',' + FormatDouble(m.total_clipped_reward);
    out += ',' + FormatDouble(m.mean_loss);
    out += ',' + FormatDouble(m.epsilon);
    out += '\n';
  }
  return out;
}

std::vector<EpisodeMetrics> MetricsFromCsv(std::string_view text) {
  std::vector<EpisodeMetrics> metrics;
  for (std::string_view line : CsvBody(text, kMetricsHeader)) {
    const auto f = SplitFields(line);
    if (f.size() != 4) throw ParseError("metrics row has " + std::to_string(f.size()) + " fields");
    EpisodeMetrics m;
    m.episode = ParseInt<int>(f[0], "episode");
    m.total_clipped_reward = ParseDouble(f[1], "total_clipped_reward");
    m.mean_loss = ParseDouble(f[2], "mean_loss");
    m.epsilon = ParseDouble(f[3], "epsilon");
    metrics.push_back(m);
  }
  if (metrics.empty()) throw ParseError("metrics CSV has no rows");
  return metrics;
}

Action AgentInstance::Act(const AgentState& s) const {
  return ActionFromIndex(GreedyIndex(QValues(*net_, s)));
}

namespace {

template <class Policy>
EvalResult RunEvaluation(const FormationSpec& spec, const EvalConfig& cfg, Policy&& policy) {
  if (cfg.episodes < 1) throw ParameterError("evaluation: episodes must be >= 1");
  if (cfg.tail_steps < 1) throw ParameterError("evaluation: tail_steps must be >= 1");
  EnvConfig env_cfg = cfg.env;
  env_cfg.n_uavs = spec.n_uavs;
  Environment env(env_cfg);
  std::mt19937_64 rng(cfg.seed);
  const int tail_start = std::max(0, env_cfg.episode_len - cfg.tail_steps);

  EvalResult result;
  double reward_sum = 0.0;
  double error_sum = 0.0;
  double tail_error_sum = 0.0;
  long long samples = 0;
  long long tail_samples = 0;

  for (int ep = 0; ep < cfg.episodes; ++ep) {
    std::vector<AgentState> states = env.Reset(spec, rng);
    for (int i = 0; i < spec.n_uavs; ++i) {
      const UavState& u = env.uavs()[i];
      const Goal g = env.goal(i);
      result.rows.push_back(
          {ep, 0.0, i, u.x, u.y, g.gx, g.gy, NormalizeReward(RawReward(u.x, u.y, g))});
    }
    std::vector<Action> actions(spec.n_uavs);
    while (!env.done()) {
      for (int i = 0; i < spec.n_uavs; ++i) actions[i] = policy(i, states[i], rng);
      StepResult sr = env.Step(actions);
      const bool in_tail = env.step_count() > tail_start;
      for (int i = 0; i < spec.n_uavs; ++i) {
        const UavState& u = env.uavs()[i];
        const Goal g = env.goal(i);
        const double err = std::hypot(u.x - g.gx, u.y - g.gy);
        reward_sum += sr.rewards[i];
        error_sum += err;
        ++samples;
        if (in_tail) {
          tail_error_sum += err;
          ++tail_samples;
        }
        result.rows.push_back({ep, env.time(), i, u.x, u.y, g.gx, g.gy, sr.rewards[i]});
      }
      states = std::move(sr.states);
    }
  }
  result.summary.episodes = cfg.episodes;
  result.summary.n_uavs = spec.n_uavs;
  result.summary.mean_reward = reward_sum / static_cast<double>(samples);
  result.summary.mean_tracking_error = error_sum / static_cast<double>(samples);
  result.summary.mean_tail_tracking_error = tail_error_sum / static_cast<double>(tail_samples);
  return result;
}

}  // namespace

EvalResult Evaluate(const QNetwork& net, const FormationSpec& spec, const EvalConfig& cfg) {
  if (net.sensor_mode() != cfg.env.sensor_mode ||
      net.state_len() != FeatureLength(cfg.env.sensor_mode)) {
    throw FormatError("model sensor mode \"" + std::string(SensorModeName(net.sensor_mode())) +
                      "\" does not match evaluation mode \"" +
                      std::string(SensorModeName(cfg.env.sensor_mode)) + "\"");
  }
  auto shared = std::make_shared<const QNetwork>(net);
  std::vector<AgentInstance> agents(spec.n_uavs, AgentInstance(shared));
  return RunEvaluation(spec, cfg, [&](int i, const AgentState& s, std::mt19937_64&) {
    return agents[i].Act(s);
  });
}

EvalResult EvaluateRandomPolicy(const FormationSpec& spec, const EvalConfig& cfg) {
  std::uniform_int_distribution<std::size_t> any(0, kNumActions - 1);
  return RunEvaluation(spec, cfg, [&](int, const AgentState&, std::mt19937_64& rng) {
    return ActionFromIndex(any(rng));
  });
}

std::string TrajectoriesToCsv(const std::vector<TrajectoryRow>& rows) {
  std::string out(kTrajectoryHeader);
  out += '\n';
  for (const TrajectoryRow& r : rows) {
    out += std::to_string(r.episode);
    for (double v : {r.t}) out += ',' + FormatDouble(v);
    out += ',' + std::to_string(r.uav_id);
    for (double v : {r.x, r.y, r.gx, r.gy, r.reward}) out += ',' + FormatDouble(v);
    out += '\n';
  }
  return out;
}

std::vector<TrajectoryRow> TrajectoriesFromCsv(std::string_view text) {
  std::vector<TrajectoryRow> rows;
  for (std::string_view line : CsvBody(text, kTrajectoryHeader)) {
    const auto f = SplitFields(line);
    if (f.size() != 8) throw ParseError("trajectory row has " + std::to_string(f.size()) + " fields");
    TrajectoryRow r;
    r.episode = ParseInt<int>(f[0], "episode");
    r.t = ParseDouble(f[1], "t");
    r.uav_id = ParseInt<int>(f[2], "uav_id");
    r.x = ParseDouble(f[3], "x");
    r.y = ParseDouble(f[4], "y");
    r.gx = ParseDouble(f[5], "gx");
    r.gy = ParseDouble(f[6], "gy");
    r.reward = ParseDouble(f[7], "reward");
    rows.push_back(r);
  }
  if (rows.empty()) throw ParseError("trajectory CSV has no rows");
  return rows;
}

std::string SummaryToJson(const EvalSummary& s) {
  nlohmann::ordered_json doc;
  doc["episodes"] = s.episodes;
  doc["n_uavs"] = s.n_uavs;
  doc["mean_reward"] = s.mean_reward;
  doc["mean_tracking_error"] = s.mean_tracking_error;
  doc["mean_tail_tracking_error"] = s.mean_tail_tracking_error;
  return doc.dump(2);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw ParseError("failed writing " + path);
}

}  // namespace fdqn
