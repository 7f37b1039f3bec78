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

// Command-line front end: train, eval, smooth, plot.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "fdqn/errors.hpp"
#include "fdqn/formation.hpp"
#include "fdqn/harness.hpp"
#include "fdqn/neural_net.hpp"
#include "fdqn/plot.hpp"
#include "fdqn/smoothing.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct TrainArgs {
  std::string config;
  std::optional<std::string> sensor;
  std::optional<int> episodes;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> model_out;
  std::optional<std::string> metrics_out;
  bool quiet = false;
};

struct EvalArgs {
  std::string model;
  std::string formation = "figure8";
  int uavs = 5;
  int episodes = 1;
  std::uint64_t seed = 0;
  std::string traj_out;
  std::string summary_out;
};

struct SmoothArgs {
  std::string in;
  std::string out;
  int window = fdqn::kDefaultSmoothingWindow;
  int poly = fdqn::kDefaultSmoothingOrder;
};

struct PlotArgs {
  std::string in;
  std::string out;
};

int RunTrain(const TrainArgs& a) {
  fdqn::RunConfig cfg;
  if (!a.config.empty()) cfg = fdqn::LoadRunConfigFile(a.config);
  if (a.sensor) cfg.env.sensor_mode = fdqn::ParseSensorMode(*a.sensor);
  if (a.episodes) cfg.episodes = *a.episodes;
  if (a.seed) cfg.seed = *a.seed;
  if (a.model_out) cfg.model_out = *a.model_out;
  if (a.metrics_out) cfg.metrics_out = *a.metrics_out;
  cfg.Validate();
  fdqn::EpisodeCallback progress;
  if (!a.quiet) {
    progress = [](const fdqn::EpisodeMetrics& m) {
      std::cerr << "episode " << m.episode << " reward " << m.total_clipped_reward << " loss "
                << m.mean_loss << "\n";
    };
  }
  const fdqn::TrainResult r = fdqn::RunTraining(cfg, progress);
  std::cout << "trained " << r.metrics.size() << " episodes, " << r.train_steps
            << " updates\n";
  return kExitOk;
}

fdqn::FormationSpec ResolveFormation(const std::string& name, int uavs) {
  if (name == "figure8") return fdqn::MakeFigure8(uavs);
  if (name == "star") return fdqn::MakeStar(uavs);
  if (!std::filesystem::exists(name)) {
    throw fdqn::ParseError("unknown formation '" + name + "' (figure8, star or a JSON file)");
  }
  fdqn::FormationSpec spec = fdqn::FormationFromJson(fdqn::ReadTextFile(name));
  if (spec.n_uavs != uavs) {
    throw fdqn::ArityError("formation file defines " + std::to_string(spec.n_uavs) +
                           " UAVs but --uavs is " + std::to_string(uavs));
  }
  return spec;
}

int RunEval(const EvalArgs& a) {
  const fdqn::QNetwork net = fdqn::LoadModelFile(a.model);
  const fdqn::FormationSpec spec = ResolveFormation(a.formation, a.uavs);
  fdqn::EvalConfig cfg;
  cfg.env.sensor_mode = net.sensor_mode();
  cfg.episodes = a.episodes;
  cfg.seed = a.seed;
  const fdqn::EvalResult r = fdqn::Evaluate(net, spec, cfg);
  fdqn::WriteTextFile(a.traj_out, fdqn::TrajectoriesToCsv(r.rows));
  const std::string summary = fdqn::SummaryToJson(r.summary);
  if (!a.summary_out.empty()) fdqn::WriteTextFile(a.summary_out, summary);
  std::cout << summary << "\n";
  return kExitOk;
}

int RunSmooth(const SmoothArgs& a) {
  fdqn::WriteTextFile(a.out, fdqn::SmoothMetricsCsv(fdqn::ReadTextFile(a.in), a.window, a.poly));
  return kExitOk;
}

int RunPlot(const PlotArgs& a) {
  fdqn::WriteTextFile(a.out, fdqn::PlotCsv(fdqn::ReadTextFile(a.in)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formation control with a shared deep Q-network agent"};
  app.require_subcommand(1);

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a Q-network on a single UAV");
  train_cmd->add_option("--config", train.config, "key = value run configuration")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--sensor", train.sensor, "loc or landmark");
  train_cmd->add_option("--episodes", train.episodes)->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", train.seed);
  train_cmd->add_option("--model-out", train.model_out);
  train_cmd->add_option("--metrics-out", train.metrics_out);
  train_cmd->add_flag("--quiet", train.quiet, "Suppress per-episode progress");

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Fly a formation with greedy agent instances");
  eval_cmd->add_option("--model", eval.model)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--formation", eval.formation, "figure8, star or a JSON file");
  eval_cmd->add_option("--uavs", eval.uavs)->check(CLI::PositiveNumber);
  eval_cmd->add_option("--episodes", eval.episodes)->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval.seed);
  eval_cmd->add_option("--traj-out", eval.traj_out)->required();
  eval_cmd->add_option("--summary-out", eval.summary_out);

  SmoothArgs smooth;
  CLI::App* smooth_cmd = app.add_subcommand("smooth", "Savitzky-Golay smoothing of a metrics CSV");
  smooth_cmd->add_option("--in", smooth.in)->required()->check(CLI::ExistingFile);
  smooth_cmd->add_option("--out", smooth.out)->required();
  smooth_cmd->add_option("--window", smooth.window);
  smooth_cmd->add_option("--poly", smooth.poly);

  PlotArgs plot;
  CLI::App* plot_cmd = app.add_subcommand("plot", "Render a metrics or trajectory CSV as SVG");
  plot_cmd->add_option("--in", plot.in)->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("--out", plot.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return RunTrain(train);
    if (*eval_cmd) return RunEval(eval);
    if (*smooth_cmd) return RunSmooth(smooth);
    if (*plot_cmd) return RunPlot(plot);
  } catch (const fdqn::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fdqn::InvalidStateError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
