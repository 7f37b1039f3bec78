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

#ifndef FDQN_PLOT_HPP_
#define FDQN_PLOT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "fdqn/harness.hpp"

namespace fdqn {

// Learning curve: one polyline of total clipped reward per episode, plus an
// optional second polyline (e.g. a smoothed copy) when `overlay` is non-empty.
std::string LearningCurveSvg(const std::vector<EpisodeMetrics>& metrics,
                             const std::vector<double>& overlay = {});

// XY trajectories: one solid polyline per UAV and one dashed goal polyline
// per UAV, for the given episode.
std::string TrajectorySvg(const std::vector<TrajectoryRow>& rows, int episode = 0);

inline constexpr std::string_view kSmoothedHeader = "episode,total_clipped_reward,smoothed";

// Reads a metrics CSV (or a previously smoothed one) and returns
// `episode,total_clipped_reward,smoothed` rows, smoothing the reward column
// with SavitzkyGolay(window, poly_order).
std::string SmoothMetricsCsv(std::string_view csv, int window, int poly_order);

// Detects the CSV kind from its header row (metrics, smoothed or trajectories) and
// renders the matching chart. Smoothed CSVs are drawn with their overlay. Throws ParseError on empty or malformed input.
std::string PlotCsv(std::string_view csv);

}  // namespace fdqn

#endif  // FDQN_PLOT_HPP_
