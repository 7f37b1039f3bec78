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

#ifndef FDQN_SMOOTHING_HPP_
#define FDQN_SMOOTHING_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace fdqn {

inline constexpr int kDefaultSmoothingWindow = 51;
inline constexpr int kDefaultSmoothingOrder = 3;

// Least-squares weights that evaluate a degree-`poly_order` polynomial fitted
// to `window` consecutive samples at sample `position` (0-based within the
// window). position = window / 2 gives the classic symmetric filter.
std::vector<double> SavitzkyGolayWeights(int window, int poly_order, int position);

// Savitzky-Golay smoothing. Interior points use the centred window; near the
// ends the window is shifted to stay inside the series and the fit is
// evaluated off-centre. Output has the input's length.
// Throws ParameterError unless window is odd, window > poly_order >= 0 and
// series.size() >= window.
std::vector<double> SavitzkyGolay(std::span<const double> series, int window, int poly_order);

// Ranks with ties averaged (1-based).
std::vector<double> Ranks(std::span<const double> values);

// Spearman rank correlation. Throws ParameterError on length mismatch or
// fewer than two samples; returns 0 when either side is constant.
double SpearmanCorrelation(std::span<const double> a, std::span<const double> b);

}  // namespace fdqn

#endif  // FDQN_SMOOTHING_HPP_
