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

#include "fdqn/smoothing.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fdqn/errors.hpp"

namespace fdqn {

std::vector<double> SavitzkyGolayWeights(int window, int poly_order, int position) {
  if (window < 1 || poly_order < 0 || poly_order >= window || position < 0 ||
      position >= window) {
    throw ParameterError("Savitzky-Golay: need 0 <= poly_order < window and position in window");
  }
  // Abscissae relative to the evaluation point, scaled to O(1) for conditioning.
  const double scale = std::max(1, window / 2);
  Eigen::MatrixXd vandermonde(window, poly_order + 1);
  for (int k = 0; k < window; ++k) {
    const double z = (k - position) / scale;
    double p = 1.0;
    for (int d = 0; d <= poly_order; ++d) {
      vandermonde(k, d) = p;
      p *= z;
    }
  }
  // The fitted polynomial at z = 0 is its constant coefficient, i.e. the first
  // row of the pseudo-inverse applied to the samples.
  const Eigen::MatrixXd pinv = vandermonde.completeOrthogonalDecomposition().pseudoInverse();
  std::vector<double> weights(window);
  for (int k = 0; k < window; ++k) weights[k] = pinv(0, k);
  return weights;
}

std::vector<double> SavitzkyGolay(std::span<const double> series, int window, int poly_order) {
  if (window < 1 || window % 2 == 0) throw ParameterError("Savitzky-Golay: window must be odd");
  if (poly_order < 0 || poly_order >= window) {
    throw ParameterError("Savitzky-Golay: poly_order must be in [0, window)");
  }
  const int n = static_cast<int>(series.size());
  if (n < window) {
    throw ParameterError("Savitzky-Golay: series of length " + std::to_string(n) +
                         " is shorter than the window " + std::to_string(window));
  }
  const int half = window / 2;
  std::vector<std::vector<double>> weights_at(window);  // indexed by position in window
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const int start = std::clamp(i - half, 0, n - window);
    const int position = i - start;
    auto& w = weights_at[position];
    if (w.empty()) w = SavitzkyGolayWeights(window, poly_order, position);
    double acc = 0.0;
    for (int k = 0; k < window; ++k) acc += w[k] * series[start + k];
    out[i] = acc;
  }
  return out;
}

std::vector<double> Ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double SpearmanCorrelation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ParameterError("Spearman: need two equally long series of length >= 2");
  }
  const auto ra = Ranks(a);
  const auto rb = Ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

}  // namespace fdqn
