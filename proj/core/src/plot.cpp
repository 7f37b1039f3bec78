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

#include "fdqn/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "fdqn/errors.hpp"
#include "fdqn/smoothing.hpp"

namespace fdqn {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMargin = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

struct Bounds {
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void Add(double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }

  void Pad() {
    if (x1 <= x0) x1 = x0 + 1.0;
    if (y1 <= y0) y1 = y0 + 1.0;
  }
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

class SvgCanvas {
 public:
  SvgCanvas(Bounds b, bool equal_aspect) : b_(b) {
    b_.Pad();
    sx_ = (kWidth - 2 * kMargin) / (b_.x1 - b_.x0);
    sy_ = (kHeight - 2 * kMargin) / (b_.y1 - b_.y0);
    if (equal_aspect) sx_ = sy_ = std::min(sx_, sy_);
    out_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Num(kWidth) + "\" height=\"" +
           Num(kHeight) + "\" viewBox=\"0 0 " + Num(kWidth) + " " + Num(kHeight) + "\">\n";
    out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  double X(double x) const { return kMargin + (x - b_.x0) * sx_; }
  double Y(double y) const { return kHeight - kMargin - (y - b_.y0) * sy_; }

  void Axes(const std::string& x_label, const std::string& y_label) {
    const double left = kMargin, bottom = kHeight - kMargin;
    out_ += "<g stroke=\"black\" stroke-width=\"1\">";
    out_ += "<line x1=\"" + Num(left) + "\" y1=\"" + Num(bottom) + "\" x2=\"" +
            Num(kWidth - kMargin) + "\" y2=\"" + Num(bottom) + "\"/>";
    out_ += "<line x1=\"" + Num(left) + "\" y1=\"" + Num(bottom) + "\" x2=\"" + Num(left) +
            "\" y2=\"" + Num(kMargin) + "\"/></g>\n";
    out_ += "<g font-family=\"sans-serif\" font-size=\"12\">";
    out_ += Text(left, bottom + 16, Num(b_.x0)) + Text(kWidth - kMargin, bottom + 16, Num(b_.x1));
    out_ += Text(4, bottom, Num(b_.y0)) + Text(4, kMargin, Num(b_.y1));
    out_ += Text(kWidth / 2, kHeight - 12, x_label) + Text(4, kMargin - 20, y_label);
    out_ += "</g>\n";
  }

  void Polyline(const std::vector<std::pair<double, double>>& pts, const std::string& cls,
                const std::string& color, bool dashed) {
    out_ += "<polyline class=\"" + cls + "\" fill=\"none\" stroke=\"" + color +
            "\" stroke-width=\"1.5\"";
    if (dashed) out_ += " stroke-dasharray=\"4 3\"";
    out_ += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ += ' ';
      out_ += Num(X(pts[i].first)) + "," + Num(Y(pts[i].second));
    }
    out_ += "\"/>\n";
  }

  std::string Finish() { return out_ + "</svg>\n"; }

 private:
  static std::string Text(double x, double y, const std::string& s) {
    return "<text x=\"" + Num(x) + "\" y=\"" + Num(y) + "\">" + s + "</text>";
  }

  Bounds b_;
  double sx_ = 1.0, sy_ = 1.0;
  std::string out_;
};

std::string_view FirstLine(std::string_view text) {
  const auto nl = text.find('\n');
  std::string_view line = text.substr(0, nl);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
  return line;
}

struct SmoothedRows {
  std::vector<EpisodeMetrics> metrics;
  std::vector<double> smoothed;
};

double ToDouble(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("not a number: \"" + std::string(s) + "\"");
  }
  return v;
}

SmoothedRows ParseSmoothedCsv(std::string_view text) {
  SmoothedRows rows;
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string_view::npos ? c1 : c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
      throw ParseError("smoothed row needs 3 fields");
    }
    EpisodeMetrics m;
    m.episode = static_cast<int>(ToDouble(line.substr(0, c1)));
    m.total_clipped_reward = ToDouble(line.substr(c1 + 1, c2 - c1 - 1));
    rows.metrics.push_back(m);
    rows.smoothed.push_back(ToDouble(line.substr(c2 + 1)));
  }
  if (rows.metrics.empty()) throw ParseError("smoothed CSV has no rows");
  return rows;
}

}  // namespace

std::string LearningCurveSvg(const std::vector<EpisodeMetrics>& metrics,
                             const std::vector<double>& overlay) {
  if (metrics.empty()) throw ParseError("no metrics to plot");
  Bounds b;
  std::vector<std::pair<double, double>> raw, smooth;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    raw.emplace_back(metrics[i].episode, metrics[i].total_clipped_reward);
    b.Add(metrics[i].episode, metrics[i].total_clipped_reward);
    if (i < overlay.size()) {
      smooth.emplace_back(metrics[i].episode, overlay[i]);
      b.Add(metrics[i].episode, overlay[i]);
    }
  }
  SvgCanvas svg(b, false);
  svg.Axes("episode", "total clipped reward");
  svg.Polyline(raw, "reward", "#9ab8d8", false);
  if (!smooth.empty()) svg.Polyline(smooth, "smoothed", "#d62728", false);
  return svg.Finish();
}

std::string TrajectorySvg(const std::vector<TrajectoryRow>& rows, int episode) {
  std::map<int, std::vector<std::pair<double, double>>> paths, goals;
  Bounds b;
  for (const TrajectoryRow& r : rows) {
    if (r.episode != episode) continue;
    paths[r.uav_id].emplace_back(r.x, r.y);
    goals[r.uav_id].emplace_back(r.gx, r.gy);
    b.Add(r.x, r.y);
    b.Add(r.gx, r.gy);
  }
  if (paths.empty()) throw ParseError("no trajectory rows for episode " + std::to_string(episode));
  SvgCanvas svg(b, true);
  svg.Axes("x", "y");
  std::size_t colour = 0;
  for (const auto& [id, pts] : goals) {
    svg.Polyline(pts, "goal", kPalette[colour++ % std::size(kPalette)], true);
  }
  colour = 0;
  for (const auto& [id, pts] : paths) {
    svg.Polyline(pts, "uav", kPalette[colour++ % std::size(kPalette)], false);
  }
  return svg.Finish();
}

std::string SmoothMetricsCsv(std::string_view csv, int window, int poly_order) {
  std::vector<EpisodeMetrics> metrics;
  const std::string_view header = FirstLine(csv);
  if (header == kSmoothedHeader) {
    metrics = ParseSmoothedCsv(csv).metrics;
  } else {
    metrics = MetricsFromCsv(csv);
  }
  std::vector<double> rewards;
  rewards.reserve(metrics.size());
  for (const EpisodeMetrics& m : metrics) rewards.push_back(m.total_clipped_reward);
  const std::vector<double> smoothed = SavitzkyGolay(rewards, window, poly_order);
  std::string out(kSmoothedHeader);
  out += '\n';
  char buf[96];
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", metrics[i].episode, rewards[i],
                  smoothed[i]);
    out += buf;
  }
  return out;
}

std::string PlotCsv(std::string_view csv) {
  const std::string_view header = FirstLine(csv);
  if (header.empty()) throw ParseError("empty input");
  if (header == kMetricsHeader) return LearningCurveSvg(MetricsFromCsv(csv));
  if (header == kSmoothedHeader) {
    const SmoothedRows rows = ParseSmoothedCsv(csv);
    return LearningCurveSvg(rows.metrics, rows.smoothed);
  }
  if (header == kTrajectoryHeader) {
    const auto rows = TrajectoriesFromCsv(csv);
    return TrajectorySvg(rows, rows.front().episode);
  }
  throw ParseError("unrecognised CSV header \"" + std::string(header) + "\"");
}

}  // namespace fdqn
