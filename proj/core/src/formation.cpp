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

#include "fdqn/formation.hpp"

#include <array>
#include <cmath>
#include <map>
#include <string>

#include "fdqn/errors.hpp"
#include "json.hpp"

namespace fdqn {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Pentagram vertices in traversal order (every second point of a pentagon).
std::array<Goal, 5> StarVertices(double radius) {
  std::array<Goal, 5> v;
  for (int k = 0; k < 5; ++k) {
    const double angle = kPi / 2.0 + 2.0 * kPi * ((2 * k) % 5) / 5.0;
    v[k] = {radius * std::cos(angle), radius * std::sin(angle)};
  }
  return v;
}

double StarSegmentLength(double radius) { return 2.0 * radius * std::sin(2.0 * kPi / 5.0); }

Goal StarGoal(const StarParams& p, int index, double t) {
  const auto vertices = StarVertices(p.radius);
  const double seg = StarSegmentLength(p.radius);
  const double perimeter = 5.0 * seg;
  double s = std::fmod(p.speed * t + index * perimeter / 5.0, perimeter);
  if (s < 0.0) s += perimeter;
  int k = static_cast<int>(s / seg);
  if (k > 4) k = 4;
  const double frac = (s - k * seg) / seg;
  const Goal& a = vertices[k];
  const Goal& b = vertices[(k + 1) % 5];
  return {a.gx + frac * (b.gx - a.gx), a.gy + frac * (b.gy - a.gy)};
}

}  // namespace

std::string_view FormationKindName(FormationKind kind) {
  switch (kind) {
    case FormationKind::kLissajous: return "lissajous";
    case FormationKind::kTranslatingPolygon: return "translating_polygon";
    case FormationKind::kFixedOffsets: return "fixed_offsets";
    case FormationKind::kFigure8: return "figure8";
    case FormationKind::kStar: return "star";
  }
  return "?";
}

Goal GoalPosition(const FormationSpec& spec, int uav_index, double t) {
  if (uav_index < 0 || uav_index >= spec.n_uavs) {
    throw IndexError("uav index " + std::to_string(uav_index) + " outside [0, " +
                     std::to_string(spec.n_uavs) + ")");
  }
  const double i = uav_index;
  return std::visit(
      Overloaded{
          [&](const LissajousParams& p) -> Goal {
            return {p.amp_x * std::sin(p.freq_x * p.omega * t + p.phase_x + i * p.phase_step),
                    p.amp_y * std::sin(p.freq_y * p.omega * t + p.phase_y + i * p.phase_step)};
          },
          [&](const TranslatingPolygonParams& p) -> Goal {
            const double angle = p.rotation + 2.0 * kPi * i / spec.n_uavs;
            return {p.center_x + p.vel_x * t + p.radius * std::cos(angle),
                    p.center_y + p.vel_y * t + p.radius * std::sin(angle)};
          },
          [&](const FixedOffsetsParams& p) -> Goal {
            if (static_cast<std::size_t>(uav_index) >= p.goals.size()) {
              throw IndexError("fixed_offsets formation has no goal for uav " +
                               std::to_string(uav_index));
            }
            return p.goals[uav_index];
          },
          [&](const Figure8Params& p) -> Goal {
            const double theta = p.omega * t + i * p.phase_step;
            const double s = std::sin(theta);
            return {p.amplitude * s, p.amplitude * s * std::cos(theta)};
          },
          [&](const StarParams& p) -> Goal { return StarGoal(p, uav_index, t); },
      },
      spec.params);
}

double MaxGoalSpeed(const FormationSpec& spec) {
  return std::visit(
      Overloaded{
          [](const LissajousParams& p) {
            return std::hypot(p.amp_x * p.freq_x * p.omega, p.amp_y * p.freq_y * p.omega);
          },
          [](const TranslatingPolygonParams& p) { return std::hypot(p.vel_x, p.vel_y); },
          [](const FixedOffsetsParams&) { return 0.0; },
          // d/dth (A sin th, A/2 sin 2th) = A (cos th, cos 2th)
          [](const Figure8Params& p) { return std::abs(p.amplitude * p.omega) * std::sqrt(2.0); },
          [](const StarParams& p) { return std::abs(p.speed); },
      },
      spec.params);
}

FormationSpec MakeFigure8(int n_uavs) { return {n_uavs, Figure8Params{}}; }
FormationSpec MakeStar(int n_uavs) { return {n_uavs, StarParams{}}; }

FormationSpec SampleTrainingFormation(std::mt19937_64& rng, int n_uavs) {
  std::uniform_int_distribution<int> kind_dist(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const double phase_step = 2.0 * kPi / n_uavs;

  switch (kind_dist(rng)) {
    case 0: {
      LissajousParams p;
      std::uniform_int_distribution<int> freq(1, 3);
      p.amp_x = uniform(1.0, 4.0);
      p.amp_y = uniform(1.0, 4.0);
      p.freq_x = freq(rng);
      p.freq_y = freq(rng);
      p.phase_x = uniform(0.0, 2.0 * kPi);
      p.phase_y = uniform(0.0, 2.0 * kPi);
      p.phase_step = phase_step;
      return {n_uavs, p};
    }
    case 1: {
      TranslatingPolygonParams p;
      const double speed = uniform(0.0, 0.5);
      const double heading = uniform(0.0, 2.0 * kPi);
      p.vel_x = speed * std::cos(heading);
      p.vel_y = speed * std::sin(heading);
      // Start upstream so the centre crosses the arena mid-episode.
      p.center_x = -20.0 * p.vel_x + uniform(-1.0, 1.0);
      p.center_y = -20.0 * p.vel_y + uniform(-1.0, 1.0);
      p.radius = uniform(1.0, 3.0);
      p.rotation = uniform(0.0, 2.0 * kPi);
      return {n_uavs, p};
    }
    default: {
      FixedOffsetsParams p;
      p.goals.reserve(n_uavs);
      for (int i = 0; i < n_uavs; ++i) {
        const double gx = uniform(-4.0, 4.0);
        const double gy = uniform(-4.0, 4.0);
        p.goals.push_back({gx, gy});
      }
      return {n_uavs, p};
    }
  }
}

std::vector<FormationSpec> TestSet(int n_uavs) { return {MakeFigure8(n_uavs), MakeStar(n_uavs)}; }

std::string FormationToJson(const FormationSpec& spec) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::visit(Overloaded{
                 [&](const LissajousParams& p) {
                   params = {{"amp_x", p.amp_x},     {"amp_y", p.amp_y},
                             {"freq_x", p.freq_x},   {"freq_y", p.freq_y},
                             {"omega", p.omega},     {"phase_x", p.phase_x},
                             {"phase_y", p.phase_y}, {"phase_step", p.phase_step}};
                 },
                 [&](const TranslatingPolygonParams& p) {
                   params = {{"center_x", p.center_x}, {"center_y", p.center_y},
                             {"vel_x", p.vel_x},       {"vel_y", p.vel_y},
                             {"radius", p.radius},     {"rotation", p.rotation}};
                 },
                 [&](const FixedOffsetsParams& p) {
                   for (std::size_t i = 0; i < p.goals.size(); ++i) {
                     params["x" + std::to_string(i)] = p.goals[i].gx;
                     params["y" + std::to_string(i)] = p.goals[i].gy;
                   }
                 },
                 [&](const Figure8Params& p) {
                   params = {{"amplitude", p.amplitude},
                             {"omega", p.omega},
                             {"phase_step", p.phase_step}};
                 },
                 [&](const StarParams& p) {
                   params = {{"radius", p.radius}, {"speed", p.speed}};
                 },
             },
             spec.params);
  nlohmann::ordered_json doc;
  doc["kind"] = FormationKindName(spec.kind());
  doc["n_uavs"] = spec.n_uavs;
  doc["params"] = params;
  return doc.dump(2);
}

namespace {

class ParamReader {
 public:
  explicit ParamReader(const nlohmann::json& params) {
    if (!params.is_object()) throw FormatError("formation: \"params\" must be an object");
    for (const auto& [key, value] : params.items()) {
      if (!value.is_number()) throw FormatError("formation: param \"" + key + "\" is not a number");
      values_[key] = value.get<double>();
    }
  }

  double Get(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) throw FormatError("formation: missing param \"" + key + "\"");
    const double v = it->second;
    values_.erase(it);
    if (!std::isfinite(v)) throw FormatError("formation: param \"" + key + "\" is not finite");
    return v;
  }

  double Get(const std::string& key, double fallback) {
    return values_.count(key) ? Get(key) : fallback;
  }

  int GetInt(const std::string& key) {
    const double v = Get(key);
    if (v != std::floor(v)) throw FormatError("formation: param \"" + key + "\" must be integral");
    return static_cast<int>(v);
  }

  void ExpectConsumed() const {
    if (!values_.empty()) {
      throw FormatError("formation: unknown param \"" + values_.begin()->first + "\"");
    }
  }

 private:
  std::map<std::string, double> values_;
};

}  // namespace

FormationSpec FormationFromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("formation: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw FormatError("formation: missing string field \"kind\"");
  }
  if (!doc.contains("n_uavs") || !doc["n_uavs"].is_number_integer() ||
      doc["n_uavs"].get<int>() < 1) {
    throw FormatError("formation: \"n_uavs\" must be a positive integer");
  }
  FormationSpec spec;
  spec.n_uavs = doc["n_uavs"].get<int>();
  const std::string kind = doc["kind"].get<std::string>();
  ParamReader r(doc.value("params", nlohmann::json::object()));

  if (kind == "lissajous") {
    LissajousParams p;
    p.amp_x = r.Get("amp_x");
    p.amp_y = r.Get("amp_y");
    p.freq_x = r.GetInt("freq_x");
    p.freq_y = r.GetInt("freq_y");
    p.omega = r.Get("omega", p.omega);
    p.phase_x = r.Get("phase_x", 0.0);
    p.phase_y = r.Get("phase_y", 0.0);
    p.phase_step = r.Get("phase_step", 2.0 * kPi / spec.n_uavs);
    spec.params = p;
  } else if (kind == "translating_polygon") {
    TranslatingPolygonParams p;
    p.center_x = r.Get("center_x", 0.0);
    p.center_y = r.Get("center_y", 0.0);
    p.vel_x = r.Get("vel_x", 0.0);
    p.vel_y = r.Get("vel_y", 0.0);
    p.radius = r.Get("radius");
    p.rotation = r.Get("rotation", 0.0);
    spec.params = p;
  } else if (kind == "fixed_offsets") {
    FixedOffsetsParams p;
    for (int i = 0; i < spec.n_uavs; ++i) {
      const double gx = r.Get("x" + std::to_string(i));
      const double gy = r.Get("y" + std::to_string(i));
      p.goals.push_back({gx, gy});
    }
    spec.params = p;
  } else if (kind == "figure8") {
    Figure8Params p;
    p.amplitude = r.Get("amplitude", p.amplitude);
    p.omega = r.Get("omega", p.omega);
    p.phase_step = r.Get("phase_step", p.phase_step);
    spec.params = p;
  } else if (kind == "star") {
    StarParams p;
    p.radius = r.Get("radius", p.radius);
    p.speed = r.Get("speed", p.speed);
    if (p.radius <= 0.0) throw FormatError("formation: star radius must be positive");
    spec.params = p;
  } else {
    throw FormatError("formation: unknown kind \"" + kind + "\"");
  }
  r.ExpectConsumed();
  return spec;
}

}  // namespace fdqn
