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

#ifndef FDQN_FORMATION_HPP_
#define FDQN_FORMATION_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fdqn {

inline constexpr double kPi = 3.14159265358979323846;

struct Goal {
  double gx = 0.0;
  double gy = 0.0;
  friend bool operator==(const Goal&, const Goal&) = default;
};

enum class FormationKind { kLissajous, kTranslatingPolygon, kFixedOffsets, kFigure8, kStar };

std::string_view FormationKindName(FormationKind kind);

// Training family: (amp_x sin(freq_x w t + phase_x + i d), amp_y sin(freq_y w t + phase_y + i d)).
struct LissajousParams {
  double amp_x = 1.0;
  double amp_y = 1.0;
  int freq_x = 1;
  int freq_y = 1;
  double omega = 2.0 * kPi / 40.0;
  double phase_x = 0.0;
  double phase_y = 0.0;
  double phase_step = 0.0;
};

// Training family: vertices of a regular polygon (one per UAV) whose centre
// moves at constant velocity.
struct TranslatingPolygonParams {
  double center_x = 0.0;
  double center_y = 0.0;
  double vel_x = 0.0;
  double vel_y = 0.0;
  double radius = 1.0;
  double rotation = 0.0;
};

// Training family: static goal per UAV.
struct FixedOffsetsParams {
  std::vector<Goal> goals;
};

// Test formation: Gerono lemniscate (A sin th, A sin th cos th), th = w t + i d.
struct Figure8Params {
  double amplitude = 4.0;
  double omega = 2.0 * kPi / 40.0;
  double phase_step = 2.0 * kPi / 5.0;
};

// Test formation: pentagram {5/2} polyline traversed at constant speed. Each
// UAV is offset by a fifth of the perimeter. The 36 degree corners cannot be
// followed by any bounded-acceleration vehicle.
struct StarParams {
  double radius = 4.0;
  double speed = 1.5;
};

using FormationParams = std::variant<LissajousParams, TranslatingPolygonParams,
                                     FixedOffsetsParams, Figure8Params, StarParams>;

struct FormationSpec {
  int n_uavs = 1;
  FormationParams params;

  FormationKind kind() const { return static_cast<FormationKind>(params.index()); }
};

// Desired position of UAV `uav_index` at time `t` (seconds).
// Throws IndexError for an out-of-range index or a FixedOffsets spec that
// lacks a goal for it.
Goal GoalPosition(const FormationSpec& spec, int uav_index, double t);

// Upper bound on the goal speed of any UAV in the formation. For kStar this
// holds everywhere except the corners, where the velocity direction jumps.
double MaxGoalSpeed(const FormationSpec& spec);

FormationSpec MakeFigure8(int n_uavs);
FormationSpec MakeStar(int n_uavs);

// Draws a formation from the training families (Lissajous, translating
// polygon, fixed offsets). Never returns a test-set kind.
FormationSpec SampleTrainingFormation(std::mt19937_64& rng, int n_uavs);

// Held-out formations: {figure-eight, star}.
std::vector<FormationSpec> TestSet(int n_uavs);

// JSON document: {"kind": "...", "n_uavs": n, "params": {flat name -> number}}.
// FixedOffsets goals are flattened as x0, y0, x1, y1, ...
std::string FormationToJson(const FormationSpec& spec);
FormationSpec FormationFromJson(std::string_view text);

}  // namespace fdqn

#endif  // FDQN_FORMATION_HPP_
