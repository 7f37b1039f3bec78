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

#ifndef FDQN_DYNAMICS_HPP_
#define FDQN_DYNAMICS_HPP_

#include <array>
#include <cstddef>
#include <string_view>

namespace fdqn {

// Planar position and velocity of a single point-mass vehicle.
struct UavState {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;

  bool IsFinite() const;
  friend bool operator==(const UavState&, const UavState&) = default;
};

// Discrete acceleration commands. The integer values are the fixed action
// indices used by the Q-network's one-hot encoding.
enum class Action : int { kRight = 0, kLeft = 1, kUp = 2, kDown = 3, kCoast = 4 };

inline constexpr std::size_t kNumActions = 5;
inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::kRight, Action::kLeft, Action::kUp, Action::kDown, Action::kCoast};

constexpr std::size_t ActionIndex(Action a) { return static_cast<std::size_t>(a); }
Action ActionFromIndex(std::size_t index);
std::string_view ActionName(Action a);

struct Accel {
  double ux = 0.0;
  double uy = 0.0;
  friend bool operator==(const Accel&, const Accel&) = default;
};

// Maps a discrete command to an acceleration of magnitude `a_max` along one
// axis (or zero for kCoast).
Accel ActionToAccel(Action a, double a_max);

// Exact integration of the double integrator over `dt` under constant `u`:
//   p' = p + v*dt + u*dt^2/2,  v' = v + u*dt.
// Throws InvalidStateError if `s` is not finite or the result overflows.
UavState Step(const UavState& s, const Accel& u, double dt);

}  // namespace fdqn

#endif  // FDQN_DYNAMICS_HPP_
