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

#include "fdqn/dynamics.hpp"

#include <cmath>
#include <string>

#include "fdqn/errors.hpp"

namespace fdqn {

bool UavState::IsFinite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(vx) && std::isfinite(vy);
}

Action ActionFromIndex(std::size_t index) {
  if (index >= kNumActions) {
    throw IndexError("action index " + std::to_string(index) + " out of range");
  }
  return static_cast<Action>(index);
}

std::string_view ActionName(Action a) {
  switch (a) {
    case Action::kRight: return "RIGHT";
    case Action::kLeft: return "LEFT";
    case Action::kUp: return "UP";
    case Action::kDown: return "DOWN";
    case Action::kCoast: return "COAST";
  }
  return "?";
}

Accel ActionToAccel(Action a, double a_max) {
  switch (a) {
    case Action::kRight: return {a_max, 0.0};
    case Action::kLeft: return {-a_max, 0.0};
    case Action::kUp: return {0.0, a_max};
    case Action::kDown: return {0.0, -a_max};
    case Action::kCoast: return {0.0, 0.0};
  }
  return {};
}

UavState Step(const UavState& s, const Accel& u, double dt) {
  if (!s.IsFinite()) throw InvalidStateError("Step: non-finite vehicle state");
  const double half_dt2 = 0.5 * dt * dt;
  UavState next{s.x + s.vx * dt + u.ux * half_dt2, s.y + s.vy * dt + u.uy * half_dt2,
                s.vx + u.ux * dt, s.vy + u.uy * dt};
  if (!next.IsFinite()) throw InvalidStateError("Step: state overflowed");
  return next;
}

}  // namespace fdqn
