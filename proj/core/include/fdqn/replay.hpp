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

#ifndef FDQN_REPLAY_HPP_
#define FDQN_REPLAY_HPP_

#include <cstddef>
#include <random>
#include <vector>

#include "fdqn/dynamics.hpp"
#include "fdqn/environment.hpp"

namespace fdqn {

struct Transition {
  AgentState s;
  Action a = Action::kCoast;
  double r = 0.0;  // normalized reward, in [-1, 1]
  AgentState s_next;
  bool done = false;  // episode hit its time limit (truncation, not terminal)
};

inline constexpr std::size_t kDefaultReplayCapacity = 1'000'000;

// Fixed-capacity FIFO ring of transitions with uniform sampling (with
// replacement). Single-threaded.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity = kDefaultReplayCapacity);

  // Throws InvariantError if the reward is outside [-1, 1] or not finite,
  // or if s and s_next differ in width.
  void Push(Transition t);

  // k independent uniform draws over the stored transitions.
  // Throws InsufficientDataError if fewer than k are stored (or k == 0).
  std::vector<const Transition*> Sample(std::size_t k, std::mt19937_64& rng) const;

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return items_.empty(); }

  // i = 0 is the oldest stored transition.
  const Transition& at(std::size_t i) const;
  const Transition& newest() const { return at(size() - 1); }

 private:
  std::size_t capacity_;
  std::vector<Transition> items_;
  std::size_t head_ = 0;  // slot of the oldest element once full
};

}  // namespace fdqn

#endif  // FDQN_REPLAY_HPP_
