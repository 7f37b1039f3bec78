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

#include "fdqn/replay.hpp"

#include <cmath>
#include <string>

#include "fdqn/errors.hpp"

namespace fdqn {

ReplayMemory::ReplayMemory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ParameterError("replay memory capacity must be >= 1");
}

void ReplayMemory::Push(Transition t) {
  if (!std::isfinite(t.r) || t.r < -1.0 || t.r > 1.0) {
    throw InvariantError("transition reward " + std::to_string(t.r) + " outside [-1, 1]");
  }
  if (t.s.features.size() != t.s_next.features.size()) {
    throw InvariantError("transition states differ in width");
  }
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
    return;
  }
  items_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayMemory::at(std::size_t i) const {
  if (i >= items_.size()) throw IndexError("replay index out of range");
  return items_[(head_ + i) % items_.size()];
}

std::vector<const Transition*> ReplayMemory::Sample(std::size_t k, std::mt19937_64& rng) const {
  if (k == 0 || items_.size() < k) {
    throw InsufficientDataError("cannot sample " + std::to_string(k) + " transitions from " +
                                std::to_string(items_.size()));
  }
  std::uniform_int_distribution<std::size_t> slot(0, items_.size() - 1);
  std::vector<const Transition*> batch;
  batch.reserve(k);
  for (std::size_t i = 0; i < k; ++i) batch.push_back(&items_[slot(rng)]);
  return batch;
}

}  // namespace fdqn
