// Copyright 2026 The Chargeplan Authors
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

#include "chargeplan/replay_buffer.h"

#include <algorithm>
#include <unordered_set>

namespace chargeplan {

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
  slots_.resize(capacity_);
}

void ReplayBuffer::Add(std::span<const double> observation, int action,
                       double reward, std::span<const double> next_observation,
                       bool done) {
  if (capacity_ == 0) return;
  Transition& t = slots_[next_];
  t.observation.assign(observation.begin(), observation.end());
  t.action = action;
  t.reward = reward;
  t.next_observation.assign(next_observation.begin(), next_observation.end());
  t.done = done;
  next_ = (next_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

const Transition& ReplayBuffer::at(size_t i) const {
  const size_t oldest = size_ < capacity_ ? 0 : next_;
  return slots_[(oldest + i) % capacity_];
}

std::vector<size_t> ReplayBuffer::Sample(size_t batch, Rng& rng) const {
  // Floyd's algorithm: `batch` distinct values from [0, size_).
  std::vector<size_t> picked;
  picked.reserve(batch);
  std::unordered_set<size_t> seen;
  for (size_t j = size_ - batch; j < size_; ++j) {
    const size_t t = static_cast<size_t>(rng.Uniform() * (j + 1));
    const size_t pick = std::min(t, j);
    if (seen.insert(pick).second) {
      picked.push_back(pick);
    } else {
      seen.insert(j);
      picked.push_back(j);
    }
  }
  return picked;
}

}  // namespace chargeplan
