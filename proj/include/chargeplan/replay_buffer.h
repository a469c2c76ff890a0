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

#ifndef CHARGEPLAN_REPLAY_BUFFER_H_
#define CHARGEPLAN_REPLAY_BUFFER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "chargeplan/rng.h"

namespace chargeplan {

// Observations are stored as float to halve memory.
struct Transition {
  std::vector<float> observation;
  int action = 0;
  double reward = 0.0;
  std::vector<float> next_observation;
  bool done = false;
};

// Fixed-capacity ring; the oldest transition is overwritten first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity);

  void Add(std::span<const double> observation, int action, double reward,
           std::span<const double> next_observation, bool done);

  size_t size() const { return size_; }
  size_t capacity() const { return capacity_; }

  // i-th transition counted from the oldest one still held.
  const Transition& at(size_t i) const;

  // `batch` distinct positions (valid for at()), uniform without
  // replacement. Requires batch <= size().
  std::vector<size_t> Sample(size_t batch, Rng& rng) const;

 private:
  size_t capacity_;
  size_t size_ = 0;
  size_t next_ = 0;
  std::vector<Transition> slots_;
};

}  // namespace chargeplan

#endif  // CHARGEPLAN_REPLAY_BUFFER_H_
