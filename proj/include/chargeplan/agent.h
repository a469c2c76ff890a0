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

// Deep Q-learning over the placement environment.
//
// The agent follows the usual DQN recipe: epsilon-greedy rollouts fill a
// replay buffer, mini-batches regress Q(s, a) towards
// r + gamma * max_a' Q_target(s', a') (just r on terminal transitions), and
// the target network is refreshed every `target_sync_steps` environment
// steps. Training is single-threaded and reproducible for a fixed seed.

#ifndef CHARGEPLAN_AGENT_H_
#define CHARGEPLAN_AGENT_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "chargeplan/env.h"
#include "chargeplan/mlp.h"
#include "chargeplan/report.h"
#include "chargeplan/rng.h"

namespace chargeplan {

struct TrainConfig {
  int batch_size = 128;
  int buffer_size = 10000;
  double learning_rate = 0.001;
  double momentum = 0.9;
  int episodes_max = 2000;
  double gamma = 0.99;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  // Fraction of the step horizon (episodes_max * max_steps) over which
  // epsilon decays linearly.
  double exploration_fraction = 0.1;
  int target_sync_steps = 1000;
  int train_freq = 4;  // environment steps per gradient update
  double huber_delta = 1.0;
  std::vector<int> hidden_layers = {64, 64};
  // Greedy evaluation period in episodes; the best evaluated snapshot is
  // returned.
  int eval_every = 10;
  uint64_t seed = 0;

  absl::Status Validate() const;
};

// Maps an observation to five action values.
class Policy {
 public:
  Policy() = default;
  explicit Policy(Mlp network) : network_(std::move(network)) {}

  std::array<double, kNumActions> ActionValues(
      std::span<const double> observation) const;

  // Argmax of the action values; ties go to the lower code.
  Action Greedy(std::span<const double> observation) const;

  // With probability `epsilon` a uniform random action, else Greedy().
  Action Act(std::span<const double> observation, double epsilon,
             Rng& rng) const;

  const Mlp& network() const { return network_; }
  Mlp& mutable_network() { return network_; }

  absl::Status Save(const std::string& path) const;
  static absl::StatusOr<Policy> Load(const std::string& path);

 private:
  Mlp network_;
};

// Argmax with ties to the lowest index.
Action ArgmaxAction(std::span<const double> values);

struct EpisodeLog {
  int episode = 0;
  int steps = 0;
  double final_score = 0.0;
  double epsilon = 0.0;
  double loss_mean = 0.0;
};

// episode,steps,final_score,epsilon,loss_mean
std::string TrainingLogCsv(const std::vector<EpisodeLog>& log);

struct TrainResult {
  Policy policy;  // best greedy snapshot
  double best_score = 0.0;
  std::vector<EpisodeLog> log;
};

// Trains on `env`, starting every episode from `initial`. Fails with
// Internal on a non-finite loss.
absl::StatusOr<TrainResult> Train(
    PlacementEnv& env, const ChargingPlan& initial, const TrainConfig& config,
    const std::function<void(const EpisodeLog&)>& on_episode = nullptr);

// TD targets r + gamma * (1 - done) * max_a next_values(i, a).
std::vector<double> TdTargets(std::span<const double> rewards,
                              std::span<const bool> dones,
                              const Eigen::MatrixXd& next_values, double gamma);

struct PolicyRollout {
  ChargingPlan plan;
  PlanMetrics metrics;
  std::vector<Action> actions;
};

// One greedy episode from `initial`.
absl::StatusOr<PolicyRollout> EvaluatePolicy(const Policy& policy,
                                             PlacementEnv& env,
                                             const ChargingPlan& initial);

// Episode driven by `choose`, which sees the current observation.
absl::StatusOr<PolicyRollout> RunEpisode(
    PlacementEnv& env, const ChargingPlan& initial,
    const std::function<Action(const std::vector<double>&)>& choose);

}  // namespace chargeplan

#endif  // CHARGEPLAN_AGENT_H_
