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

#include "chargeplan/agent.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "chargeplan/replay_buffer.h"
#include "text_util.h"

namespace chargeplan {
namespace {

Eigen::MatrixXd RowOf(std::span<const double> observation) {
  Eigen::MatrixXd x(1, observation.size());
  for (size_t j = 0; j < observation.size(); ++j) x(0, j) = observation[j];
  return x;
}

}  // namespace

absl::Status TrainConfig::Validate() const {
  if (batch_size < 1 || buffer_size < batch_size) {
    return absl::InvalidArgumentError(
        "batch_size must be positive and at most buffer_size");
  }
  if (!(learning_rate > 0.0)) {
    return absl::InvalidArgumentError("learning_rate must be positive");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    return absl::InvalidArgumentError("gamma must lie in (0, 1]");
  }
  if (epsilon_start < 0.0 || epsilon_start > 1.0 || epsilon_end < 0.0 ||
      epsilon_end > 1.0) {
    return absl::InvalidArgumentError("epsilon values must lie in [0, 1]");
  }
  if (episodes_max < 1 || target_sync_steps < 1 || train_freq < 1 ||
      eval_every < 1) {
    return absl::InvalidArgumentError(
        "episodes_max, target_sync_steps, train_freq and eval_every must be "
        "positive");
  }
  for (int w : hidden_layers) {
    if (w < 1) return absl::InvalidArgumentError("hidden widths must be positive");
  }
  return absl::OkStatus();
}

Action ArgmaxAction(std::span<const double> values) {
  size_t best = 0;
  for (size_t a = 1; a < values.size(); ++a) {
    if (values[a] > values[best]) best = a;
  }
  return static_cast<Action>(best);
}

std::array<double, kNumActions> Policy::ActionValues(
    std::span<const double> observation) const {
  const Eigen::MatrixXd q = network_.Forward(RowOf(observation));
  std::array<double, kNumActions> values{};
  for (int a = 0; a < kNumActions; ++a) values[a] = q(0, a);
  return values;
}

Action Policy::Greedy(std::span<const double> observation) const {
  const auto values = ActionValues(observation);
  return ArgmaxAction(values);
}

Action Policy::Act(std::span<const double> observation, double epsilon,
                   Rng& rng) const {
  if (epsilon > 0.0 && rng.Uniform() < epsilon) {
    return static_cast<Action>(rng.UniformInt(kNumActions));
  }
  return Greedy(observation);
}

absl::Status Policy::Save(const std::string& path) const {
  return internal::WriteTextFile(path, network_.Serialize());
}

absl::StatusOr<Policy> Policy::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  absl::StatusOr<Mlp> mlp = Mlp::Deserialize(buf.str());
  if (!mlp.ok()) return mlp.status();
  if (mlp->output_size() != kNumActions) {
    return absl::InvalidArgumentError(absl::StrCat(
        path, ": policy has ", mlp->output_size(), " outputs, expected ",
        kNumActions));
  }
  return Policy(*std::move(mlp));
}

std::string TrainingLogCsv(const std::vector<EpisodeLog>& log) {
  using internal::FormatDouble;
  std::string out = "episode,steps,final_score,epsilon,loss_mean\n";
  for (const EpisodeLog& e : log) {
    absl::StrAppend(&out, e.episode, ",", e.steps, ",",
                    FormatDouble(e.final_score), ",", FormatDouble(e.epsilon),
                    ",", FormatDouble(e.loss_mean), "\n");
  }
  return out;
}

std::vector<double> TdTargets(std::span<const double> rewards,
                              std::span<const bool> dones,
                              const Eigen::MatrixXd& next_values,
                              double gamma) {
  std::vector<double> targets(rewards.size());
  for (size_t i = 0; i < rewards.size(); ++i) {
    targets[i] = dones[i] ? rewards[i]
                          : rewards[i] + gamma * next_values.row(i).maxCoeff();
  }
  return targets;
}

absl::StatusOr<PolicyRollout> RunEpisode(
    PlacementEnv& env, const ChargingPlan& initial,
    const std::function<Action(const std::vector<double>&)>& choose) {
  absl::StatusOr<std::vector<double>> obs = env.Reset(initial);
  if (!obs.ok()) return obs.status();
  PolicyRollout rollout;
  std::vector<double> current = *std::move(obs);
  while (!env.done()) {
    const Action a = choose(current);
    rollout.actions.push_back(a);
    absl::StatusOr<StepResult> step = env.Step(a);
    if (!step.ok()) return step.status();
    current = std::move(step->observation);
  }
  rollout.plan = env.plan();
  absl::StatusOr<PlanMetrics> metrics =
      EvaluateMetrics(rollout.plan, env.network(), env.params());
  if (!metrics.ok()) return metrics.status();
  rollout.metrics = *metrics;
  return rollout;
}

absl::StatusOr<PolicyRollout> EvaluatePolicy(const Policy& policy,
                                             PlacementEnv& env,
                                             const ChargingPlan& initial) {
  return RunEpisode(env, initial, [&](const std::vector<double>& obs) {
    return policy.Greedy(obs);
  });
}

absl::StatusOr<TrainResult> Train(
    PlacementEnv& env, const ChargingPlan& initial, const TrainConfig& config,
    const std::function<void(const EpisodeLog&)>& on_episode) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  Rng rng(config.seed);
  std::vector<int> sizes;
  sizes.push_back(static_cast<int>(env.observation_size()));
  sizes.insert(sizes.end(), config.hidden_layers.begin(),
               config.hidden_layers.end());
  sizes.push_back(kNumActions);
  Policy behaviour{Mlp(sizes, rng)};
  Mlp& online = behaviour.mutable_network();
  Mlp target = online;
  SgdMomentum optimizer(config.learning_rate, config.momentum);
  ReplayBuffer buffer(config.buffer_size);
  PlacementEnv eval_env(&env.network(), env.params());

  const double horizon =
      static_cast<double>(config.episodes_max) * std::max(env.max_steps(), 1);
  const double decay_steps = std::max(1.0, config.exploration_fraction * horizon);
  auto epsilon_at = [&](int64_t step) {
    const double frac = std::min(1.0, static_cast<double>(step) / decay_steps);
    return config.epsilon_start + (config.epsilon_end - config.epsilon_start) * frac;
  };

  const size_t obs_size = env.observation_size();
  const int batch = config.batch_size;
  Eigen::MatrixXd states(batch, obs_size);
  Eigen::MatrixXd next_states(batch, obs_size);
  std::vector<int> actions(batch);
  std::vector<double> rewards(batch);
  std::unique_ptr<bool[]> dones(new bool[batch]);
  MlpParams grads;

  TrainResult result;
  bool have_best = false;
  int64_t global_step = 0;
  for (int episode = 0; episode < config.episodes_max; ++episode) {
    absl::StatusOr<std::vector<double>> reset = env.Reset(initial);
    if (!reset.ok()) return reset.status();
    std::vector<double> obs = *std::move(reset);
    double loss_sum = 0.0;
    int updates = 0;
    int steps = 0;
    double epsilon = epsilon_at(global_step);
    while (!env.done()) {
      epsilon = epsilon_at(global_step);
      const Action a = behaviour.Act(obs, epsilon, rng);
      absl::StatusOr<StepResult> step = env.Step(a);
      if (!step.ok()) return step.status();
      buffer.Add(obs, static_cast<int>(a), step->reward, step->observation,
                 step->done);
      obs = std::move(step->observation);
      ++global_step;
      ++steps;

      if (buffer.size() >= static_cast<size_t>(batch) &&
          global_step % config.train_freq == 0) {
        const std::vector<size_t> picks = buffer.Sample(batch, rng);
        for (int i = 0; i < batch; ++i) {
          const Transition& t = buffer.at(picks[i]);
          for (size_t j = 0; j < obs_size; ++j) {
            states(i, j) = t.observation[j];
            next_states(i, j) = t.next_observation[j];
          }
          actions[i] = t.action;
          rewards[i] = t.reward;
          dones[i] = t.done;
        }
        const std::vector<double> targets =
            TdTargets(rewards, std::span<const bool>(dones.get(), batch),
                      target.Forward(next_states), config.gamma);
        const double loss = online.TdLoss(states, actions, targets,
                                          config.huber_delta, &grads);
        if (!std::isfinite(loss)) {
          return absl::InternalError(absl::StrCat(
              "non-finite TD loss at episode ", episode, ", step ",
              global_step));
        }
        optimizer.Step(grads, online.mutable_params());
        loss_sum += loss;
        ++updates;
      }
      if (global_step % config.target_sync_steps == 0) target = online;
    }

    EpisodeLog entry;
    entry.episode = episode;
    entry.steps = steps;
    entry.final_score = env.score();
    entry.epsilon = epsilon;
    entry.loss_mean = updates > 0 ? loss_sum / updates : 0.0;
    result.log.push_back(entry);
    if (on_episode) on_episode(entry);

    if ((episode + 1) % config.eval_every == 0 ||
        episode + 1 == config.episodes_max) {
      const Policy snapshot(online);
      absl::StatusOr<PolicyRollout> eval =
          EvaluatePolicy(snapshot, eval_env, initial);
      if (!eval.ok()) return eval.status();
      if (!have_best || eval->metrics.score > result.best_score) {
        have_best = true;
        result.best_score = eval->metrics.score;
        result.policy = snapshot;
      }
    }
  }
  return result;
}

}  // namespace chargeplan
