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

// Episodic placement environment with five discrete actions.
//
// Each step proposes one plan change, charges its fee against the budget and
// rewards the change in score. An episode ends when an action costs more
// than the remaining budget (the action is dropped), when every node holds a
// full station, or after ceil(|V| / 2) steps.
//
// Changes that would leave any station with rho >= 1 are turned into no-ops
// with zero reward, so every plan reached is feasible. Existing stations in
// the initial plan are sunk cost: the budget starts untouched.

#ifndef CHARGEPLAN_ENV_H_
#define CHARGEPLAN_ENV_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "chargeplan/netdata.h"
#include "chargeplan/plan.h"
#include "chargeplan/planner.h"
#include "chargeplan/utility.h"

namespace chargeplan {

enum class Action : int {
  kCreateByBenefit = 0,
  kCreateByDemand = 1,
  kIncreaseByBenefit = 2,
  kIncreaseByDemand = 3,
  kRelocate = 4,
};

inline constexpr int kNumActions = 5;

std::string ActionName(Action action);

enum class Strategy { kBenefit, kDemand };

enum class Termination {
  kNone,
  kBudgetExceeded,
  kAllStationsFull,
  kMaxIterations,
};

std::string TerminationName(Termination t);

// Per-node observation features, in order.
inline constexpr int kFeaturesPerNode = 6;

// A proposed plan and the fee it would charge.
struct PlanChange {
  ChargingPlan plan;
  double fee = 0.0;
  Action effective_action = Action::kCreateByBenefit;
};

struct StepInfo {
  bool applied = false;
  Termination termination = Termination::kNone;
  double fee = 0.0;
  // Set when the action changed meaning, e.g. a create with no free node.
  std::optional<Action> effective_action;
};

struct StepResult {
  std::vector<double> observation;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

class PlacementEnv {
 public:
  // `network` must outlive the environment.
  PlacementEnv(const RoadNetwork* network, UtilityParams params);

  // Starts an episode from `initial`, which must satisfy the charger bound
  // and stability constraints.
  absl::StatusOr<std::vector<double>> Reset(const ChargingPlan& initial);

  // Fails with FailedPrecondition after the episode is done.
  absl::StatusOr<StepResult> Step(Action action);

  // [lat, lon, demand, home, estate, installed capacity] per node, min-max
  // scaled to [0, 1], followed by the remaining-budget fraction.
  std::vector<double> Observe() const;
  size_t observation_size() const {
    return kFeaturesPerNode * network_->num_nodes() + 1;
  }

  // Change each action would make in the current state; nullopt for a no-op.
  std::optional<PlanChange> ProposeCreate(Strategy strategy) const;
  std::optional<PlanChange> ProposeIncrease(Strategy strategy) const;
  std::optional<PlanChange> ProposeRelocate() const;
  std::optional<PlanChange> Propose(Action action) const;

  const ChargingPlan& plan() const { return plan_; }
  const PlanEvaluation& evaluation() const { return evaluation_; }
  double score() const { return evaluation_.score; }
  double spent() const { return spent_; }
  double remaining_budget() const { return params_.budget_eur - spent_; }
  int step_index() const { return step_index_; }
  int max_steps() const { return max_steps_; }
  bool done() const { return done_; }
  Termination termination() const { return termination_; }
  const RoadNetwork& network() const { return *network_; }
  const UtilityParams& params() const { return params_; }
  const ConfigTable& config_table() const { return table_; }

 private:
  bool AllStationsFull() const;

  const RoadNetwork* network_;
  UtilityParams params_;
  ConfigTable table_;
  std::vector<double> static_features_;  // 5 per node
  std::vector<double> weak_demand_;
  double capacity_norm_ = 1.0;
  int max_steps_ = 0;

  ChargingPlan plan_;
  PlanEvaluation evaluation_;
  double spent_ = 0.0;
  int step_index_ = 0;
  bool started_ = false;
  bool done_ = false;
  Termination termination_ = Termination::kNone;
};

}  // namespace chargeplan

#endif  // CHARGEPLAN_ENV_H_
