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

#include "chargeplan/env.h"

#include <algorithm>
#include <limits>

#include "absl/strings/str_cat.h"

namespace chargeplan {
namespace {

void MinMaxScale(std::vector<double>& values) {
  if (values.empty()) return;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double range = *hi - *lo;
  for (double& v : values) v = range > 0.0 ? (v - min) / range : 0.0;
}

Strategy StrategyOf(Action a) {
  return a == Action::kCreateByDemand || a == Action::kIncreaseByDemand
             ? Strategy::kDemand
             : Strategy::kBenefit;
}

}  // namespace

std::string ActionName(Action action) {
  switch (action) {
    case Action::kCreateByBenefit:
      return "create_by_benefit";
    case Action::kCreateByDemand:
      return "create_by_demand";
    case Action::kIncreaseByBenefit:
      return "increase_by_benefit";
    case Action::kIncreaseByDemand:
      return "increase_by_demand";
    case Action::kRelocate:
      return "relocate";
  }
  return "unknown";
}

std::string TerminationName(Termination t) {
  switch (t) {
    case Termination::kNone:
      return "none";
    case Termination::kBudgetExceeded:
      return "budget_exceeded";
    case Termination::kAllStationsFull:
      return "all_stations_full";
    case Termination::kMaxIterations:
      return "max_iterations";
  }
  return "unknown";
}

PlacementEnv::PlacementEnv(const RoadNetwork* network, UtilityParams params)
    : network_(network),
      params_(std::move(params)),
      table_(ConfigTable::Build(params_.catalog, params_.max_chargers)) {
  const size_t n = network_->num_nodes();
  max_steps_ = static_cast<int>((n + 1) / 2);
  capacity_norm_ = params_.max_chargers * params_.catalog.MaxPower();

  std::vector<double> lat(n), lon(n), estate(n);
  weak_demand_.resize(n);
  for (size_t v = 0; v < n; ++v) {
    const Node& node = network_->node(v);
    lat[v] = node.lat;
    lon[v] = node.lon;
    estate[v] = node.estate_cost;
    weak_demand_[v] = WeakenedDemand(v, *network_, params_);
  }
  MinMaxScale(lat);
  MinMaxScale(lon);
  MinMaxScale(estate);
  static_features_.resize(5 * n);
  for (size_t v = 0; v < n; ++v) {
    const Node& node = network_->node(v);
    double* f = &static_features_[5 * v];
    f[0] = lat[v];
    f[1] = lon[v];
    f[2] = node.demand;
    f[3] = node.home_share;
    f[4] = estate[v];
  }
}

absl::StatusOr<std::vector<double>> PlacementEnv::Reset(
    const ChargingPlan& initial) {
  FeasibilityReport report = CheckConstraints(initial, *network_, params_, 0.0);
  if (!report.feasible()) {
    const Violation& v = report.violations.front();
    return absl::InvalidArgumentError(
        absl::StrCat("initial plan violates the ", ConstraintName(v.kind),
                     " constraint at node ", v.node_id, " (value ", v.value,
                     ")"));
  }
  absl::StatusOr<PlanEvaluation> eval =
      EvaluatePlan(initial, *network_, params_);
  if (!eval.ok()) return eval.status();
  plan_ = initial;
  evaluation_ = *std::move(eval);
  spent_ = 0.0;
  step_index_ = 0;
  started_ = true;
  done_ = false;
  termination_ = Termination::kNone;
  if (AllStationsFull()) {
    done_ = true;
    termination_ = Termination::kAllStationsFull;
  }
  return Observe();
}

std::vector<double> PlacementEnv::Observe() const {
  const size_t n = network_->num_nodes();
  std::vector<double> obs(observation_size(), 0.0);
  for (size_t v = 0; v < n; ++v) {
    std::copy_n(&static_features_[5 * v], 5, &obs[kFeaturesPerNode * v]);
  }
  for (const auto& [node, chargers] : plan_) {
    obs[kFeaturesPerNode * node + 5] =
        Capacity(chargers, params_.catalog) / capacity_norm_;
  }
  obs.back() = std::clamp(remaining_budget() / params_.budget_eur, 0.0, 1.0);
  return obs;
}

bool PlacementEnv::AllStationsFull() const {
  if (plan_.size() != network_->num_nodes()) return false;
  for (const auto& [node, chargers] : plan_) {
    if (TotalChargers(chargers) < params_.max_chargers) return false;
  }
  return true;
}

std::optional<PlanChange> PlacementEnv::ProposeCreate(Strategy strategy) const {
  const size_t n = network_->num_nodes();
  size_t best = n;
  for (size_t v = 0; v < n; ++v) {
    if (plan_.Contains(v)) continue;
    if (best == n) {
      best = v;
      continue;
    }
    if (strategy == Strategy::kBenefit
            ? evaluation_.coverage[v] < evaluation_.coverage[best]
            : weak_demand_[v] > weak_demand_[best]) {
      best = v;
    }
  }
  if (best == n) {
    std::optional<PlanChange> change = ProposeIncrease(strategy);
    if (change) {
      change->effective_action = strategy == Strategy::kBenefit
                                     ? Action::kIncreaseByBenefit
                                     : Action::kIncreaseByDemand;
    }
    return change;
  }
  const double required = RequiredCapacity(best, plan_, *network_, params_);
  absl::StatusOr<ConfigChoice> choice = table_.Cheapest(required);
  if (!choice.ok()) return std::nullopt;
  PlanChange change;
  change.plan = plan_;
  change.plan.Place(best, choice->config.chargers);
  change.fee = StationFee(best, choice->config.chargers, *network_,
                          params_.catalog);
  change.effective_action = strategy == Strategy::kBenefit
                                ? Action::kCreateByBenefit
                                : Action::kCreateByDemand;
  return change;
}

std::optional<PlanChange> PlacementEnv::ProposeIncrease(
    Strategy strategy) const {
  std::optional<size_t> best;
  for (const auto& [node, chargers] : plan_) {
    if (TotalChargers(chargers) >= params_.max_chargers) continue;
    if (!best) {
      best = node;
      continue;
    }
    if (strategy == Strategy::kBenefit
            ? evaluation_.coverage[node] < evaluation_.coverage[*best]
            : weak_demand_[node] > weak_demand_[*best]) {
      best = node;
    }
  }
  if (!best) return std::nullopt;
  int type = params_.catalog.BestValueType(remaining_budget());
  // Nothing affordable: propose the cheapest type so the budget rule ends
  // the episode.
  if (type < 0) type = params_.catalog.CheapestType();
  PlanChange change;
  change.plan = plan_;
  change.plan.AddCharger(*best, type);
  change.fee = params_.catalog.cost_eur[type];
  change.effective_action = strategy == Strategy::kBenefit
                                ? Action::kIncreaseByBenefit
                                : Action::kIncreaseByDemand;
  return change;
}

std::optional<PlanChange> PlacementEnv::ProposeRelocate() const {
  if (plan_.size() < 2) return std::nullopt;

  // Donor: the station whose removal loses the least benefit.
  const double full_benefit = evaluation_.benefit;
  std::optional<size_t> donor;
  double donor_marginal = std::numeric_limits<double>::infinity();
  for (const auto& [node, chargers] : plan_) {
    ChargingPlan without = plan_;
    without.Remove(node);
    const double marginal =
        full_benefit - Benefit(without, *network_, params_);
    if (marginal < donor_marginal) {
      donor_marginal = marginal;
      donor = node;
    }
  }

  // Recipient: the non-full station with the largest W * D + rho.
  std::optional<size_t> recipient;
  double recipient_load = -std::numeric_limits<double>::infinity();
  for (const StationQueue& q : evaluation_.queues) {
    if (q.node == *donor) continue;
    if (TotalChargers(*plan_.Find(q.node)) >= params_.max_chargers) continue;
    const double load = ExpectedWait(q) * q.arrival_rate + q.utilization;
    if (load > recipient_load) {
      recipient_load = load;
      recipient = q.node;
    }
  }
  if (!recipient) return std::nullopt;

  const ChargerCounts& donor_chargers = *plan_.Find(*donor);
  const int type = params_.catalog.LowestPowerTypeIn(donor_chargers);
  if (type < 0) return std::nullopt;
  PlanChange change;
  change.plan = plan_;
  ChargerCounts moved = donor_chargers;
  --moved[type];
  if (TotalChargers(moved) == 0) {
    change.plan.Remove(*donor);
  } else {
    change.plan.Place(*donor, moved);
  }
  change.plan.AddCharger(*recipient, type);
  change.fee = 0.0;
  change.effective_action = Action::kRelocate;
  return change;
}

std::optional<PlanChange> PlacementEnv::Propose(Action action) const {
  switch (action) {
    case Action::kCreateByBenefit:
    case Action::kCreateByDemand:
      return ProposeCreate(StrategyOf(action));
    case Action::kIncreaseByBenefit:
    case Action::kIncreaseByDemand:
      return ProposeIncrease(StrategyOf(action));
    case Action::kRelocate:
      return ProposeRelocate();
  }
  return std::nullopt;
}

absl::StatusOr<StepResult> PlacementEnv::Step(Action action) {
  if (!started_) {
    return absl::FailedPreconditionError("Step() called before Reset()");
  }
  if (done_) {
    return absl::FailedPreconditionError("Step() called after episode end");
  }
  const int code = static_cast<int>(action);
  if (code < 0 || code >= kNumActions) {
    return absl::InvalidArgumentError(absl::StrCat("invalid action ", code));
  }
  StepResult result;
  std::optional<PlanChange> change = Propose(action);
  if (change) {
    result.info.fee = change->fee;
    if (change->effective_action != action) {
      result.info.effective_action = change->effective_action;
    }
    if (spent_ + change->fee > params_.budget_eur) {
      done_ = true;
      termination_ = Termination::kBudgetExceeded;
    } else {
      absl::StatusOr<PlanEvaluation> eval =
          EvaluatePlan(change->plan, *network_, params_);
      // An unstable result (rho >= 1 somewhere) is dropped as a no-op.
      if (eval.ok()) {
        result.reward = eval->score - evaluation_.score;
        plan_ = std::move(change->plan);
        evaluation_ = *std::move(eval);
        spent_ += change->fee;
        result.info.applied = true;
      }
    }
  }
  ++step_index_;
  if (!done_ && AllStationsFull()) {
    done_ = true;
    termination_ = Termination::kAllStationsFull;
  }
  if (!done_ && step_index_ >= max_steps_) {
    done_ = true;
    termination_ = Termination::kMaxIterations;
  }
  result.done = done_;
  result.info.termination = termination_;
  result.observation = Observe();
  return result;
}

}  // namespace chargeplan
