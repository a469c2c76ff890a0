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

#include "chargeplan/baselines.h"

#include <limits>
#include <optional>
#include <utility>

#include "absl/strings/str_cat.h"
#include "chargeplan/planner.h"

namespace chargeplan {
namespace {

struct Candidate {
  size_t node = 0;
  ChargerCounts chargers;
  double fee = 0.0;
  double key = 0.0;
};

// Station sized by the configuration lookup for a new site at `node`.
std::optional<Candidate> SizedCandidate(size_t node, const ChargingPlan& plan,
                                        const ConfigTable& table,
                                        const RoadNetwork& network,
                                        const UtilityParams& params) {
  const double required = RequiredCapacity(node, plan, network, params);
  absl::StatusOr<ConfigChoice> choice = table.Cheapest(required);
  if (!choice.ok()) return std::nullopt;
  Candidate c;
  c.node = node;
  c.chargers = choice->config.chargers;
  c.fee = StationFee(node, c.chargers, network, params.catalog);
  return c;
}

bool StableWith(const ChargingPlan& plan, const Candidate& c,
                const RoadNetwork& network, const UtilityParams& params) {
  ChargingPlan trial = plan;
  trial.Place(c.node, c.chargers);
  return IsStable(trial, network, params);
}

// Shared loop of the site-by-site greedy algorithms. `rank` scores a sized
// candidate against the current plan; larger is better.
template <typename RankFn>
BaselineResult GreedySites(const ChargingPlan& initial, double budget,
                           const RoadNetwork& network,
                           const UtilityParams& params, bool top_up,
                           RankFn rank) {
  const ConfigTable table =
      ConfigTable::Build(params.catalog, params.max_chargers);
  BaselineResult result{initial, 0.0};
  double remaining = budget;
  while (true) {
    std::optional<Candidate> best;
    for (size_t v = 0; v < network.num_nodes(); ++v) {
      if (result.plan.Contains(v)) continue;
      std::optional<Candidate> c =
          SizedCandidate(v, result.plan, table, network, params);
      if (!c) continue;
      c->key = rank(*c, result.plan);
      if (best && c->key <= best->key) continue;
      if (!StableWith(result.plan, *c, network, params)) continue;
      best = std::move(c);
    }
    if (!best || best->fee > remaining) break;
    result.plan.Place(best->node, best->chargers);
    remaining -= best->fee;
    if (top_up) TopUpStation(result.plan, best->node, &remaining, network, params);
  }
  result.spent = budget - remaining;
  return result;
}

}  // namespace

std::string BaselineName(Baseline b) {
  switch (b) {
    case Baseline::kExisting:
      return "existing";
    case Baseline::kBestBenefit:
      return "best_benefit";
    case Baseline::kHighestDemand:
      return "highest_demand";
    case Baseline::kBoundingOptimisingPlus:
      return "bounding_optimising_plus";
    case Baseline::kScoreGreedy:
      return "score_greedy";
  }
  return "unknown";
}

std::vector<Baseline> AllBaselines() {
  return {Baseline::kExisting, Baseline::kBestBenefit, Baseline::kHighestDemand,
          Baseline::kBoundingOptimisingPlus, Baseline::kScoreGreedy};
}

absl::StatusOr<Baseline> ParseBaseline(const std::string& name) {
  for (Baseline b : AllBaselines()) {
    if (BaselineName(b) == name) return b;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown algorithm '", name, "'"));
}

BaselineResult ExistingCharging(const ChargingPlan& initial) {
  return BaselineResult{initial, 0.0};
}

BaselineResult BestBenefit(const ChargingPlan& initial, double budget,
                           const RoadNetwork& network,
                           const UtilityParams& params) {
  return GreedySites(initial, budget, network, params, /*top_up=*/false,
                     [&](const Candidate& c, const ChargingPlan& plan) {
                       ChargingPlan trial = plan;
                       trial.Place(c.node, c.chargers);
                       return Benefit(trial, network, params);
                     });
}

BaselineResult HighestDemand(const ChargingPlan& initial, double budget,
                             const RoadNetwork& network,
                             const UtilityParams& params) {
  return GreedySites(initial, budget, network, params, /*top_up=*/false,
                     [&](const Candidate& c, const ChargingPlan&) {
                       return WeakenedDemand(c.node, network, params);
                     });
}

BaselineResult BoundingOptimisingPlus(const ChargingPlan& initial,
                                      double budget,
                                      const RoadNetwork& network,
                                      const UtilityParams& params) {
  return GreedySites(initial, budget, network, params, /*top_up=*/true,
                     [&](const Candidate& c, const ChargingPlan& plan) {
                       ChargingPlan trial = plan;
                       trial.Place(c.node, c.chargers);
                       return Benefit(trial, network, params);
                     });
}

int TopUpStation(ChargingPlan& plan, size_t node, double* remaining,
                 const RoadNetwork& network, const UtilityParams& params) {
  int added = 0;
  while (true) {
    const ChargerCounts* counts = plan.Find(node);
    if (counts == nullptr || TotalChargers(*counts) >= params.max_chargers) {
      break;
    }
    absl::StatusOr<StationQueue> queue =
        StationQueueOf(node, plan, network, params);
    if (queue.ok() && queue->utilization <= params.rho_target) break;
    const int type = params.catalog.BestValueType(*remaining);
    if (type < 0) break;
    plan.AddCharger(node, type);
    *remaining -= params.catalog.cost_eur[type];
    ++added;
  }
  return added;
}

BaselineResult ScoreGreedy(const ChargingPlan& initial, double budget,
                           const RoadNetwork& network,
                           const UtilityParams& params) {
  BaselineResult result{initial, 0.0};
  double remaining = budget;
  const int cheapest = params.catalog.CheapestType();
  const int m = params.catalog.size();
  double current = 0.0;
  if (absl::StatusOr<double> s = Score(result.plan, network, params); s.ok()) {
    current = *s;
  }
  while (true) {
    std::optional<ChargingPlan> best_plan;
    double best_score = current;
    double best_fee = 0.0;
    auto consider = [&](ChargingPlan trial, double fee) {
      if (fee > remaining) return;
      absl::StatusOr<double> s = Score(trial, network, params);
      if (!s.ok() || !(*s > best_score)) return;
      best_score = *s;
      best_fee = fee;
      best_plan = std::move(trial);
    };
    for (size_t v = 0; v < network.num_nodes(); ++v) {
      const ChargerCounts* counts = result.plan.Find(v);
      if (counts == nullptr) {
        ChargerCounts chargers(m, 0);
        chargers[cheapest] = 1;
        const double fee = StationFee(v, chargers, network, params.catalog);
        ChargingPlan trial = result.plan;
        trial.Place(v, std::move(chargers));
        consider(std::move(trial), fee);
      } else if (TotalChargers(*counts) < params.max_chargers) {
        for (int t = 0; t < m; ++t) {
          ChargingPlan trial = result.plan;
          trial.AddCharger(v, t);
          consider(std::move(trial), params.catalog.cost_eur[t]);
        }
      }
    }
    if (!best_plan) break;
    result.plan = *std::move(best_plan);
    remaining -= best_fee;
    current = best_score;
  }
  result.spent = budget - remaining;
  return result;
}

absl::StatusOr<BaselineResult> RunBaseline(Baseline baseline,
                                           const ChargingPlan& initial,
                                           double budget,
                                           const RoadNetwork& network,
                                           const UtilityParams& params) {
  if (!(budget >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("budget must be non-negative, got ", budget));
  }
  switch (baseline) {
    case Baseline::kExisting:
      return ExistingCharging(initial);
    case Baseline::kBestBenefit:
      return BestBenefit(initial, budget, network, params);
    case Baseline::kHighestDemand:
      return HighestDemand(initial, budget, network, params);
    case Baseline::kBoundingOptimisingPlus:
      return BoundingOptimisingPlus(initial, budget, network, params);
    case Baseline::kScoreGreedy:
      return ScoreGreedy(initial, budget, network, params);
  }
  return absl::InvalidArgumentError("unknown algorithm");
}

}  // namespace chargeplan
