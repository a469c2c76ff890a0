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

// Greedy comparison algorithms. All of them are deterministic and only emit
// plans whose new spend stays within `budget` and whose stations are stable.
//
// `budget` is what may be spent on top of `initial`; stations already in
// `initial` are sunk cost.

#ifndef CHARGEPLAN_BASELINES_H_
#define CHARGEPLAN_BASELINES_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "chargeplan/netdata.h"
#include "chargeplan/plan.h"
#include "chargeplan/utility.h"

namespace chargeplan {

enum class Baseline {
  kExisting,
  kBestBenefit,
  kHighestDemand,
  kBoundingOptimisingPlus,
  kScoreGreedy,
};

std::string BaselineName(Baseline b);
absl::StatusOr<Baseline> ParseBaseline(const std::string& name);
std::vector<Baseline> AllBaselines();

// Plan plus the amount spent on top of the initial plan.
struct BaselineResult {
  ChargingPlan plan;
  double spent = 0.0;
};

// Status quo: returns `initial` unchanged.
BaselineResult ExistingCharging(const ChargingPlan& initial);

// Repeatedly places a station, sized by the configuration lookup, at the
// free node with the largest benefit gain. Stops at the first unaffordable
// choice. Candidates that would destabilise the plan are passed over.
BaselineResult BestBenefit(const ChargingPlan& initial, double budget,
                           const RoadNetwork& network,
                           const UtilityParams& params);

// As BestBenefit, ranking free nodes by weakened demand.
BaselineResult HighestDemand(const ChargingPlan& initial, double budget,
                             const RoadNetwork& network,
                             const UtilityParams& params);

// As BestBenefit, then tops the new station up with chargers while its
// utilization exceeds params.rho_target (see TopUpStation).
BaselineResult BoundingOptimisingPlus(const ChargingPlan& initial,
                                      double budget,
                                      const RoadNetwork& network,
                                      const UtilityParams& params);

// Adds best-value chargers to the station at `node` while its utilization
// exceeds params.rho_target, it has fewer than K chargers and a charger is
// affordable within `*remaining`. Returns the number of chargers added.
int TopUpStation(ChargingPlan& plan, size_t node, double* remaining,
                 const RoadNetwork& network, const UtilityParams& params);

// Single-move hill climbing on the score. Each round considers a new
// station with one charger of the cheapest type at every free node and one
// extra charger of every type at every non-full station, and applies the
// affordable, stable move with the largest positive score gain.
BaselineResult ScoreGreedy(const ChargingPlan& initial, double budget,
                           const RoadNetwork& network,
                           const UtilityParams& params);

absl::StatusOr<BaselineResult> RunBaseline(Baseline baseline,
                                           const ChargingPlan& initial,
                                           double budget,
                                           const RoadNetwork& network,
                                           const UtilityParams& params);

}  // namespace chargeplan

#endif  // CHARGEPLAN_BASELINES_H_
