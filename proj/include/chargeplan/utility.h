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

// Utility model of a charging plan.
//
//   score(p)   = lambda * benefit(p) - (1 - lambda) * cost(p)
//   benefit(p) = 1/|V| * sum_v H(cov(v)) * (1 - omega * home(v))
//   cost(p)    = alpha * travel(p) + (1 - alpha) * (charging(p) + waiting(p))
//
// Each node is served by its nearest station. A station sees arrivals
//   D(s) = arrival_scale * sum_{v -> s} dem_weak(v) / max(dist_km, floor)
// and serves them at mu(s) = C(s) / E, so rho(s) = D(s) / mu(s). Waiting
// follows the M/D/1 mean wait W(s) = rho / (2 mu (1 - rho)).
//
// Distances are haversine in meters internally; queue and travel formulas
// take kilometres and km/h, and every time is in hours.

#ifndef CHARGEPLAN_UTILITY_H_
#define CHARGEPLAN_UTILITY_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "chargeplan/netdata.h"
#include "chargeplan/plan.h"

namespace chargeplan {

struct UtilityParams {
  double lambda = 0.5;
  double alpha = 0.4;
  double omega = 0.1;
  double r_max_m = 1000.0;
  double energy_kwh = 85.0;     // E, energy per full charge
  double velocity_kmh = 30.0;   // average velocity in town
  int max_chargers = 8;         // K
  double budget_eur = 5.0e6;    // B
  double capacity_scale_kw = 50.0;
  double dist_floor_km = 0.01;
  double arrival_scale = 1.0;
  double rho_target = 0.9;      // utilization aimed for when sizing stations
  ChargerCatalog catalog = ChargerCatalog::Default();

  absl::Status Validate() const;
};

// C(s) = sum_i t_i * c_i, in kW.
double Capacity(const ChargerCounts& chargers, const ChargerCatalog& catalog);

// r_max * sigmoid(C / capacity_scale), in meters.
double InfluentialRadius(double capacity_kw, const UtilityParams& params);

// H(n) = 1 + 1/2 + ... + 1/n, H(0) = 0.
double HarmonicNumber(int n);

double WeakenedDemand(size_t node, const RoadNetwork& network,
                      const UtilityParams& params);

// Number of stations whose influential radius reaches each node.
std::vector<int> CoverageCounts(const ChargingPlan& plan,
                                const RoadNetwork& network,
                                const UtilityParams& params);
int Coverage(size_t node, const ChargingPlan& plan, const RoadNetwork& network,
             const UtilityParams& params);

double Benefit(const ChargingPlan& plan, const RoadNetwork& network,
               const UtilityParams& params);

// Node-to-station map. Every node goes to its nearest station; distances
// within kAssignmentTieMeters of each other count as ties and go to the
// station with the smaller node index.
struct Assignment {
  std::vector<size_t> station_of;  // node index -> station node index
};

inline constexpr double kAssignmentTieMeters = 1e-9;

// Fails with FailedPrecondition on an empty plan.
absl::StatusOr<Assignment> AssignStations(const ChargingPlan& plan,
                                          const RoadNetwork& network);

// D(s) for the station at `station` under `assignment`. Works for a station
// with no chargers as well, which is how candidate sites are sized.
double ArrivalRate(size_t station, const Assignment& assignment,
                   const RoadNetwork& network, const UtilityParams& params);

struct StationQueue {
  size_t node = 0;
  double capacity_kw = 0.0;
  double arrival_rate = 0.0;  // D(s), vehicles per hour
  double service_rate = 0.0;  // mu(s), vehicles per hour
  double utilization = 0.0;   // rho(s)
};

// M/D/1 mean wait in hours; +infinity when rho >= 1.
double ExpectedWait(const StationQueue& queue);

// Queue figures for every station, in node order. Fails with
// FailedPrecondition naming the node if a station has zero capacity.
absl::StatusOr<std::vector<StationQueue>> QueueParameters(
    const ChargingPlan& plan, const Assignment& assignment,
    const RoadNetwork& network, const UtilityParams& params);
absl::StatusOr<StationQueue> StationQueueOf(size_t station,
                                            const ChargingPlan& plan,
                                            const RoadNetwork& network,
                                            const UtilityParams& params);

absl::StatusOr<double> TravelTime(const ChargingPlan& plan,
                                  const RoadNetwork& network,
                                  const UtilityParams& params);
absl::StatusOr<double> ChargingTime(const ChargingPlan& plan,
                                    const RoadNetwork& network,
                                    const UtilityParams& params);
// Fails with FailedPrecondition naming the first station with rho >= 1.
absl::StatusOr<double> WaitingTime(const ChargingPlan& plan,
                                   const RoadNetwork& network,
                                   const UtilityParams& params);
// 0 for the empty plan.
absl::StatusOr<double> Cost(const ChargingPlan& plan,
                            const RoadNetwork& network,
                            const UtilityParams& params);
absl::StatusOr<double> Score(const ChargingPlan& plan,
                             const RoadNetwork& network,
                             const UtilityParams& params);

// All model quantities of one plan, computed in a single pass.
struct PlanEvaluation {
  std::vector<int> coverage;
  Assignment assignment;             // empty for the empty plan
  std::vector<StationQueue> queues;  // node order
  double benefit = 0.0;
  double travel_h = 0.0;
  double charging_h = 0.0;
  double waiting_h = 0.0;
  double cost = 0.0;
  double score = 0.0;
};

absl::StatusOr<PlanEvaluation> EvaluatePlan(const ChargingPlan& plan,
                                            const RoadNetwork& network,
                                            const UtilityParams& params);

// True when every station has positive capacity and rho < 1.
bool IsStable(const ChargingPlan& plan, const RoadNetwork& network,
              const UtilityParams& params);

// estate-cost(v) + sum_i t_i * charger-cost(i).
double StationFee(size_t node, const ChargerCounts& chargers,
                  const RoadNetwork& network, const ChargerCatalog& catalog);
double PlanFee(const ChargingPlan& plan, const RoadNetwork& network,
               const ChargerCatalog& catalog);

enum class ConstraintKind { kBudget, kChargerBound, kStability };

std::string ConstraintName(ConstraintKind kind);

struct Violation {
  ConstraintKind kind;
  int64_t node_id = -1;  // -1 for plan-level constraints
  double value = 0.0;    // spent EUR, charger count or rho
};

struct FeasibilityReport {
  bool within_budget = true;
  bool charger_bounds_ok = true;
  bool stable = true;
  std::vector<Violation> violations;

  bool feasible() const {
    return within_budget && charger_bounds_ok && stable;
  }
};

// Evaluates the budget (spent <= B), charger bound (1 <= sum t <= K) and
// stability (rho < 1) constraints. Never fails; problems are listed.
FeasibilityReport CheckConstraints(const ChargingPlan& plan,
                                   const RoadNetwork& network,
                                   const UtilityParams& params,
                                   double budget_spent);

}  // namespace chargeplan

#endif  // CHARGEPLAN_UTILITY_H_
