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

#include "chargeplan/utility.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace chargeplan {
namespace {

constexpr double kMetersPerKm = 1000.0;

absl::Status CheckUnit(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must lie in [0, 1], got ", v));
  }
  return absl::OkStatus();
}

absl::Status CheckPositive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be positive, got ", v));
  }
  return absl::OkStatus();
}

absl::Status InstabilityError(const StationQueue& q,
                              const RoadNetwork& network) {
  return absl::FailedPreconditionError(
      absl::StrCat("station at node ", network.node(q.node).id,
                   " is unstable: rho = ", q.utilization));
}

}  // namespace

absl::Status UtilityParams::Validate() const {
  for (auto [v, name] : {std::pair{lambda, "lambda"}, std::pair{alpha, "alpha"},
                         std::pair{omega, "omega"}}) {
    if (absl::Status s = CheckUnit(v, name); !s.ok()) return s;
  }
  for (auto [v, name] :
       {std::pair{r_max_m, "r_max"}, std::pair{energy_kwh, "energy"},
        std::pair{velocity_kmh, "velocity"}, std::pair{budget_eur, "budget"},
        std::pair{capacity_scale_kw, "capacity_scale"},
        std::pair{dist_floor_km, "dist_floor"},
        std::pair{arrival_scale, "arrival_scale"}}) {
    if (absl::Status s = CheckPositive(v, name); !s.ok()) return s;
  }
  if (max_chargers < 1) {
    return absl::InvalidArgumentError("max_chargers must be at least 1");
  }
  if (!(rho_target > 0.0 && rho_target < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho_target must lie in (0, 1), got ", rho_target));
  }
  return catalog.Validate();
}

double Capacity(const ChargerCounts& chargers, const ChargerCatalog& catalog) {
  double c = 0.0;
  const size_t m = std::min(chargers.size(), catalog.power_kw.size());
  for (size_t i = 0; i < m; ++i) c += chargers[i] * catalog.power_kw[i];
  return c;
}

double InfluentialRadius(double capacity_kw, const UtilityParams& params) {
  const double scaled = capacity_kw / params.capacity_scale_kw;
  return params.r_max_m / (1.0 + std::exp(-scaled));
}

double HarmonicNumber(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

double WeakenedDemand(size_t node, const RoadNetwork& network,
                      const UtilityParams& params) {
  const Node& n = network.node(node);
  return n.demand * (1.0 - params.omega * n.home_share);
}

std::vector<int> CoverageCounts(const ChargingPlan& plan,
                                const RoadNetwork& network,
                                const UtilityParams& params) {
  std::vector<int> cov(network.num_nodes(), 0);
  for (const auto& [station, chargers] : plan) {
    const double r =
        InfluentialRadius(Capacity(chargers, params.catalog), params);
    for (size_t v = 0; v < network.num_nodes(); ++v) {
      if (network.Distance(v, station) <= r) ++cov[v];
    }
  }
  return cov;
}

int Coverage(size_t node, const ChargingPlan& plan, const RoadNetwork& network,
             const UtilityParams& params) {
  int cov = 0;
  for (const auto& [station, chargers] : plan) {
    const double r =
        InfluentialRadius(Capacity(chargers, params.catalog), params);
    if (network.Distance(node, station) <= r) ++cov;
  }
  return cov;
}

namespace {

double BenefitFromCoverage(const std::vector<int>& cov,
                           const RoadNetwork& network,
                           const UtilityParams& params) {
  double sum = 0.0;
  for (size_t v = 0; v < cov.size(); ++v) {
    if (cov[v] == 0) continue;
    sum += HarmonicNumber(cov[v]) *
           (1.0 - params.omega * network.node(v).home_share);
  }
  return sum / static_cast<double>(network.num_nodes());
}

}  // namespace

double Benefit(const ChargingPlan& plan, const RoadNetwork& network,
               const UtilityParams& params) {
  return BenefitFromCoverage(CoverageCounts(plan, network, params), network,
                             params);
}

absl::StatusOr<Assignment> AssignStations(const ChargingPlan& plan,
                                          const RoadNetwork& network) {
  if (plan.empty()) {
    return absl::FailedPreconditionError(
        "station assignment is undefined for an empty plan");
  }
  Assignment a;
  a.station_of.resize(network.num_nodes());
  for (size_t v = 0; v < network.num_nodes(); ++v) {
    double best = std::numeric_limits<double>::infinity();
    size_t best_station = 0;
    // Stations iterate in ascending node order, so a strict improvement is
    // needed to displace an earlier (smaller-index) station.
    for (const auto& [station, chargers] : plan) {
      const double d = network.Distance(v, station);
      if (d < best - kAssignmentTieMeters) {
        best = d;
        best_station = station;
      }
    }
    a.station_of[v] = best_station;
  }
  return a;
}

double ArrivalRate(size_t station, const Assignment& assignment,
                   const RoadNetwork& network, const UtilityParams& params) {
  double sum = 0.0;
  for (size_t v = 0; v < assignment.station_of.size(); ++v) {
    if (assignment.station_of[v] != station) continue;
    const double km =
        std::max(network.Distance(station, v) / kMetersPerKm,
                 params.dist_floor_km);
    sum += WeakenedDemand(v, network, params) / km;
  }
  return params.arrival_scale * sum;
}

double ExpectedWait(const StationQueue& queue) {
  const double rho = queue.utilization;
  if (!(rho < 1.0)) return std::numeric_limits<double>::infinity();
  return rho / (2.0 * queue.service_rate * (1.0 - rho));
}

absl::StatusOr<std::vector<StationQueue>> QueueParameters(
    const ChargingPlan& plan, const Assignment& assignment,
    const RoadNetwork& network, const UtilityParams& params) {
  std::vector<StationQueue> queues;
  queues.reserve(plan.size());
  for (const auto& [station, chargers] : plan) {
    StationQueue q;
    q.node = station;
    q.capacity_kw = Capacity(chargers, params.catalog);
    if (!(q.capacity_kw > 0.0)) {
      return absl::FailedPreconditionError(
          absl::StrCat("station at node ", network.node(station).id,
                       " has zero capacity; service rate undefined"));
    }
    q.arrival_rate = ArrivalRate(station, assignment, network, params);
    q.service_rate = q.capacity_kw / params.energy_kwh;
    q.utilization = q.arrival_rate / q.service_rate;
    queues.push_back(q);
  }
  return queues;
}

absl::StatusOr<StationQueue> StationQueueOf(size_t station,
                                            const ChargingPlan& plan,
                                            const RoadNetwork& network,
                                            const UtilityParams& params) {
  const ChargerCounts* chargers = plan.Find(station);
  if (chargers == nullptr) {
    return absl::NotFoundError(absl::StrCat(
        "no station at node ", network.node(station).id));
  }
  absl::StatusOr<Assignment> a = AssignStations(plan, network);
  if (!a.ok()) return a.status();
  StationQueue q;
  q.node = station;
  q.capacity_kw = Capacity(*chargers, params.catalog);
  if (!(q.capacity_kw > 0.0)) {
    return absl::FailedPreconditionError(
        absl::StrCat("station at node ", network.node(station).id,
                     " has zero capacity; service rate undefined"));
  }
  q.arrival_rate = ArrivalRate(station, *a, network, params);
  q.service_rate = q.capacity_kw / params.energy_kwh;
  q.utilization = q.arrival_rate / q.service_rate;
  return q;
}

absl::StatusOr<PlanEvaluation> EvaluatePlan(const ChargingPlan& plan,
                                            const RoadNetwork& network,
                                            const UtilityParams& params) {
  PlanEvaluation e;
  e.coverage = CoverageCounts(plan, network, params);
  e.benefit = BenefitFromCoverage(e.coverage, network, params);
  if (!plan.empty()) {
    absl::StatusOr<Assignment> a = AssignStations(plan, network);
    if (!a.ok()) return a.status();
    e.assignment = *std::move(a);
    absl::StatusOr<std::vector<StationQueue>> queues =
        QueueParameters(plan, e.assignment, network, params);
    if (!queues.ok()) return queues.status();
    e.queues = *std::move(queues);

    for (size_t v = 0; v < network.num_nodes(); ++v) {
      const double km =
          network.Distance(e.assignment.station_of[v], v) / kMetersPerKm;
      e.travel_h +=
          km / params.velocity_kmh * WeakenedDemand(v, network, params);
    }
    for (const StationQueue& q : e.queues) {
      if (!(q.utilization < 1.0)) return InstabilityError(q, network);
      e.charging_h += q.utilization;
      e.waiting_h += ExpectedWait(q) * q.arrival_rate;
    }
    e.cost = params.alpha * e.travel_h +
             (1.0 - params.alpha) * (e.charging_h + e.waiting_h);
  }
  e.score = params.lambda * e.benefit - (1.0 - params.lambda) * e.cost;
  return e;
}

absl::StatusOr<double> TravelTime(const ChargingPlan& plan,
                                  const RoadNetwork& network,
                                  const UtilityParams& params) {
  absl::StatusOr<Assignment> a = AssignStations(plan, network);
  if (!a.ok()) return a.status();
  double travel = 0.0;
  for (size_t v = 0; v < network.num_nodes(); ++v) {
    const double km = network.Distance(a->station_of[v], v) / kMetersPerKm;
    travel += km / params.velocity_kmh * WeakenedDemand(v, network, params);
  }
  return travel;
}

absl::StatusOr<double> ChargingTime(const ChargingPlan& plan,
                                    const RoadNetwork& network,
                                    const UtilityParams& params) {
  if (plan.empty()) return 0.0;
  absl::StatusOr<Assignment> a = AssignStations(plan, network);
  if (!a.ok()) return a.status();
  absl::StatusOr<std::vector<StationQueue>> queues =
      QueueParameters(plan, *a, network, params);
  if (!queues.ok()) return queues.status();
  double total = 0.0;
  for (const StationQueue& q : *queues) total += q.utilization;
  return total;
}

absl::StatusOr<double> WaitingTime(const ChargingPlan& plan,
                                   const RoadNetwork& network,
                                   const UtilityParams& params) {
  if (plan.empty()) return 0.0;
  absl::StatusOr<Assignment> a = AssignStations(plan, network);
  if (!a.ok()) return a.status();
  absl::StatusOr<std::vector<StationQueue>> queues =
      QueueParameters(plan, *a, network, params);
  if (!queues.ok()) return queues.status();
  double total = 0.0;
  for (const StationQueue& q : *queues) {
    if (!(q.utilization < 1.0)) return InstabilityError(q, network);
    total += ExpectedWait(q) * q.arrival_rate;
  }
  return total;
}

absl::StatusOr<double> Cost(const ChargingPlan& plan,
                            const RoadNetwork& network,
                            const UtilityParams& params) {
  absl::StatusOr<PlanEvaluation> e = EvaluatePlan(plan, network, params);
  if (!e.ok()) return e.status();
  return e->cost;
}

absl::StatusOr<double> Score(const ChargingPlan& plan,
                             const RoadNetwork& network,
                             const UtilityParams& params) {
  absl::StatusOr<PlanEvaluation> e = EvaluatePlan(plan, network, params);
  if (!e.ok()) return e.status();
  return e->score;
}

bool IsStable(const ChargingPlan& plan, const RoadNetwork& network,
              const UtilityParams& params) {
  if (plan.empty()) return true;
  absl::StatusOr<Assignment> a = AssignStations(plan, network);
  if (!a.ok()) return false;
  absl::StatusOr<std::vector<StationQueue>> queues =
      QueueParameters(plan, *a, network, params);
  if (!queues.ok()) return false;
  for (const StationQueue& q : *queues) {
    if (!(q.utilization < 1.0)) return false;
  }
  return true;
}

double StationFee(size_t node, const ChargerCounts& chargers,
                  const RoadNetwork& network, const ChargerCatalog& catalog) {
  double fee = network.node(node).estate_cost;
  const size_t m = std::min(chargers.size(), catalog.cost_eur.size());
  for (size_t i = 0; i < m; ++i) fee += chargers[i] * catalog.cost_eur[i];
  return fee;
}

double PlanFee(const ChargingPlan& plan, const RoadNetwork& network,
               const ChargerCatalog& catalog) {
  double fee = 0.0;
  for (const auto& [node, chargers] : plan) {
    fee += StationFee(node, chargers, network, catalog);
  }
  return fee;
}

std::string ConstraintName(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kBudget:
      return "budget";
    case ConstraintKind::kChargerBound:
      return "charger_bound";
    case ConstraintKind::kStability:
      return "stability";
  }
  return "unknown";
}

FeasibilityReport CheckConstraints(const ChargingPlan& plan,
                                   const RoadNetwork& network,
                                   const UtilityParams& params,
                                   double budget_spent) {
  FeasibilityReport report;
  if (budget_spent > params.budget_eur) {
    report.within_budget = false;
    report.violations.push_back({ConstraintKind::kBudget, -1, budget_spent});
  }
  for (const auto& [node, chargers] : plan) {
    const int total = TotalChargers(chargers);
    if (total < 1 || total > params.max_chargers) {
      report.charger_bounds_ok = false;
      report.violations.push_back(
          {ConstraintKind::kChargerBound, network.node(node).id,
           static_cast<double>(total)});
    }
  }
  if (!plan.empty()) {
    absl::StatusOr<Assignment> a = AssignStations(plan, network);
    for (const auto& [node, chargers] : plan) {
      const double mu = Capacity(chargers, params.catalog) / params.energy_kwh;
      const double d = ArrivalRate(node, *a, network, params);
      const double rho =
          mu > 0.0 ? d / mu : std::numeric_limits<double>::infinity();
      if (!(rho < 1.0)) {
        report.stable = false;
        report.violations.push_back(
            {ConstraintKind::kStability, network.node(node).id, rho});
      }
    }
  }
  return report;
}

}  // namespace chargeplan
