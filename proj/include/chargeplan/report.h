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

// Plan metrics, comparison tables and GeoJSON export.

#ifndef CHARGEPLAN_REPORT_H_
#define CHARGEPLAN_REPORT_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "chargeplan/netdata.h"
#include "chargeplan/plan.h"
#include "chargeplan/utility.h"

namespace chargeplan {

struct PlanMetrics {
  double score = 0.0;
  double benefit = 0.0;
  double wait_h = 0.0;      // sum_s W(s) D(s)
  double travel_h = 0.0;
  double charging_h = 0.0;
  // Undefined (nullopt) for the empty plan.
  std::optional<double> travel_max_min;  // max_v dist(v, assigned) / velocity
  std::optional<double> wait_max_min;    // max_s W(s)
  double fee_spent = 0.0;  // instalment fee of every station in the plan
  int station_count = 0;
  int charger_count = 0;
  // Mean node-to-assigned-station distance in meters; nullopt when empty.
  std::optional<double> mean_station_distance_m;
};

// Fails with FailedPrecondition naming the station when some rho >= 1.
absl::StatusOr<PlanMetrics> EvaluateMetrics(const ChargingPlan& plan,
                                            const RoadNetwork& network,
                                            const UtilityParams& params);

// Comparison table relative to a reference row. score/benefit/wait/travel/
// charging are percentages of the reference; the two maxima are absolute
// minutes. nullopt marks "n/a" (zero reference or undefined maximum).
struct RelativeRow {
  std::string name;
  std::optional<double> score_pct;
  std::optional<double> benefit_pct;
  std::optional<double> wait_pct;
  std::optional<double> travel_pct;
  std::optional<double> charging_pct;
  std::optional<double> travel_max_min;
  std::optional<double> wait_max_min;
};

struct RelativeTable {
  std::vector<RelativeRow> rows;

  // algorithm,score_pct,benefit_pct,wait_pct,travel_pct,charging_pct,
  // travel_max_min,wait_max_min
  std::string ToCsv() const;
  // Column-aligned rendering for terminals.
  std::string ToText() const;
};

// Fails with NotFound if `reference` is not one of the names.
absl::StatusOr<RelativeTable> MakeRelativeTable(
    const std::vector<std::pair<std::string, PlanMetrics>>& models,
    const std::string& reference);

// GeoJSON FeatureCollection with one Point per station and properties
// node_id, chargers, capacity_kw and fee_eur.
std::string PlanToGeoJson(const ChargingPlan& plan, const RoadNetwork& network,
                          const ChargerCatalog& catalog);
absl::Status ExportPlan(const ChargingPlan& plan, const RoadNetwork& network,
                        const ChargerCatalog& catalog, const std::string& path);

}  // namespace chargeplan

#endif  // CHARGEPLAN_REPORT_H_
