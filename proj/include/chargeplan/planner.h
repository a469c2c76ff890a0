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

// Charger configuration lookup and station sizing.

#ifndef CHARGEPLAN_PLANNER_H_
#define CHARGEPLAN_PLANNER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "chargeplan/netdata.h"
#include "chargeplan/plan.h"
#include "chargeplan/utility.h"

namespace chargeplan {

struct ChargerConfig {
  double capacity_kw = 0.0;
  ChargerCounts chargers;
  double cost_eur = 0.0;
};

struct ConfigChoice {
  ChargerConfig config;
  // The requested capacity exceeds every configuration; `config` is the
  // largest one.
  bool saturated = false;
};

// The cheapest charger vector for every achievable station capacity.
//
// Built by enumerating all vectors with 1 <= sum t <= K. For a given
// capacity the cheapest vector is kept; equal costs prefer fewer chargers,
// then the lexicographically smaller vector. Entries ascend by capacity.
class ConfigTable {
 public:
  ConfigTable() = default;

  static ConfigTable Build(const ChargerCatalog& catalog, int max_chargers);

  std::span<const ChargerConfig> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Minimum-cost entry with capacity >= `required_kw`; among equal costs the
  // smaller capacity wins. Fails on an empty table.
  absl::StatusOr<ConfigChoice> Cheapest(double required_kw) const;

 private:
  std::vector<ChargerConfig> entries_;
  // suffix_best_[i] is the index of the cheapest entry in entries_[i..].
  std::vector<size_t> suffix_best_;
};

// Capacity a station at `candidate` needs so that rho equals
// params.rho_target: an empty station is inserted at the candidate, nodes
// are reassigned, and C = D * E / rho_target. Zero when no demand reaches it.
double RequiredCapacity(size_t candidate, const ChargingPlan& plan,
                        const RoadNetwork& network,
                        const UtilityParams& params);

}  // namespace chargeplan

#endif  // CHARGEPLAN_PLANNER_H_
