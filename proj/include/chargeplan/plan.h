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

// Core value types shared by every module: the charger catalog, stations and
// charging plans.

#ifndef CHARGEPLAN_PLAN_H_
#define CHARGEPLAN_PLAN_H_

#include <cstddef>
#include <map>
#include <vector>

#include "absl/status/status.h"

namespace chargeplan {

// Number of chargers per charger type. Index i counts chargers of type i.
using ChargerCounts = std::vector<int>;

int TotalChargers(const ChargerCounts& counts);

// Available charger types: power in kW and hardware cost in EUR per unit.
struct ChargerCatalog {
  std::vector<double> power_kw;
  std::vector<double> cost_eur;

  int size() const { return static_cast<int>(power_kw.size()); }

  // 7/22/50 kW at 300/750/28000 EUR.
  static ChargerCatalog Default();

  absl::Status Validate() const;

  // Type with the highest kW per EUR among types costing at most
  // `max_cost`; ties go to the lower type index. Returns -1 if nothing is
  // affordable.
  int BestValueType(double max_cost) const;

  // Cheapest type; ties go to the lower index.
  int CheapestType() const;

  // Lowest-power type present in `counts`, or -1 if `counts` is empty.
  int LowestPowerTypeIn(const ChargerCounts& counts) const;

  double MaxPower() const;
};

struct ChargingStation {
  // Index of the hosting node in its RoadNetwork.
  size_t node = 0;
  ChargerCounts chargers;
};

// A set of stations with at most one station per node, ordered by node index.
class ChargingPlan {
 public:
  using Map = std::map<size_t, ChargerCounts>;

  bool empty() const { return stations_.empty(); }
  size_t size() const { return stations_.size(); }
  bool Contains(size_t node) const { return stations_.count(node) > 0; }

  // nullptr if `node` holds no station.
  const ChargerCounts* Find(size_t node) const;

  // Inserts or replaces the station at `node`.
  void Place(size_t node, ChargerCounts chargers);
  void Remove(size_t node);
  // Adds one charger of `type` to the existing station at `node`.
  void AddCharger(size_t node, int type);

  int TotalChargers() const;
  std::vector<ChargingStation> Stations() const;

  Map::const_iterator begin() const { return stations_.begin(); }
  Map::const_iterator end() const { return stations_.end(); }

  bool operator==(const ChargingPlan& other) const = default;

 private:
  Map stations_;
};

}  // namespace chargeplan

#endif  // CHARGEPLAN_PLAN_H_
