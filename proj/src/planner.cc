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

#include "chargeplan/planner.h"

#include <algorithm>
#include <map>
#include <tuple>

namespace chargeplan {
namespace {

// Strict preference between two vectors of the same capacity.
bool Preferred(const ChargerConfig& a, const ChargerConfig& b) {
  return std::forward_as_tuple(a.cost_eur, TotalChargers(a.chargers),
                               a.chargers) <
         std::forward_as_tuple(b.cost_eur, TotalChargers(b.chargers),
                               b.chargers);
}

void Enumerate(const ChargerCatalog& catalog, int max_chargers, int type,
               int remaining, ChargerCounts& counts,
               std::map<double, ChargerConfig>& best) {
  if (type == catalog.size()) {
    if (remaining == max_chargers) return;  // the all-zero vector
    ChargerConfig c{Capacity(counts, catalog), counts, 0.0};
    for (int i = 0; i < catalog.size(); ++i) {
      c.cost_eur += counts[i] * catalog.cost_eur[i];
    }
    auto [it, inserted] = best.emplace(c.capacity_kw, c);
    if (!inserted && Preferred(c, it->second)) it->second = c;
    return;
  }
  for (int t = 0; t <= remaining; ++t) {
    counts[type] = t;
    Enumerate(catalog, max_chargers, type + 1, remaining - t, counts, best);
  }
  counts[type] = 0;
}

}  // namespace

ConfigTable ConfigTable::Build(const ChargerCatalog& catalog,
                               int max_chargers) {
  ConfigTable table;
  if (max_chargers < 1 || catalog.size() == 0) return table;
  std::map<double, ChargerConfig> best;
  ChargerCounts counts(catalog.size(), 0);
  Enumerate(catalog, max_chargers, 0, max_chargers, counts, best);
  for (auto& [capacity, config] : best) table.entries_.push_back(config);

  const size_t n = table.entries_.size();
  table.suffix_best_.resize(n);
  for (size_t i = n; i-- > 0;) {
    if (i + 1 == n) {
      table.suffix_best_[i] = i;
      continue;
    }
    const size_t next = table.suffix_best_[i + 1];
    // <= keeps the smaller capacity on equal cost.
    table.suffix_best_[i] =
        table.entries_[i].cost_eur <= table.entries_[next].cost_eur ? i : next;
  }
  return table;
}

absl::StatusOr<ConfigChoice> ConfigTable::Cheapest(double required_kw) const {
  if (entries_.empty()) {
    return absl::FailedPreconditionError("charger configuration table is empty");
  }
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), required_kw,
      [](const ChargerConfig& c, double r) { return c.capacity_kw < r; });
  if (it == entries_.end()) return ConfigChoice{entries_.back(), true};
  const size_t i = static_cast<size_t>(it - entries_.begin());
  return ConfigChoice{entries_[suffix_best_[i]], false};
}

double RequiredCapacity(size_t candidate, const ChargingPlan& plan,
                        const RoadNetwork& network,
                        const UtilityParams& params) {
  ChargingPlan hypothetical = plan;
  if (!hypothetical.Contains(candidate)) {
    hypothetical.Place(candidate,
                       ChargerCounts(params.catalog.size(), 0));
  }
  absl::StatusOr<Assignment> a = AssignStations(hypothetical, network);
  const double arrivals = ArrivalRate(candidate, *a, network, params);
  if (!(arrivals > 0.0)) return 0.0;
  return arrivals * params.energy_kwh / params.rho_target;
}

}  // namespace chargeplan
