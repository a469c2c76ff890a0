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

#include "chargeplan/plan.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"

namespace chargeplan {

int TotalChargers(const ChargerCounts& counts) {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

ChargerCatalog ChargerCatalog::Default() {
  return ChargerCatalog{{7.0, 22.0, 50.0}, {300.0, 750.0, 28000.0}};
}

absl::Status ChargerCatalog::Validate() const {
  if (power_kw.empty()) {
    return absl::InvalidArgumentError("charger catalog is empty");
  }
  if (power_kw.size() != cost_eur.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("charger catalog has ", power_kw.size(), " powers but ",
                     cost_eur.size(), " costs"));
  }
  for (int i = 0; i < size(); ++i) {
    if (!(power_kw[i] > 0.0) || !std::isfinite(power_kw[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("charger type ", i + 1, " has non-positive power"));
    }
    if (!(cost_eur[i] > 0.0) || !std::isfinite(cost_eur[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("charger type ", i + 1, " has non-positive cost"));
    }
  }
  return absl::OkStatus();
}

int ChargerCatalog::BestValueType(double max_cost) const {
  int best = -1;
  for (int i = 0; i < size(); ++i) {
    if (cost_eur[i] > max_cost) continue;
    if (best < 0 || power_kw[i] / cost_eur[i] >
                        power_kw[best] / cost_eur[best]) {
      best = i;
    }
  }
  return best;
}

int ChargerCatalog::CheapestType() const {
  return static_cast<int>(std::min_element(cost_eur.begin(), cost_eur.end()) -
                          cost_eur.begin());
}

int ChargerCatalog::LowestPowerTypeIn(const ChargerCounts& counts) const {
  int best = -1;
  for (int i = 0; i < size() && i < static_cast<int>(counts.size()); ++i) {
    if (counts[i] <= 0) continue;
    if (best < 0 || power_kw[i] < power_kw[best]) best = i;
  }
  return best;
}

double ChargerCatalog::MaxPower() const {
  return *std::max_element(power_kw.begin(), power_kw.end());
}

const ChargerCounts* ChargingPlan::Find(size_t node) const {
  auto it = stations_.find(node);
  return it == stations_.end() ? nullptr : &it->second;
}

void ChargingPlan::Place(size_t node, ChargerCounts chargers) {
  stations_[node] = std::move(chargers);
}

void ChargingPlan::Remove(size_t node) { stations_.erase(node); }

void ChargingPlan::AddCharger(size_t node, int type) {
  ChargerCounts& counts = stations_.at(node);
  if (static_cast<int>(counts.size()) <= type) counts.resize(type + 1, 0);
  ++counts[type];
}

int ChargingPlan::TotalChargers() const {
  int total = 0;
  for (const auto& [node, counts] : stations_) {
    total += chargeplan::TotalChargers(counts);
  }
  return total;
}

std::vector<ChargingStation> ChargingPlan::Stations() const {
  std::vector<ChargingStation> out;
  out.reserve(stations_.size());
  for (const auto& [node, counts] : stations_) out.push_back({node, counts});
  return out;
}

}  // namespace chargeplan
