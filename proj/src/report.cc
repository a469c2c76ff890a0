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

#include "chargeplan/report.h"

#include <algorithm>
#include <array>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "text_util.h"

namespace chargeplan {
namespace {

constexpr double kMinutesPerHour = 60.0;

std::optional<double> Percent(double value, double reference) {
  if (reference == 0.0) return std::nullopt;
  return 100.0 * value / reference;
}

std::string Cell(const std::optional<double>& v) {
  return v ? absl::StrFormat("%.2f", *v) : std::string("n/a");
}

std::array<std::string, 8> Cells(const RelativeRow& r) {
  return {r.name,           Cell(r.score_pct),      Cell(r.benefit_pct),
          Cell(r.wait_pct), Cell(r.travel_pct),     Cell(r.charging_pct),
          Cell(r.travel_max_min), Cell(r.wait_max_min)};
}

constexpr std::array<const char*, 8> kColumns = {
    "algorithm",   "score_pct",      "benefit_pct",  "wait_pct",
    "travel_pct",  "charging_pct",   "travel_max_min", "wait_max_min"};

}  // namespace

absl::StatusOr<PlanMetrics> EvaluateMetrics(const ChargingPlan& plan,
                                            const RoadNetwork& network,
                                            const UtilityParams& params) {
  absl::StatusOr<PlanEvaluation> e = EvaluatePlan(plan, network, params);
  if (!e.ok()) return e.status();
  PlanMetrics m;
  m.score = e->score;
  m.benefit = e->benefit;
  m.wait_h = e->waiting_h;
  m.travel_h = e->travel_h;
  m.charging_h = e->charging_h;
  m.fee_spent = PlanFee(plan, network, params.catalog);
  m.station_count = static_cast<int>(plan.size());
  m.charger_count = plan.TotalChargers();
  if (!plan.empty()) {
    double max_km = 0.0;
    double sum_m = 0.0;
    for (size_t v = 0; v < network.num_nodes(); ++v) {
      const double d = network.Distance(v, e->assignment.station_of[v]);
      max_km = std::max(max_km, d / 1000.0);
      sum_m += d;
    }
    m.travel_max_min = max_km / params.velocity_kmh * kMinutesPerHour;
    m.mean_station_distance_m = sum_m / static_cast<double>(network.num_nodes());
    double max_wait = 0.0;
    for (const StationQueue& q : e->queues) {
      max_wait = std::max(max_wait, ExpectedWait(q));
    }
    m.wait_max_min = max_wait * kMinutesPerHour;
  }
  return m;
}

absl::StatusOr<RelativeTable> MakeRelativeTable(
    const std::vector<std::pair<std::string, PlanMetrics>>& models,
    const std::string& reference) {
  auto ref_it = std::find_if(models.begin(), models.end(),
                             [&](const auto& m) { return m.first == reference; });
  if (ref_it == models.end()) {
    return absl::NotFoundError(
        absl::StrCat("reference model '", reference, "' not in comparison"));
  }
  const PlanMetrics& ref = ref_it->second;
  RelativeTable table;
  for (const auto& [name, m] : models) {
    RelativeRow row;
    row.name = name;
    row.score_pct = Percent(m.score, ref.score);
    row.benefit_pct = Percent(m.benefit, ref.benefit);
    row.wait_pct = Percent(m.wait_h, ref.wait_h);
    row.travel_pct = Percent(m.travel_h, ref.travel_h);
    row.charging_pct = Percent(m.charging_h, ref.charging_h);
    row.travel_max_min = m.travel_max_min;
    row.wait_max_min = m.wait_max_min;
    table.rows.push_back(row);
  }
  return table;
}

std::string RelativeTable::ToCsv() const {
  std::string out;
  for (size_t i = 0; i < kColumns.size(); ++i) {
    absl::StrAppend(&out, i ? "," : "", kColumns[i]);
  }
  out += "\n";
  for (const RelativeRow& r : rows) {
    const auto cells = Cells(r);
    for (size_t i = 0; i < cells.size(); ++i) {
      absl::StrAppend(&out, i ? "," : "", cells[i]);
    }
    out += "\n";
  }
  return out;
}

std::string RelativeTable::ToText() const {
  std::array<size_t, 8> width{};
  for (size_t i = 0; i < kColumns.size(); ++i) {
    width[i] = std::string(kColumns[i]).size();
  }
  std::vector<std::array<std::string, 8>> all;
  for (const RelativeRow& r : rows) {
    all.push_back(Cells(r));
    for (size_t i = 0; i < 8; ++i) width[i] = std::max(width[i], all.back()[i].size());
  }
  std::string out;
  auto append_line = [&](const auto& cells) {
    for (size_t i = 0; i < 8; ++i) {
      const std::string cell = cells[i];
      if (i == 0) {
        absl::StrAppend(&out, cell, std::string(width[i] - cell.size(), ' '));
      } else {
        absl::StrAppend(&out, "  ", std::string(width[i] - cell.size(), ' '),
                        cell);
      }
    }
    out += "\n";
  };
  std::array<std::string, 8> header;
  for (size_t i = 0; i < 8; ++i) header[i] = kColumns[i];
  append_line(header);
  for (const auto& cells : all) append_line(cells);
  return out;
}

std::string PlanToGeoJson(const ChargingPlan& plan, const RoadNetwork& network,
                          const ChargerCatalog& catalog) {
  nlohmann::ordered_json features = nlohmann::ordered_json::array();
  for (const auto& [node, chargers] : plan) {
    const Node& n = network.node(node);
    nlohmann::ordered_json feature;
    feature["type"] = "Feature";
    feature["geometry"] = {{"type", "Point"},
                           {"coordinates", {n.lon, n.lat}}};
    feature["properties"] = {
        {"node_id", n.id},
        {"chargers", chargers},
        {"capacity_kw", Capacity(chargers, catalog)},
        {"fee_eur", StationFee(node, chargers, network, catalog)}};
    features.push_back(std::move(feature));
  }
  nlohmann::ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = std::move(features);
  return doc.dump(2) + "\n";
}

absl::Status ExportPlan(const ChargingPlan& plan, const RoadNetwork& network,
                        const ChargerCatalog& catalog,
                        const std::string& path) {
  return internal::WriteTextFile(path, PlanToGeoJson(plan, network, catalog));
}

}  // namespace chargeplan
