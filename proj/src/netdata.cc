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

#include "chargeplan/netdata.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "absl/strings/str_cat.h"
#include "chargeplan/rng.h"
#include "text_util.h"

namespace chargeplan {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

absl::Status ValidateNode(const Node& n) {
  auto bad = [&](absl::string_view what) {
    return absl::InvalidArgumentError(
        absl::StrCat("node ", n.id, ": ", what, " out of range"));
  };
  if (!std::isfinite(n.lat) || n.lat < -90.0 || n.lat > 90.0) return bad("lat");
  if (!std::isfinite(n.lon) || n.lon < -180.0 || n.lon > 180.0) {
    return bad("lon");
  }
  if (!std::isfinite(n.demand) || n.demand < 0.0 || n.demand > 1.0) {
    return bad("demand");
  }
  if (!std::isfinite(n.home_share) || n.home_share < 0.0 ||
      n.home_share > 1.0) {
    return bad("home_share");
  }
  if (!std::isfinite(n.estate_cost) || n.estate_cost < 0.0) {
    return bad("estate_cost");
  }
  return absl::OkStatus();
}

int CellIndex(double value, double lo, double hi, int grid) {
  if (!(hi > lo)) return 0;
  const double f = (value - lo) / (hi - lo) * grid;
  const int k = static_cast<int>(std::ceil(f)) - 1;
  return std::clamp(k, 0, grid - 1);
}

}  // namespace

double Haversine(LatLon a, LatLon b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = std::fabs(b.lat - a.lat) * kDegToRad;
  const double dlambda = std::fabs(b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusMeters * std::asin(std::min(1.0, std::sqrt(h)));
}

absl::StatusOr<RoadNetwork> RoadNetwork::Create(
    std::vector<Node> nodes,
    const std::vector<std::pair<int64_t, int64_t>>& edges) {
  if (nodes.empty()) {
    return absl::InvalidArgumentError("road network needs at least one node");
  }
  for (const Node& n : nodes) {
    if (absl::Status s = ValidateNode(n); !s.ok()) return s;
  }
  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const Node& a, const Node& b) { return a.id < b.id; });
  for (size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i - 1].id) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate node id ", nodes[i].id));
    }
  }
  RoadNetwork net;
  net.nodes_ = std::move(nodes);
  net.BuildIndex();
  net.edges_.reserve(edges.size());
  for (const auto& [src, dst] : edges) {
    auto s = net.IndexOf(src);
    auto d = net.IndexOf(dst);
    if (!s || !d) {
      return absl::InvalidArgumentError(absl::StrCat(
          "edge ", src, "->", dst, " references unknown node id ",
          s ? dst : src));
    }
    net.edges_.push_back({*s, *d});
  }
  return net;
}

void RoadNetwork::BuildIndex() {
  index_of_.clear();
  for (size_t i = 0; i < nodes_.size(); ++i) index_of_[nodes_[i].id] = i;
  distance_cache_.clear();
  const size_t n = nodes_.size();
  if (n <= kDistanceCacheMaxNodes) {
    distance_cache_.assign(n * n, 0.0);
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = a + 1; b < n; ++b) {
        const double d = Haversine(nodes_[a].position(), nodes_[b].position());
        distance_cache_[a * n + b] = d;
        distance_cache_[b * n + a] = d;
      }
    }
  }
}

std::optional<size_t> RoadNetwork::IndexOf(int64_t id) const {
  auto it = index_of_.find(id);
  if (it == index_of_.end()) return std::nullopt;
  return it->second;
}

RoadNetwork RoadNetwork::WithDemand(std::span<const double> demand) const {
  RoadNetwork copy = *this;
  for (size_t i = 0; i < copy.nodes_.size(); ++i) {
    copy.nodes_[i].demand = demand[i];
  }
  return copy;
}

RoadNetwork RoadNetwork::WithHomeShare(double value) const {
  RoadNetwork copy = *this;
  for (Node& n : copy.nodes_) n.home_share = value;
  return copy;
}

absl::StatusOr<RoadNetwork> LoadNetwork(const std::string& nodes_path,
                                        const std::string& edges_path,
                                        bool normalize_demand) {
  absl::StatusOr<internal::CsvTable> node_table = internal::ReadCsv(nodes_path);
  if (!node_table.ok()) return node_table.status();
  int cols[6];
  const char* names[6] = {"id",     "lat",        "lon",
                          "demand", "home_share", "estate_cost"};
  for (int i = 0; i < 6; ++i) {
    absl::StatusOr<int> c = node_table->Column(names[i]);
    if (!c.ok()) return c.status();
    cols[i] = *c;
  }
  std::vector<Node> nodes;
  std::set<int64_t> seen;
  for (const internal::CsvRow& row : node_table->rows) {
    Node n;
    absl::StatusOr<int64_t> id = internal::ParseInt(*node_table, row, cols[0]);
    if (!id.ok()) return id.status();
    n.id = *id;
    double* fields[5] = {&n.lat, &n.lon, &n.demand, &n.home_share,
                         &n.estate_cost};
    for (int i = 0; i < 5; ++i) {
      absl::StatusOr<double> v =
          internal::ParseDouble(*node_table, row, cols[i + 1]);
      if (!v.ok()) return v.status();
      *fields[i] = *v;
    }
    if (!seen.insert(n.id).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          nodes_path, ":", row.line, ": duplicate node id ", n.id));
    }
    Node check = n;
    if (normalize_demand) check.demand = n.demand >= 0.0 ? 0.0 : n.demand;
    if (absl::Status s = ValidateNode(check); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(nodes_path, ":", row.line, ": ", s.message()));
    }
    nodes.push_back(n);
  }
  if (normalize_demand) {
    double max_demand = 0.0;
    for (const Node& n : nodes) max_demand = std::max(max_demand, n.demand);
    if (max_demand > 0.0) {
      for (Node& n : nodes) n.demand /= max_demand;
    }
  }

  absl::StatusOr<internal::CsvTable> edge_table = internal::ReadCsv(edges_path);
  if (!edge_table.ok()) return edge_table.status();
  absl::StatusOr<int> src_col = edge_table->Column("src");
  if (!src_col.ok()) return src_col.status();
  absl::StatusOr<int> dst_col = edge_table->Column("dst");
  if (!dst_col.ok()) return dst_col.status();
  std::vector<std::pair<int64_t, int64_t>> edges;
  for (const internal::CsvRow& row : edge_table->rows) {
    absl::StatusOr<int64_t> src = internal::ParseInt(*edge_table, row, *src_col);
    if (!src.ok()) return src.status();
    absl::StatusOr<int64_t> dst = internal::ParseInt(*edge_table, row, *dst_col);
    if (!dst.ok()) return dst.status();
    for (int64_t id : {*src, *dst}) {
      if (!seen.count(id)) {
        return absl::InvalidArgumentError(
            absl::StrCat(edges_path, ":", row.line,
                         ": edge references unknown node id ", id));
      }
    }
    edges.emplace_back(*src, *dst);
  }
  return RoadNetwork::Create(std::move(nodes), edges);
}

absl::Status WriteNetwork(const RoadNetwork& network,
                          const std::string& nodes_path,
                          const std::string& edges_path) {
  using internal::FormatDouble;
  std::string out = "id,lat,lon,demand,home_share,estate_cost\n";
  for (const Node& n : network.nodes()) {
    absl::StrAppend(&out, n.id, ",", FormatDouble(n.lat), ",",
                    FormatDouble(n.lon), ",", FormatDouble(n.demand), ",",
                    FormatDouble(n.home_share), ",",
                    FormatDouble(n.estate_cost), "\n");
  }
  if (absl::Status s = internal::WriteTextFile(nodes_path, out); !s.ok()) {
    return s;
  }
  out = "src,dst\n";
  for (const Edge& e : network.edges()) {
    absl::StrAppend(&out, network.node(e.src).id, ",", network.node(e.dst).id,
                    "\n");
  }
  return internal::WriteTextFile(edges_path, out);
}

BoundingBox BoundingBox::Of(const RoadNetwork& network) {
  BoundingBox box{90.0, 180.0, -90.0, -180.0};
  for (const Node& n : network.nodes()) {
    box.lat_min = std::min(box.lat_min, n.lat);
    box.lat_max = std::max(box.lat_max, n.lat);
    box.lon_min = std::min(box.lon_min, n.lon);
    box.lon_max = std::max(box.lon_max, n.lon);
  }
  return box;
}

TripEndpointSet MakeTripEndpointSet(std::span<const LatLon> points,
                                    const BoundingBox& box) {
  TripEndpointSet set;
  set.box = box;
  for (const LatLon& p : points) {
    if (box.Contains(p)) set.points.push_back(p);
  }
  return set;
}

absl::StatusOr<std::vector<LatLon>> LoadTrips(const std::string& path) {
  absl::StatusOr<internal::CsvTable> table = internal::ReadCsv(path);
  if (!table.ok()) return table.status();
  absl::StatusOr<int> lat_col = table->Column("lat");
  if (!lat_col.ok()) return lat_col.status();
  absl::StatusOr<int> lon_col = table->Column("lon");
  if (!lon_col.ok()) return lon_col.status();
  std::vector<LatLon> points;
  points.reserve(table->rows.size());
  for (const internal::CsvRow& row : table->rows) {
    absl::StatusOr<double> lat = internal::ParseDouble(*table, row, *lat_col);
    if (!lat.ok()) return lat.status();
    absl::StatusOr<double> lon = internal::ParseDouble(*table, row, *lon_col);
    if (!lon.ok()) return lon.status();
    points.push_back({*lat, *lon});
  }
  return points;
}

std::pair<int, int> GridCell(LatLon p, const BoundingBox& box, int grid) {
  return {CellIndex(p.lat, box.lat_min, box.lat_max, grid),
          CellIndex(p.lon, box.lon_min, box.lon_max, grid)};
}

RoadNetwork DemandFromTrips(const TripEndpointSet& trips,
                            const RoadNetwork& network, int grid,
                            std::vector<std::string>* warnings) {
  grid = std::max(grid, 1);
  std::vector<double> demand(network.num_nodes(), 0.0);
  if (trips.points.empty()) {
    if (warnings) warnings->push_back("trip set is empty; all demands are 0");
    return network.WithDemand(demand);
  }
  std::vector<int64_t> counts(static_cast<size_t>(grid) * grid, 0);
  for (const LatLon& p : trips.points) {
    auto [row, col] = GridCell(p, trips.box, grid);
    ++counts[static_cast<size_t>(row) * grid + col];
  }
  const double max_count =
      static_cast<double>(*std::max_element(counts.begin(), counts.end()));
  for (size_t i = 0; i < network.num_nodes(); ++i) {
    auto [row, col] = GridCell(network.node(i).position(), trips.box, grid);
    demand[i] = counts[static_cast<size_t>(row) * grid + col] / max_count;
  }
  return network.WithDemand(demand);
}

absl::StatusOr<ChargingPlan> LoadExistingStations(
    const std::string& path, const RoadNetwork& network,
    const ChargerCatalog& catalog, int max_chargers,
    std::vector<std::string>* warnings) {
  absl::StatusOr<internal::CsvTable> table = internal::ReadCsv(path);
  if (!table.ok()) return table.status();
  absl::StatusOr<int> node_col = table->Column("node_id");
  if (!node_col.ok()) return node_col.status();
  const int m = catalog.size();
  std::vector<int> type_cols;
  for (int i = 1; i <= m; ++i) {
    absl::StatusOr<int> c = table->Column(absl::StrCat("t", i));
    if (!c.ok()) return c.status();
    type_cols.push_back(*c);
  }
  if (static_cast<int>(table->header.size()) != m + 1) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": expected ", m, " charger columns for a catalog of ",
                     m, " types, header has ", table->header.size() - 1));
  }
  std::map<size_t, ChargerCounts> merged;
  for (const internal::CsvRow& row : table->rows) {
    absl::StatusOr<int64_t> id = internal::ParseInt(*table, row, *node_col);
    if (!id.ok()) return id.status();
    std::optional<size_t> node = network.IndexOf(*id);
    if (!node) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ":", row.line, ": station references unknown node id ", *id));
    }
    ChargerCounts& counts = merged[*node];
    counts.resize(m, 0);
    for (int i = 0; i < m; ++i) {
      absl::StatusOr<int64_t> t = internal::ParseInt(*table, row, type_cols[i]);
      if (!t.ok()) return t.status();
      if (*t < 0) {
        return absl::InvalidArgumentError(absl::StrCat(
            path, ":", row.line, ": negative charger count for type ", i + 1));
      }
      counts[i] += static_cast<int>(*t);
    }
  }
  ChargingPlan plan;
  for (auto& [node, counts] : merged) {
    const int64_t id = network.node(node).id;
    int total = TotalChargers(counts);
    if (total == 0) {
      if (warnings) {
        warnings->push_back(
            absl::StrCat("station at node ", id, " has no chargers; skipped"));
      }
      continue;
    }
    if (total > max_chargers) {
      if (warnings) {
        warnings->push_back(absl::StrCat("station at node ", id, " has ", total,
                                         " chargers; clamped to ",
                                         max_chargers));
      }
      while (total > max_chargers) {
        --counts[catalog.LowestPowerTypeIn(counts)];
        --total;
      }
    }
    plan.Place(node, counts);
  }
  return plan;
}

absl::Status WritePlan(const ChargingPlan& plan, const RoadNetwork& network,
                       int num_types, const std::string& path) {
  std::string out = "node_id";
  for (int i = 1; i <= num_types; ++i) absl::StrAppend(&out, ",t", i);
  out += "\n";
  for (const auto& [node, counts] : plan) {
    absl::StrAppend(&out, network.node(node).id);
    for (int i = 0; i < num_types; ++i) {
      absl::StrAppend(&out, ",", i < static_cast<int>(counts.size()) ? counts[i] : 0);
    }
    out += "\n";
  }
  return internal::WriteTextFile(path, out);
}

absl::StatusOr<DemandProfile> ParseDemandProfile(const std::string& name) {
  if (name == "uniform") return DemandProfile::kUniform;
  if (name == "hotspot") return DemandProfile::kHotspot;
  if (name == "gradient") return DemandProfile::kGradient;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown demand profile '", name,
                   "' (expected uniform, hotspot or gradient)"));
}

double HotspotScale(int rows, int cols) {
  return std::max(1.0, std::max(rows, cols) / 4.0);
}

RoadNetwork GenerateSynthetic(int rows, int cols, uint64_t seed,
                              DemandProfile profile) {
  rows = std::max(rows, 1);
  cols = std::max(cols, 1);
  constexpr double kBaseLat = 52.3759;
  constexpr double kBaseLon = 9.7320;
  const double lat_step =
      kSyntheticSpacingMeters / (kEarthRadiusMeters * kDegToRad);
  const double lon_step = lat_step / std::cos(kBaseLat * kDegToRad);

  Rng rng(seed);
  const int hotspot = rng.UniformInt(rows * cols);
  const int hot_row = hotspot / cols;
  const int hot_col = hotspot % cols;
  const double scale = HotspotScale(rows, cols);
  const int span = (rows - 1) + (cols - 1);

  std::vector<Node> nodes;
  nodes.reserve(static_cast<size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Node n;
      n.id = static_cast<int64_t>(r) * cols + c;
      n.lat = kBaseLat + r * lat_step;
      n.lon = kBaseLon + c * lon_step;
      // Draw order is fixed so that all profiles share home/estate values.
      const double u = rng.Uniform();
      n.home_share = rng.Uniform();
      n.estate_cost = std::round(rng.Uniform(1000.0, 5000.0));
      switch (profile) {
        case DemandProfile::kUniform:
          n.demand = u;
          break;
        case DemandProfile::kHotspot:
          n.demand = std::exp(-std::hypot(r - hot_row, c - hot_col) / scale);
          break;
        case DemandProfile::kGradient:
          n.demand = span == 0 ? 1.0 : static_cast<double>(r + c) / span;
          break;
      }
      nodes.push_back(n);
    }
  }
  std::vector<std::pair<int64_t, int64_t>> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int64_t id = static_cast<int64_t>(r) * cols + c;
      if (c + 1 < cols) {
        edges.emplace_back(id, id + 1);
        edges.emplace_back(id + 1, id);
      }
      if (r + 1 < rows) {
        edges.emplace_back(id, id + cols);
        edges.emplace_back(id + cols, id);
      }
    }
  }
  absl::StatusOr<RoadNetwork> net = RoadNetwork::Create(std::move(nodes), edges);
  return *std::move(net);
}

}  // namespace chargeplan
