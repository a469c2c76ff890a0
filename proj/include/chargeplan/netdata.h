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

// Road-network data model and ingestion.
//
// A RoadNetwork is a directed graph of junctions. Edges are kept for
// completeness but carry no length: every distance used by the utility model
// is the great-circle distance between node coordinates.
//
// Nodes are stored sorted by id, so a node index order equals id order and
// index-based tie-breaks are id-based tie-breaks.

#ifndef CHARGEPLAN_NETDATA_H_
#define CHARGEPLAN_NETDATA_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "chargeplan/plan.h"

namespace chargeplan {

inline constexpr double kEarthRadiusMeters = 6371000.0;

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

// Great-circle distance in meters.
double Haversine(LatLon a, LatLon b);

struct Node {
  int64_t id = 0;
  double lat = 0.0;
  double lon = 0.0;
  double demand = 0.0;       // [0, 1]
  double home_share = 0.0;   // [0, 1], share of detached houses around v
  double estate_cost = 0.0;  // EUR, >= 0

  LatLon position() const { return {lat, lon}; }
};

struct Edge {
  size_t src = 0;
  size_t dst = 0;
};

class RoadNetwork {
 public:
  // Validates and builds a network. Edges are given as (src id, dst id).
  static absl::StatusOr<RoadNetwork> Create(
      std::vector<Node> nodes,
      const std::vector<std::pair<int64_t, int64_t>>& edges);

  size_t num_nodes() const { return nodes_.size(); }
  const Node& node(size_t index) const { return nodes_[index]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }

  std::optional<size_t> IndexOf(int64_t id) const;

  // Haversine distance in meters between two nodes.
  double Distance(size_t a, size_t b) const {
    if (!distance_cache_.empty()) return distance_cache_[a * nodes_.size() + b];
    return Haversine(nodes_[a].position(), nodes_[b].position());
  }

  // Copy with replaced per-node demand. `demand` is indexed like nodes().
  RoadNetwork WithDemand(std::span<const double> demand) const;
  // Copy with every home share set to `value`.
  RoadNetwork WithHomeShare(double value) const;

 private:
  RoadNetwork() = default;
  void BuildIndex();

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<int64_t, size_t> index_of_;
  std::vector<double> distance_cache_;
};

// Networks up to this size keep a dense distance matrix.
inline constexpr size_t kDistanceCacheMaxNodes = 2048;

// Reads `id,lat,lon,demand,home_share,estate_cost` and `src,dst` CSV files.
// With `normalize_demand` the demand column is divided by its maximum.
// Errors name the offending file and line.
absl::StatusOr<RoadNetwork> LoadNetwork(const std::string& nodes_path,
                                        const std::string& edges_path,
                                        bool normalize_demand = false);

absl::Status WriteNetwork(const RoadNetwork& network,
                          const std::string& nodes_path,
                          const std::string& edges_path);

struct BoundingBox {
  double lat_min = 0.0;
  double lon_min = 0.0;
  double lat_max = 0.0;
  double lon_max = 0.0;

  bool Contains(LatLon p) const {
    return p.lat >= lat_min && p.lat <= lat_max && p.lon >= lon_min &&
           p.lon <= lon_max;
  }
  static BoundingBox Of(const RoadNetwork& network);
};

// Trip end points restricted to a bounding box.
struct TripEndpointSet {
  std::vector<LatLon> points;
  BoundingBox box;
};

// Keeps only the points inside `box`.
TripEndpointSet MakeTripEndpointSet(std::span<const LatLon> points,
                                    const BoundingBox& box);

// Reads a `lat,lon` CSV.
absl::StatusOr<std::vector<LatLon>> LoadTrips(const std::string& path);

// Grid cell of `p` inside `box` as (row, col); row follows latitude and col
// longitude. Points on a shared boundary go to the smaller row, then the
// smaller column.
std::pair<int, int> GridCell(LatLon p, const BoundingBox& box, int grid);

// Counts trips per grid cell, divides by the largest count and gives each
// node the value of its cell as demand. An empty trip set yields zero demand
// and a warning.
RoadNetwork DemandFromTrips(const TripEndpointSet& trips,
                            const RoadNetwork& network, int grid = 32,
                            std::vector<std::string>* warnings = nullptr);

// Reads `node_id,t1,...,tm`. Rows for the same node are summed; stations
// above `max_chargers` are clamped by dropping their lowest-power chargers
// first, and all-zero rows are skipped. Both cases add a warning.
absl::StatusOr<ChargingPlan> LoadExistingStations(
    const std::string& path, const RoadNetwork& network,
    const ChargerCatalog& catalog, int max_chargers,
    std::vector<std::string>* warnings = nullptr);

// Writes a plan in the same `node_id,t1,...,tm` format.
absl::Status WritePlan(const ChargingPlan& plan, const RoadNetwork& network,
                       int num_types, const std::string& path);

enum class DemandProfile { kUniform, kHotspot, kGradient };

absl::StatusOr<DemandProfile> ParseDemandProfile(const std::string& name);

// Lattice spacing of synthetic networks.
inline constexpr double kSyntheticSpacingMeters = 200.0;

// Length scale, in lattice steps, of the hotspot decay exp(-d / scale).
double HotspotScale(int rows, int cols);

// rows x cols lattice with bidirectional 4-neighbour edges. Node id is
// row * cols + col. Features are drawn from `seed`.
RoadNetwork GenerateSynthetic(int rows, int cols, uint64_t seed,
                              DemandProfile profile);

}  // namespace chargeplan

#endif  // CHARGEPLAN_NETDATA_H_
