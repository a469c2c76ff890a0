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
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracle.h"
#include "test_util.h"

namespace chargeplan {
namespace {

using ::chargeplan::testing::MakeNode;
using ::chargeplan::testing::MustNetwork;
using ::chargeplan::testing::ReadFile;
using ::chargeplan::testing::TempDir;
using ::chargeplan::testing::WriteFile;

constexpr char kNodeHeader[] = "id,lat,lon,demand,home_share,estate_cost\n";

TEST(HaversineTest, IdenticalPointsAreZero) {
  EXPECT_EQ(Haversine({52.1, 9.3}, {52.1, 9.3}), 0.0);
}

TEST(HaversineTest, OneDegreeOfLatitude) {
  EXPECT_NEAR(Haversine({0, 0}, {1, 0}), 111195.0, 10.0);
  EXPECT_NEAR(Haversine({0, 0}, {1, 0}),
              kEarthRadiusMeters * std::numbers::pi / 180.0, 1e-6);
}

TEST(HaversineTest, HannoverToDresden) {
  const double d = Haversine({52.3759, 9.7320}, {51.0504, 13.7373});
  EXPECT_NEAR(d, 312000.0, 1000.0);
  Node a = MakeNode(0, 52.3759, 9.7320);
  Node b = MakeNode(1, 51.0504, 13.7373);
  EXPECT_NEAR(d, oracle::GreatCircleMeters(a, b), 1e-6);
}

TEST(HaversineTest, SymmetricAndTriangleOnRandomTriples) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> lat(-80, 80), lon(-179, 179);
  for (int i = 0; i < 2000; ++i) {
    const LatLon a{lat(gen), lon(gen)}, b{lat(gen), lon(gen)},
        c{lat(gen), lon(gen)};
    EXPECT_EQ(Haversine(a, b), Haversine(b, a));
    EXPECT_GE(Haversine(a, b), 0.0);
    EXPECT_LE(Haversine(a, c), Haversine(a, b) + Haversine(b, c) + 1e-6);
  }
}

TEST(RoadNetworkTest, SortsNodesById) {
  const RoadNetwork net = MustNetwork(
      {MakeNode(5, 52, 9), MakeNode(2, 52.001, 9), MakeNode(9, 52.002, 9)},
      {{5, 9}});
  EXPECT_EQ(net.node(0).id, 2);
  EXPECT_EQ(net.node(2).id, 9);
  EXPECT_EQ(*net.IndexOf(5), 1u);
  EXPECT_FALSE(net.IndexOf(4).has_value());
  ASSERT_EQ(net.edges().size(), 1u);
  EXPECT_EQ(net.edges()[0].src, 1u);
  EXPECT_EQ(net.edges()[0].dst, 2u);
}

TEST(RoadNetworkTest, RejectsBadInput) {
  EXPECT_FALSE(RoadNetwork::Create({}, {}).ok());
  EXPECT_FALSE(
      RoadNetwork::Create({MakeNode(1, 52, 9), MakeNode(1, 52, 9.1)}, {}).ok());
  EXPECT_FALSE(RoadNetwork::Create({MakeNode(1, 52, 9, 1.5)}, {}).ok());
  EXPECT_FALSE(RoadNetwork::Create({MakeNode(1, 52, 9, 0.5, -0.1)}, {}).ok());
  EXPECT_FALSE(
      RoadNetwork::Create({MakeNode(1, 52, 9, 0.5, 0.1, -1.0)}, {}).ok());
  EXPECT_FALSE(RoadNetwork::Create({MakeNode(1, 95, 9)}, {}).ok());
  const absl::StatusOr<RoadNetwork> dangling =
      RoadNetwork::Create({MakeNode(1, 52, 9)}, {{1, 99}});
  ASSERT_FALSE(dangling.ok());
  EXPECT_NE(dangling.status().message().find("99"), std::string::npos);
}

TEST(LoadNetworkTest, ParsesThreeNodesTwoEdges) {
  TempDir dir;
  WriteFile(dir.File("n.csv"), std::string(kNodeHeader) +
                                   "1,52.0,9.0,0.5,0.1,1000\n"
                                   "2,52.001,9.0,0.25,0.2,2000\n"
                                   "3,52.002,9.0,1,0,3000\n");
  WriteFile(dir.File("e.csv"), "src,dst\n1,2\n2,3\n");
  absl::StatusOr<RoadNetwork> net =
      LoadNetwork(dir.File("n.csv"), dir.File("e.csv"));
  ASSERT_TRUE(net.ok()) << net.status();
  EXPECT_EQ(net->num_nodes(), 3u);
  EXPECT_EQ(net->edges().size(), 2u);
  EXPECT_DOUBLE_EQ(net->node(1).home_share, 0.2);
  EXPECT_DOUBLE_EQ(net->node(2).estate_cost, 3000.0);
}

TEST(LoadNetworkTest, EdgeToUnknownIdNamesIt) {
  TempDir dir;
  WriteFile(dir.File("n.csv"),
            std::string(kNodeHeader) + "1,52.0,9.0,0.5,0.1,1000\n");
  WriteFile(dir.File("e.csv"), "src,dst\n1,99\n");
  absl::StatusOr<RoadNetwork> net =
      LoadNetwork(dir.File("n.csv"), dir.File("e.csv"));
  ASSERT_FALSE(net.ok());
  EXPECT_NE(net.status().message().find("99"), std::string::npos);
}

TEST(LoadNetworkTest, ErrorsNameTheRow) {
  TempDir dir;
  WriteFile(dir.File("n.csv"), std::string(kNodeHeader) +
                                   "1,52.0,9.0,0.5,0.1,1000\n"
                                   "1,52.1,9.0,0.5,0.1,1000\n");
  WriteFile(dir.File("e.csv"), "src,dst\n");
  absl::StatusOr<RoadNetwork> dup =
      LoadNetwork(dir.File("n.csv"), dir.File("e.csv"));
  ASSERT_FALSE(dup.ok());
  EXPECT_NE(dup.status().message().find("1"), std::string::npos);

  WriteFile(dir.File("bad.csv"), std::string(kNodeHeader) +
                                     "1,52.0,9.0,0.5,0.1,1000\n"
                                     "2,52.1,abc,0.5,0.1,1000\n");
  absl::StatusOr<RoadNetwork> bad =
      LoadNetwork(dir.File("bad.csv"), dir.File("e.csv"));
  ASSERT_FALSE(bad.ok());
  EXPECT_NE(bad.status().message().find(":3"), std::string::npos)
      << bad.status();

  WriteFile(dir.File("nocol.csv"), "id,lat,lon,demand,estate_cost\n");
  EXPECT_FALSE(LoadNetwork(dir.File("nocol.csv"), dir.File("e.csv")).ok());
}

TEST(LoadNetworkTest, NormalizeDividesByMax) {
  TempDir dir;
  WriteFile(dir.File("n.csv"), std::string(kNodeHeader) +
                                   "1,52.0,9.0,10,0,0\n"
                                   "2,52.1,9.0,40,0,0\n"
                                   "3,52.2,9.0,20,0,0\n");
  WriteFile(dir.File("e.csv"), "src,dst\n");
  absl::StatusOr<RoadNetwork> net =
      LoadNetwork(dir.File("n.csv"), dir.File("e.csv"), /*normalize=*/true);
  ASSERT_TRUE(net.ok()) << net.status();
  EXPECT_DOUBLE_EQ(net->node(0).demand, 0.25);
  EXPECT_DOUBLE_EQ(net->node(1).demand, 1.0);
  EXPECT_DOUBLE_EQ(net->node(2).demand, 0.5);
  // Unnormalized demand above 1 is out of range.
  EXPECT_FALSE(LoadNetwork(dir.File("n.csv"), dir.File("e.csv")).ok());
}

TEST(LoadNetworkTest, WriteThenLoadRoundTrips) {
  TempDir dir;
  const RoadNetwork net = GenerateSynthetic(3, 4, 5, DemandProfile::kUniform);
  ASSERT_TRUE(WriteNetwork(net, dir.File("n.csv"), dir.File("e.csv")).ok());
  absl::StatusOr<RoadNetwork> back =
      LoadNetwork(dir.File("n.csv"), dir.File("e.csv"));
  ASSERT_TRUE(back.ok()) << back.status();
  ASSERT_EQ(back->num_nodes(), net.num_nodes());
  for (size_t v = 0; v < net.num_nodes(); ++v) {
    EXPECT_EQ(back->node(v).lat, net.node(v).lat);
    EXPECT_EQ(back->node(v).lon, net.node(v).lon);
    EXPECT_EQ(back->node(v).demand, net.node(v).demand);
    EXPECT_EQ(back->node(v).home_share, net.node(v).home_share);
  }
  EXPECT_EQ(back->edges().size(), net.edges().size());
}

// Four nodes at the corners of a 2 x 2 grid over [0, 2] x [0, 2].
RoadNetwork CornerNetwork() {
  return MustNetwork({MakeNode(0, 0.5, 0.5), MakeNode(1, 0.5, 1.5),
                      MakeNode(2, 1.5, 0.5), MakeNode(3, 1.5, 1.5)});
}

TripEndpointSet Trips(std::vector<LatLon> points) {
  BoundingBox box{0.0, 0.0, 2.0, 2.0};
  return MakeTripEndpointSet(points, box);
}

TEST(DemandFromTripsTest, SingleCellGetsOne) {
  const RoadNetwork net =
      DemandFromTrips(Trips({{0.2, 0.2}, {0.3, 0.4}}), CornerNetwork(), 2);
  EXPECT_EQ(net.node(0).demand, 1.0);
  EXPECT_EQ(net.node(1).demand, 0.0);
  EXPECT_EQ(net.node(2).demand, 0.0);
  EXPECT_EQ(net.node(3).demand, 0.0);
}

TEST(DemandFromTripsTest, DividesByMaxCount) {
  std::vector<LatLon> points;
  for (int i = 0; i < 10; ++i) points.push_back({0.25, 0.25});
  for (int i = 0; i < 5; ++i) points.push_back({1.75, 1.75});
  const RoadNetwork net = DemandFromTrips(Trips(points), CornerNetwork(), 2);
  EXPECT_EQ(net.node(0).demand, 1.0);
  EXPECT_EQ(net.node(3).demand, 0.5);
}

TEST(DemandFromTripsTest, SingleGridCellCoversAll) {
  const RoadNetwork net =
      DemandFromTrips(Trips({{0.1, 1.9}}), CornerNetwork(), 1);
  for (const Node& n : net.nodes()) EXPECT_EQ(n.demand, 1.0);
}

TEST(DemandFromTripsTest, EmptyTripsWarnAndZero) {
  std::vector<std::string> warnings;
  const RoadNetwork net =
      DemandFromTrips(Trips({}), CornerNetwork(), 2, &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  for (const Node& n : net.nodes()) EXPECT_EQ(n.demand, 0.0);
}

TEST(DemandFromTripsTest, PointsOutsideTheBoxAreDropped) {
  const TripEndpointSet trips = Trips({{0.5, 0.5}, {3.0, 0.5}, {-1, -1}});
  EXPECT_EQ(trips.points.size(), 1u);
}

TEST(DemandFromTripsTest, InvariantToTripOrder) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<LatLon> points;
  for (int i = 0; i < 300; ++i) points.push_back({u(gen), u(gen)});
  const RoadNetwork a = DemandFromTrips(Trips(points), CornerNetwork(), 4);
  std::shuffle(points.begin(), points.end(), gen);
  const RoadNetwork b = DemandFromTrips(Trips(points), CornerNetwork(), 4);
  for (size_t v = 0; v < a.num_nodes(); ++v) {
    EXPECT_EQ(a.node(v).demand, b.node(v).demand);
  }
}

TEST(GridCellTest, BoundaryGoesToSmallerIndex) {
  const BoundingBox box{0.0, 0.0, 2.0, 2.0};
  EXPECT_EQ(GridCell({1.0, 1.0}, box, 2), std::make_pair(0, 0));
  EXPECT_EQ(GridCell({1.5, 1.0}, box, 2), std::make_pair(1, 0));
  EXPECT_EQ(GridCell({0.0, 0.0}, box, 2), std::make_pair(0, 0));
  EXPECT_EQ(GridCell({2.0, 2.0}, box, 2), std::make_pair(1, 1));
}

class ExistingStationsTest : public ::testing::Test {
 protected:
  ExistingStationsTest()
      : net_(MustNetwork({MakeNode(3, 52.0, 9.0), MakeNode(7, 52.001, 9.0)})) {}

  absl::StatusOr<ChargingPlan> Load(const std::string& body,
                                    std::vector<std::string>* warnings) {
    WriteFile(dir_.File("s.csv"), "node_id,t1,t2,t3\n" + body);
    return LoadExistingStations(dir_.File("s.csv"), net_,
                                ChargerCatalog::Default(), 8, warnings);
  }

  TempDir dir_;
  RoadNetwork net_;
};

TEST_F(ExistingStationsTest, EmptyFileGivesEmptyPlan) {
  absl::StatusOr<ChargingPlan> plan = Load("", nullptr);
  ASSERT_TRUE(plan.ok()) << plan.status();
  EXPECT_TRUE(plan->empty());
}

TEST_F(ExistingStationsTest, DuplicateRowsMerge) {
  absl::StatusOr<ChargingPlan> plan = Load("7,1,0,0\n7,0,1,0\n", nullptr);
  ASSERT_TRUE(plan.ok()) << plan.status();
  ASSERT_EQ(plan->size(), 1u);
  EXPECT_EQ(*plan->Find(1), (ChargerCounts{1, 1, 0}));
}

TEST_F(ExistingStationsTest, OversizedStationIsClampedWithWarning) {
  std::vector<std::string> warnings;
  absl::StatusOr<ChargingPlan> plan = Load("3,4,4,4\n", &warnings);
  ASSERT_TRUE(plan.ok()) << plan.status();
  const ChargerCounts& t = *plan->Find(0);
  EXPECT_EQ(TotalChargers(t), 8);
  // The 7 kW chargers go first.
  EXPECT_EQ(t, (ChargerCounts{0, 4, 4}));
  EXPECT_EQ(warnings.size(), 1u);
}

TEST_F(ExistingStationsTest, UnknownNodeIsRejected) {
  absl::StatusOr<ChargingPlan> plan = Load("42,1,0,0\n", nullptr);
  ASSERT_FALSE(plan.ok());
  EXPECT_NE(plan.status().message().find("42"), std::string::npos);
}

TEST_F(ExistingStationsTest, WrongColumnCountIsRejected) {
  WriteFile(dir_.File("s2.csv"), "node_id,t1,t2\n3,1,0\n");
  EXPECT_FALSE(LoadExistingStations(dir_.File("s2.csv"), net_,
                                    ChargerCatalog::Default(), 8)
                   .ok());
}

TEST_F(ExistingStationsTest, WritePlanRoundTrips) {
  ChargingPlan plan;
  plan.Place(0, {1, 2, 0});
  plan.Place(1, {0, 0, 1});
  ASSERT_TRUE(WritePlan(plan, net_, 3, dir_.File("out.csv")).ok());
  EXPECT_EQ(ReadFile(dir_.File("out.csv")), "node_id,t1,t2,t3\n3,1,2,0\n7,0,0,1\n");
  absl::StatusOr<ChargingPlan> back = LoadExistingStations(
      dir_.File("out.csv"), net_, ChargerCatalog::Default(), 8);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, plan);
}

TEST(GenerateSyntheticTest, LatticeShape) {
  const RoadNetwork net = GenerateSynthetic(5, 5, 1, DemandProfile::kUniform);
  EXPECT_EQ(net.num_nodes(), 25u);
  EXPECT_EQ(net.edges().size(), 80u);
  EXPECT_NEAR(net.Distance(0, 1), kSyntheticSpacingMeters, 1e-6);
  EXPECT_NEAR(net.Distance(0, 5), kSyntheticSpacingMeters, 1e-6);
}

TEST(GenerateSyntheticTest, SameSeedIsByteIdentical) {
  TempDir dir;
  for (const char* tag : {"a", "b"}) {
    const RoadNetwork net = GenerateSynthetic(6, 4, 9, DemandProfile::kHotspot);
    ASSERT_TRUE(WriteNetwork(net, dir.File(std::string(tag) + "n.csv"),
                             dir.File(std::string(tag) + "e.csv"))
                    .ok());
  }
  EXPECT_EQ(ReadFile(dir.File("an.csv")), ReadFile(dir.File("bn.csv")));
  EXPECT_EQ(ReadFile(dir.File("ae.csv")), ReadFile(dir.File("be.csv")));
  const RoadNetwork other = GenerateSynthetic(6, 4, 10, DemandProfile::kHotspot);
  const RoadNetwork same = GenerateSynthetic(6, 4, 9, DemandProfile::kHotspot);
  bool differs = false;
  for (size_t v = 0; v < other.num_nodes(); ++v) {
    differs |= other.node(v).home_share != same.node(v).home_share;
  }
  EXPECT_TRUE(differs);
}

TEST(GenerateSyntheticTest, HotspotHasOnePeakAndDecays) {
  for (uint64_t seed : {1u, 2u, 3u}) {
    const int rows = 10, cols = 10;
    const RoadNetwork net =
        GenerateSynthetic(rows, cols, seed, DemandProfile::kHotspot);
    size_t peak = 0;
    int ones = 0;
    for (size_t v = 0; v < net.num_nodes(); ++v) {
      if (net.node(v).demand == 1.0) {
        ++ones;
        peak = v;
      }
    }
    ASSERT_EQ(ones, 1);
    const int pr = static_cast<int>(peak) / cols;
    const int pc = static_cast<int>(peak) % cols;
    const double scale = HotspotScale(rows, cols);
    for (size_t v = 0; v < net.num_nodes(); ++v) {
      const int r = static_cast<int>(v) / cols;
      const int c = static_cast<int>(v) % cols;
      const double expected = std::exp(-std::hypot(r - pr, c - pc) / scale);
      EXPECT_NEAR(net.node(v).demand, expected, 1e-12);
    }
  }
}

TEST(GenerateSyntheticTest, FeaturesWithinRange) {
  for (DemandProfile p : {DemandProfile::kUniform, DemandProfile::kHotspot,
                          DemandProfile::kGradient}) {
    const RoadNetwork net = GenerateSynthetic(7, 3, 4, p);
    for (const Node& n : net.nodes()) {
      EXPECT_TRUE(n.demand >= 0.0 && n.demand <= 1.0);
      EXPECT_TRUE(n.home_share >= 0.0 && n.home_share <= 1.0);
      EXPECT_TRUE(n.estate_cost >= 1000.0 && n.estate_cost <= 5000.0);
    }
  }
}

TEST(GenerateSyntheticTest, ProfileNames) {
  EXPECT_EQ(*ParseDemandProfile("gradient"), DemandProfile::kGradient);
  EXPECT_FALSE(ParseDemandProfile("spiky").ok());
}

}  // namespace
}  // namespace chargeplan
