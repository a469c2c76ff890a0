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
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace chargeplan {
namespace {

using ::chargeplan::testing::MeridianNodes;
using ::chargeplan::testing::MustNetwork;

// Independent brute force: cheapest vector with capacity >= required.
std::tuple<double, int, ChargerCounts> BruteCheapest(
    const ChargerCatalog& c, int k, double required) {
  std::tuple<double, int, ChargerCounts> best{1e300, 0, {}};
  double best_cap = 0.0;
  const int m = c.size();
  std::vector<int> t(m, 0);
  while (true) {
    int total = 0;
    double cap = 0.0, cost = 0.0;
    for (int i = 0; i < m; ++i) {
      total += t[i];
      cap += t[i] * c.power_kw[i];
      cost += t[i] * c.cost_eur[i];
    }
    if (total >= 1 && total <= k && cap >= required) {
      const std::tuple<double, int, ChargerCounts> cand{cost, total, t};
      if (cand < best || (std::get<0>(cand) == std::get<0>(best) &&
                          cap < best_cap)) {
        best = cand;
        best_cap = cap;
      }
    }
    int i = 0;
    while (i < m && ++t[i] > k) t[i++] = 0;
    if (i == m) break;
  }
  return best;
}

TEST(ConfigTableTest, FourteenKilowattEntry) {
  const ConfigTable table = ConfigTable::Build(ChargerCatalog::Default(), 8);
  const auto entries = table.entries();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [](const ChargerConfig& e) {
                                 return e.capacity_kw == 14.0;
                               });
  ASSERT_NE(it, entries.end());
  EXPECT_EQ(it->chargers, (ChargerCounts{2, 0, 0}));
  EXPECT_EQ(it->cost_eur, 600.0);
}

TEST(ConfigTableTest, CheapestAtFiftyKilowatts) {
  const ConfigTable table = ConfigTable::Build(ChargerCatalog::Default(), 8);
  const ConfigChoice c = *table.Cheapest(50.0);
  EXPECT_EQ(c.config.chargers, (ChargerCounts{1, 2, 0}));
  EXPECT_EQ(c.config.capacity_kw, 51.0);
  EXPECT_EQ(c.config.cost_eur, 1800.0);
  EXPECT_FALSE(c.saturated);
}

TEST(ConfigTableTest, TinySingleTypeTable) {
  const ConfigTable table = ConfigTable::Build(ChargerCatalog{{7}, {300}}, 2);
  ASSERT_EQ(table.entries().size(), 2u);
  EXPECT_EQ(table.entries()[0].capacity_kw, 7.0);
  EXPECT_EQ(table.entries()[0].chargers, ChargerCounts{1});
  EXPECT_EQ(table.entries()[0].cost_eur, 300.0);
  EXPECT_EQ(table.entries()[1].capacity_kw, 14.0);
  EXPECT_EQ(table.entries()[1].chargers, ChargerCounts{2});
  EXPECT_EQ(table.entries()[1].cost_eur, 600.0);
}

TEST(ConfigTableTest, SortedDedupedAndBounded) {
  const ConfigTable table = ConfigTable::Build(ChargerCatalog::Default(), 8);
  double prev = -1.0;
  for (const ChargerConfig& e : table.entries()) {
    EXPECT_GT(e.capacity_kw, prev);
    prev = e.capacity_kw;
    EXPECT_GE(TotalChargers(e.chargers), 1);
    EXPECT_LE(TotalChargers(e.chargers), 8);
  }
}

TEST(ConfigTableTest, CheapestQueries) {
  const ChargerCatalog c = ChargerCatalog::Default();
  const ConfigTable table = ConfigTable::Build(c, 8);
  const ConfigChoice zero = *table.Cheapest(0.0);
  EXPECT_EQ(zero.config.chargers, (ChargerCounts{1, 0, 0}));
  EXPECT_EQ(zero.config.cost_eur, 300.0);
  EXPECT_EQ(table.Cheapest(14.0)->config.chargers, (ChargerCounts{2, 0, 0}));
  const ConfigChoice huge = *table.Cheapest(10000.0);
  EXPECT_TRUE(huge.saturated);
  EXPECT_EQ(huge.config.capacity_kw, table.entries().back().capacity_kw);
  EXPECT_FALSE(ConfigTable().Cheapest(1.0).ok());
}

TEST(ConfigTableTest, MatchesBruteForceAndIsMonotone) {
  for (int k : {1, 2, 3, 5, 8}) {
    const ChargerCatalog c = ChargerCatalog::Default();
    const ConfigTable table = ConfigTable::Build(c, k);
    double prev_cost = 0.0;
    const double max_cap = table.entries().back().capacity_kw;
    for (double req = 0.0; req <= max_cap; req += 0.5) {
      const ConfigChoice got = *table.Cheapest(req);
      const auto want = BruteCheapest(c, k, req);
      EXPECT_EQ(got.config.cost_eur, std::get<0>(want)) << "k=" << k
                                                         << " req=" << req;
      EXPECT_LE(TotalChargers(got.config.chargers), k);
      EXPECT_GE(got.config.capacity_kw, req);
      EXPECT_GE(got.config.cost_eur, prev_cost);
      prev_cost = got.config.cost_eur;
    }
  }
}

TEST(ConfigTableTest, IndependentOfCatalogOrder) {
  const ChargerCatalog a{{7, 22, 50}, {300, 750, 28000}};
  const ChargerCatalog b{{50, 7, 22}, {28000, 300, 750}};
  const ConfigTable ta = ConfigTable::Build(a, 6);
  const ConfigTable tb = ConfigTable::Build(b, 6);
  ASSERT_EQ(ta.entries().size(), tb.entries().size());
  for (size_t i = 0; i < ta.entries().size(); ++i) {
    const ChargerConfig& x = ta.entries()[i];
    const ChargerConfig& y = tb.entries()[i];
    EXPECT_EQ(x.capacity_kw, y.capacity_kw);
    EXPECT_EQ(x.cost_eur, y.cost_eur);
    EXPECT_EQ(x.chargers[0], y.chargers[1]);
    EXPECT_EQ(x.chargers[1], y.chargers[2]);
    EXPECT_EQ(x.chargers[2], y.chargers[0]);
  }
}

TEST(RequiredCapacityTest, Examples) {
  UtilityParams p;
  // Station candidate at node 0; node 1 at 1 km with dem_weak 0.5 -> D = 0.5.
  const RoadNetwork net =
      MustNetwork(MeridianNodes({0.0, 1000.0}, {0.0, 0.5}));
  EXPECT_NEAR(RequiredCapacity(0, ChargingPlan(), net, p), 0.5 * 85.0 / 0.9,
              1e-9);
  EXPECT_NEAR(RequiredCapacity(0, ChargingPlan(), net, p), 47.22, 0.01);
  p.rho_target = 0.45;
  EXPECT_NEAR(RequiredCapacity(0, ChargingPlan(), net, p), 2 * 47.2222222,
              1e-6);

  const RoadNetwork empty = MustNetwork(MeridianNodes({0.0, 1000.0}, {}));
  EXPECT_EQ(RequiredCapacity(0, ChargingPlan(), empty, p), 0.0);
}

TEST(RequiredCapacityTest, OnlyCountsNodesItWouldServe) {
  UtilityParams p;
  const RoadNetwork net = MustNetwork(
      MeridianNodes({0.0, 1000.0, 3000.0}, {0.0, 0.5, 0.5}));
  ChargingPlan plan;
  plan.Place(2, {1, 0, 0});
  // Node 2 keeps its own station; only node 1 moves to the candidate.
  EXPECT_NEAR(RequiredCapacity(0, plan, net, p), 0.5 * 85.0 / 0.9, 1e-9);
}

}  // namespace
}  // namespace chargeplan
