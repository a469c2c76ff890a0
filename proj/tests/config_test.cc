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

#include "chargeplan/config.h"

#include <string>

#include "gtest/gtest.h"
#include "test_util.h"

namespace chargeplan {
namespace {

using ::chargeplan::testing::TempDir;
using ::chargeplan::testing::WriteFile;

TEST(ParseConfigTest, EmptyTextGivesDefaults) {
  absl::StatusOr<ExperimentConfig> c = ParseConfig("", "empty");
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->utility.lambda, UtilityParams().lambda);
  EXPECT_EQ(c->train.batch_size, TrainConfig().batch_size);
}

TEST(ParseConfigTest, TopLevelAndSections) {
  const std::string text = R"(# experiment
lambda = 0.7   # trailing comment
budget = 75000
[utility]
alpha = 0.25
charger_power = [7, 22, 50]
charger_cost = [300, 750, 28000]
[train]
episodes_max = 300
hidden_layers = [32, 16]
learning_rate = 5e-4
seed = 42
)";
  absl::StatusOr<ExperimentConfig> c = ParseConfig(text, "t.toml");
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->utility.lambda, 0.7);
  EXPECT_EQ(c->utility.budget_eur, 75000.0);
  EXPECT_EQ(c->utility.alpha, 0.25);
  EXPECT_EQ(c->utility.catalog.power_kw, (std::vector<double>{7, 22, 50}));
  EXPECT_EQ(c->train.episodes_max, 300);
  EXPECT_EQ(c->train.hidden_layers, (std::vector<int>{32, 16}));
  EXPECT_EQ(c->train.learning_rate, 5e-4);
  EXPECT_EQ(c->train.seed, 42u);
}

TEST(ParseConfigTest, ErrorsNameSourceAndLine) {
  absl::StatusOr<ExperimentConfig> c = ParseConfig("lambda = 0.5\nfoo = 1\n", "x.toml");
  ASSERT_FALSE(c.ok());
  const std::string message(c.status().message());
  EXPECT_NE(message.find("x.toml:2"), std::string::npos) << message;
  EXPECT_NE(message.find("foo"), std::string::npos) << message;

  // Keys are section scoped.
  EXPECT_FALSE(ParseConfig("[train]\nlambda = 0.5\n", "s").ok());
  EXPECT_FALSE(ParseConfig("[model]\n", "s").ok());
  EXPECT_FALSE(ParseConfig("lambda 0.5\n", "s").ok());
  EXPECT_FALSE(ParseConfig("lambda = abc\n", "s").ok());
  EXPECT_FALSE(ParseConfig("lambda = [1, 2]\n", "s").ok());
  EXPECT_FALSE(ParseConfig("charger_power = 7\n", "s").ok());
  EXPECT_FALSE(ParseConfig("charger_power = [7, 22\n", "s").ok());
  EXPECT_FALSE(ParseConfig("max_chargers = 2.5\n", "s").ok());
  EXPECT_FALSE(ParseConfig("[train]\nseed = -1\n", "s").ok());
  EXPECT_FALSE(ParseConfig("[train]\nhidden_layers = [0]\n", "s").ok());
}

TEST(ParseConfigTest, ValidatesTheResult) {
  EXPECT_FALSE(ParseConfig("lambda = 1.5\n", "s").ok());
  EXPECT_FALSE(ParseConfig("charger_power = [7, 22]\n", "s").ok());
  EXPECT_FALSE(ParseConfig("[train]\ngamma = 2\n", "s").ok());
}

TEST(ConfigToStringTest, RoundTrip) {
  ExperimentConfig c;
  c.utility.lambda = 0.3;
  c.utility.arrival_scale = 0.0003;
  c.utility.rho_target = 0.2;
  c.utility.catalog = ChargerCatalog{{11.0, 150.0}, {500.0, 60000.0}};
  c.train.hidden_layers = {128, 64, 32};
  c.train.learning_rate = 1.0 / 3.0;
  c.train.seed = 123456789012345ull;
  const std::string text = ConfigToString(c);
  absl::StatusOr<ExperimentConfig> back = ParseConfig(text, "round");
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(ConfigToString(*back), text);
  EXPECT_EQ(back->train.learning_rate, 1.0 / 3.0);
  EXPECT_EQ(back->utility.catalog.cost_eur, c.utility.catalog.cost_eur);
  EXPECT_EQ(back->train.seed, c.train.seed);
}

TEST(LoadConfigTest, ReadsFileAndReportsMissing) {
  TempDir dir;
  WriteFile(dir.File("c.toml"), "[train]\nepisodes_max = 7\n");
  absl::StatusOr<ExperimentConfig> c = LoadConfig(dir.File("c.toml"));
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c->train.episodes_max, 7);
  EXPECT_EQ(LoadConfig(dir.File("none.toml")).status().code(),
            absl::StatusCode::kNotFound);
}

}  // namespace
}  // namespace chargeplan
