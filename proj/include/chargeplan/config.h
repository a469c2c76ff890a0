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

// Experiment parameter files.
//
// The format is a small TOML subset: `key = value` lines, `#` comments,
// numeric scalars, numeric arrays such as `[7, 22, 50]`, and two sections.
// Keys before any section header, or under `[utility]`, set UtilityParams;
// keys under `[train]` set TrainConfig. Unknown keys are rejected.
//
//   lambda = 0.5
//   charger_power = [7, 22, 50]
//   [train]
//   episodes_max = 500
//   hidden_layers = [64, 64]

#ifndef CHARGEPLAN_CONFIG_H_
#define CHARGEPLAN_CONFIG_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "chargeplan/agent.h"
#include "chargeplan/utility.h"

namespace chargeplan {

struct ExperimentConfig {
  UtilityParams utility;
  TrainConfig train;
};

// Parses `text` on top of the defaults. `source` prefixes error messages.
absl::StatusOr<ExperimentConfig> ParseConfig(absl::string_view text,
                                             absl::string_view source);

absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path);

// Renders every field; ParseConfig(ConfigToString(c)) reproduces c.
std::string ConfigToString(const ExperimentConfig& config);

}  // namespace chargeplan

#endif  // CHARGEPLAN_CONFIG_H_
