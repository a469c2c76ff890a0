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

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <type_traits>
#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "text_util.h"

namespace chargeplan {
namespace {

struct Value {
  std::vector<double> numbers;
  bool is_array = false;
};

using Setter = std::function<absl::Status(const Value&, ExperimentConfig&)>;

absl::StatusOr<double> Scalar(const Value& v) {
  if (v.is_array || v.numbers.size() != 1) {
    return absl::InvalidArgumentError("expected a number");
  }
  return v.numbers[0];
}

Setter Real(double UtilityParams::*field) {
  return [field](const Value& v, ExperimentConfig& c) -> absl::Status {
    absl::StatusOr<double> x = Scalar(v);
    if (!x.ok()) return x.status();
    c.utility.*field = *x;
    return absl::OkStatus();
  };
}

Setter Real(double TrainConfig::*field) {
  return [field](const Value& v, ExperimentConfig& c) -> absl::Status {
    absl::StatusOr<double> x = Scalar(v);
    if (!x.ok()) return x.status();
    c.train.*field = *x;
    return absl::OkStatus();
  };
}

absl::StatusOr<int64_t> Integer(const Value& v) {
  absl::StatusOr<double> x = Scalar(v);
  if (!x.ok()) return x.status();
  if (std::floor(*x) != *x || std::fabs(*x) > 9.0e15) {
    return absl::InvalidArgumentError("expected an integer");
  }
  return static_cast<int64_t>(*x);
}

template <typename Struct, typename Int>
Setter Whole(Int Struct::*field, Struct ExperimentConfig::*part) {
  return [field, part](const Value& v, ExperimentConfig& c) -> absl::Status {
    absl::StatusOr<int64_t> x = Integer(v);
    if (!x.ok()) return x.status();
    if (std::is_unsigned_v<Int> && *x < 0) {
      return absl::InvalidArgumentError("expected a non-negative integer");
    }
    (c.*part).*field = static_cast<Int>(*x);
    return absl::OkStatus();
  };
}

Setter RealList(std::vector<double> ChargerCatalog::*field) {
  return [field](const Value& v, ExperimentConfig& c) -> absl::Status {
    if (!v.is_array) return absl::InvalidArgumentError("expected an array");
    c.utility.catalog.*field = v.numbers;
    return absl::OkStatus();
  };
}

const std::map<std::string, Setter>& UtilityKeys() {
  static const auto* keys = new std::map<std::string, Setter>{
      {"lambda", Real(&UtilityParams::lambda)},
      {"alpha", Real(&UtilityParams::alpha)},
      {"omega", Real(&UtilityParams::omega)},
      {"r_max", Real(&UtilityParams::r_max_m)},
      {"energy", Real(&UtilityParams::energy_kwh)},
      {"velocity", Real(&UtilityParams::velocity_kmh)},
      {"max_chargers",
       Whole(&UtilityParams::max_chargers, &ExperimentConfig::utility)},
      {"budget", Real(&UtilityParams::budget_eur)},
      {"capacity_scale", Real(&UtilityParams::capacity_scale_kw)},
      {"dist_floor", Real(&UtilityParams::dist_floor_km)},
      {"arrival_scale", Real(&UtilityParams::arrival_scale)},
      {"rho_target", Real(&UtilityParams::rho_target)},
      {"charger_power", RealList(&ChargerCatalog::power_kw)},
      {"charger_cost", RealList(&ChargerCatalog::cost_eur)},
  };
  return *keys;
}

const std::map<std::string, Setter>& TrainKeys() {
  static const auto* keys = new std::map<std::string, Setter>{
      {"batch_size", Whole(&TrainConfig::batch_size, &ExperimentConfig::train)},
      {"buffer_size",
       Whole(&TrainConfig::buffer_size, &ExperimentConfig::train)},
      {"learning_rate", Real(&TrainConfig::learning_rate)},
      {"momentum", Real(&TrainConfig::momentum)},
      {"episodes_max",
       Whole(&TrainConfig::episodes_max, &ExperimentConfig::train)},
      {"gamma", Real(&TrainConfig::gamma)},
      {"epsilon_start", Real(&TrainConfig::epsilon_start)},
      {"epsilon_end", Real(&TrainConfig::epsilon_end)},
      {"exploration_fraction", Real(&TrainConfig::exploration_fraction)},
      {"target_sync_steps",
       Whole(&TrainConfig::target_sync_steps, &ExperimentConfig::train)},
      {"train_freq", Whole(&TrainConfig::train_freq, &ExperimentConfig::train)},
      {"huber_delta", Real(&TrainConfig::huber_delta)},
      {"hidden_layers",
       [](const Value& v, ExperimentConfig& c) -> absl::Status {
         if (!v.is_array) return absl::InvalidArgumentError("expected an array");
         std::vector<int> widths;
         for (double w : v.numbers) {
           if (std::floor(w) != w || w < 1 || w > 1e6) {
             return absl::InvalidArgumentError("widths must be positive integers");
           }
           widths.push_back(static_cast<int>(w));
         }
         c.train.hidden_layers = std::move(widths);
         return absl::OkStatus();
       }},
      {"eval_every", Whole(&TrainConfig::eval_every, &ExperimentConfig::train)},
      {"seed", Whole(&TrainConfig::seed, &ExperimentConfig::train)},
  };
  return *keys;
}

absl::StatusOr<double> Number(absl::string_view text) {
  double x = 0.0;
  if (!absl::SimpleAtod(text, &x) || !std::isfinite(x)) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", text, "' is not a finite number"));
  }
  return x;
}

absl::StatusOr<Value> ParseValue(absl::string_view text) {
  Value value;
  if (text.empty()) return absl::InvalidArgumentError("missing value");
  if (text.front() == '[') {
    if (text.back() != ']') {
      return absl::InvalidArgumentError("unterminated array");
    }
    value.is_array = true;
    absl::string_view inner =
        absl::StripAsciiWhitespace(text.substr(1, text.size() - 2));
    if (inner.empty()) return value;
    for (absl::string_view item : absl::StrSplit(inner, ',')) {
      absl::StatusOr<double> x = Number(absl::StripAsciiWhitespace(item));
      if (!x.ok()) return x.status();
      value.numbers.push_back(*x);
    }
    return value;
  }
  absl::StatusOr<double> x = Number(text);
  if (!x.ok()) return x.status();
  value.numbers.push_back(*x);
  return value;
}

std::string JoinNumbers(const std::vector<double>& xs) {
  std::vector<std::string> parts;
  for (double x : xs) parts.push_back(internal::FormatDouble(x));
  return absl::StrCat("[", absl::StrJoin(parts, ", "), "]");
}

}  // namespace

absl::StatusOr<ExperimentConfig> ParseConfig(absl::string_view text,
                                             absl::string_view source) {
  ExperimentConfig config;
  const std::map<std::string, Setter>* keys = &UtilityKeys();
  int line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    auto fail = [&](absl::string_view what) {
      return absl::InvalidArgumentError(
          absl::StrCat(source, ":", line_no, ": ", what));
    };
    absl::string_view line = raw;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.find('=') == absl::string_view::npos) {
      if (line == "[utility]") {
        keys = &UtilityKeys();
      } else if (line == "[train]") {
        keys = &TrainKeys();
      } else {
        return fail(absl::StrCat("unknown section ", line));
      }
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) return fail("expected key = value");
    const std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    const auto it = keys->find(key);
    if (it == keys->end()) return fail(absl::StrCat("unknown key '", key, "'"));
    absl::StatusOr<Value> value =
        ParseValue(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (!value.ok()) return fail(value.status().message());
    if (absl::Status s = it->second(*value, config); !s.ok()) {
      return fail(absl::StrCat(key, ": ", s.message()));
    }
  }
  if (absl::Status s = config.utility.Validate(); !s.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(source, ": ", s.message()));
  }
  if (absl::Status s = config.train.Validate(); !s.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(source, ": ", s.message()));
  }
  return config;
}

absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str(), path);
}

std::string ConfigToString(const ExperimentConfig& config) {
  using internal::FormatDouble;
  const UtilityParams& u = config.utility;
  const TrainConfig& t = config.train;
  std::vector<double> hidden(t.hidden_layers.begin(), t.hidden_layers.end());
  return absl::StrCat(
      "[utility]\n",
      "lambda = ", FormatDouble(u.lambda), "\n",
      "alpha = ", FormatDouble(u.alpha), "\n",
      "omega = ", FormatDouble(u.omega), "\n",
      "r_max = ", FormatDouble(u.r_max_m), "\n",
      "energy = ", FormatDouble(u.energy_kwh), "\n",
      "velocity = ", FormatDouble(u.velocity_kmh), "\n",
      "max_chargers = ", u.max_chargers, "\n",
      "budget = ", FormatDouble(u.budget_eur), "\n",
      "capacity_scale = ", FormatDouble(u.capacity_scale_kw), "\n",
      "dist_floor = ", FormatDouble(u.dist_floor_km), "\n",
      "arrival_scale = ", FormatDouble(u.arrival_scale), "\n",
      "rho_target = ", FormatDouble(u.rho_target), "\n",
      "charger_power = ", JoinNumbers(u.catalog.power_kw), "\n",
      "charger_cost = ", JoinNumbers(u.catalog.cost_eur), "\n",
      "[train]\n",
      "batch_size = ", t.batch_size, "\n",
      "buffer_size = ", t.buffer_size, "\n",
      "learning_rate = ", FormatDouble(t.learning_rate), "\n",
      "momentum = ", FormatDouble(t.momentum), "\n",
      "episodes_max = ", t.episodes_max, "\n",
      "gamma = ", FormatDouble(t.gamma), "\n",
      absl::StrCat(
          "epsilon_start = ", FormatDouble(t.epsilon_start), "\n",
          "epsilon_end = ", FormatDouble(t.epsilon_end), "\n",
          "exploration_fraction = ", FormatDouble(t.exploration_fraction), "\n",
          "target_sync_steps = ", t.target_sync_steps, "\n",
          "train_freq = ", t.train_freq, "\n",
          "huber_delta = ", FormatDouble(t.huber_delta), "\n",
          "hidden_layers = ", JoinNumbers(hidden), "\n",
          "eval_every = ", t.eval_every, "\n",
          "seed = ", t.seed, "\n"));
}

}  // namespace chargeplan
