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

// Command-line driver: synth, plan, train, compare and validate.
//
// Exit codes: 0 success, 1 failed validation or run, 2 usage error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "chargeplan/agent.h"
#include "chargeplan/baselines.h"
#include "chargeplan/config.h"
#include "chargeplan/env.h"
#include "chargeplan/netdata.h"
#include "chargeplan/report.h"
#include "chargeplan/utility.h"

namespace chargeplan {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr char kPolicyAlgo[] = "policy";
constexpr char kPolicyRowName[] = "pcrl";

// Raised for bad flags, unreadable inputs and unknown names.
struct UsageError {
  std::string message;
};
// Raised when a run completes but its result is rejected.
struct RunError {
  std::string message;
};

template <typename T>
T OrUsage(absl::StatusOr<T> value) {
  if (!value.ok()) throw UsageError{std::string(value.status().message())};
  return *std::move(value);
}

void OrUsage(const absl::Status& status) {
  if (!status.ok()) throw UsageError{std::string(status.message())};
}

template <typename T>
T OrFail(absl::StatusOr<T> value) {
  if (!value.ok()) throw RunError{std::string(value.status().message())};
  return *std::move(value);
}

void OrFail(const absl::Status& status) {
  if (!status.ok()) throw RunError{std::string(status.message())};
}

struct CommonFlags {
  std::string config_path;
  std::optional<int64_t> seed;
  std::optional<double> budget;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<double> omega;
  std::optional<double> rho_target;
  std::optional<double> arrival_scale;
  std::optional<int> max_chargers;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags* f) {
  cmd->add_option("--config", f->config_path, "Parameter file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", f->seed, "Random seed (falls back to "
                                     "CHARGEPLAN_SEED, then the config file)");
  cmd->add_option("--budget", f->budget, "Budget in EUR");
  cmd->add_option("--lambda", f->lambda, "Benefit/cost trade-off");
  cmd->add_option("--alpha", f->alpha, "Travel weight in the cost");
  cmd->add_option("--omega", f->omega, "Home-charging discount");
  cmd->add_option("--rho-target", f->rho_target, "Sizing utilization");
  cmd->add_option("--arrival-scale", f->arrival_scale, "Arrival-rate scale");
  cmd->add_option("--max-chargers", f->max_chargers, "Chargers per station");
}

// File values, then CHARGEPLAN_SEED, then flags.
ExperimentConfig ResolveConfig(const CommonFlags& f) {
  ExperimentConfig config;
  if (!f.config_path.empty()) config = OrUsage(LoadConfig(f.config_path));
  if (const char* env = std::getenv("CHARGEPLAN_SEED");
      env != nullptr && !f.seed) {
    uint64_t seed = 0;
    if (!absl::SimpleAtoi(env, &seed)) {
      throw UsageError{absl::StrCat("CHARGEPLAN_SEED='", env,
                                    "' is not a non-negative integer")};
    }
    config.train.seed = seed;
  }
  if (f.seed) {
    if (*f.seed < 0) throw UsageError{"--seed must be non-negative"};
    config.train.seed = static_cast<uint64_t>(*f.seed);
  }
  UtilityParams& u = config.utility;
  if (f.budget) u.budget_eur = *f.budget;
  if (f.lambda) u.lambda = *f.lambda;
  if (f.alpha) u.alpha = *f.alpha;
  if (f.omega) u.omega = *f.omega;
  if (f.rho_target) u.rho_target = *f.rho_target;
  if (f.arrival_scale) u.arrival_scale = *f.arrival_scale;
  if (f.max_chargers) u.max_chargers = *f.max_chargers;
  OrUsage(u.Validate());
  OrUsage(config.train.Validate());
  return config;
}

struct InputFlags {
  std::string nodes;
  std::string edges;
  std::string stations;
  std::string trips;
  bool normalize = false;
};

void AddInputFlags(CLI::App* cmd, InputFlags* f) {
  cmd->add_option("--nodes", f->nodes, "Node CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--edges", f->edges, "Edge CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--stations", f->stations, "Existing stations CSV")
      ->check(CLI::ExistingFile);
  cmd->add_option("--trips", f->trips,
                  "Trip end points CSV; replaces node demand")
      ->check(CLI::ExistingFile);
  cmd->add_flag("--normalize-demand", f->normalize,
                "Divide node demand by its maximum");
}

struct Inputs {
  RoadNetwork network;
  ChargingPlan initial;
};

void PrintWarnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

Inputs LoadInputs(const InputFlags& f, const UtilityParams& params) {
  std::vector<std::string> warnings;
  Inputs in{OrUsage(LoadNetwork(f.nodes, f.edges, f.normalize)), {}};
  if (!f.trips.empty()) {
    const std::vector<LatLon> trips = OrUsage(LoadTrips(f.trips));
    in.network = DemandFromTrips(
        MakeTripEndpointSet(trips, BoundingBox::Of(in.network)), in.network,
        /*grid=*/32, &warnings);
  }
  if (!f.stations.empty()) {
    in.initial = OrUsage(LoadExistingStations(
        f.stations, in.network, params.catalog, params.max_chargers,
        &warnings));
  }
  PrintWarnings(warnings);
  return in;
}

void PrintMetrics(const std::string& name, const PlanMetrics& m) {
  auto opt = [](const std::optional<double>& x) {
    return x ? absl::StrFormat("%.3f", *x) : std::string("n/a");
  };
  std::cout << absl::StrFormat(
      "%s: score=%.6f benefit=%.6f wait_h=%.4f travel_h=%.4f "
      "charging_h=%.4f travel_max_min=%s wait_max_min=%s fee_eur=%.2f "
      "stations=%d chargers=%d\n",
      name, m.score, m.benefit, m.wait_h, m.travel_h, m.charging_h,
      opt(m.travel_max_min), opt(m.wait_max_min), m.fee_spent,
      m.station_count, m.charger_count);
}

ChargingPlan RunPolicy(const std::string& path, const Inputs& in,
                       const UtilityParams& params) {
  const Policy policy = OrUsage(Policy::Load(path));
  PlacementEnv env(&in.network, params);
  if (policy.network().input_size() != static_cast<int>(env.observation_size())) {
    throw UsageError{absl::StrCat(
        path, ": policy expects ", policy.network().input_size(),
        " inputs but the network gives ", env.observation_size())};
  }
  return OrFail(EvaluatePolicy(policy, env, in.initial)).plan;
}

ChargingPlan RunAlgorithm(const std::string& algo,
                          const std::string& policy_path, const Inputs& in,
                          const UtilityParams& params) {
  if (algo == kPolicyAlgo) {
    if (policy_path.empty()) throw UsageError{"--algo policy needs --policy"};
    return RunPolicy(policy_path, in, params);
  }
  const Baseline b = OrUsage(ParseBaseline(algo));
  return OrFail(RunBaseline(b, in.initial, params.budget_eur, in.network,
                            params))
      .plan;
}

int Synth(int rows, int cols, const std::string& profile,
          const std::string& out_dir, const CommonFlags& common) {
  const ExperimentConfig config = ResolveConfig(common);
  if (rows < 1 || cols < 1) throw UsageError{"--rows and --cols must be >= 1"};
  const DemandProfile p = OrUsage(ParseDemandProfile(profile));
  const RoadNetwork net = GenerateSynthetic(rows, cols, config.train.seed, p);
  OrUsage(WriteNetwork(net, out_dir + "/nodes.csv", out_dir + "/edges.csv"));
  std::cout << "wrote " << net.num_nodes() << " nodes to " << out_dir
            << "/nodes.csv\n";
  return kExitOk;
}

int Plan(const std::string& algo, const std::string& policy_path,
         const std::string& out, const std::string& geojson,
         const InputFlags& inputs, const CommonFlags& common) {
  const ExperimentConfig config = ResolveConfig(common);
  const UtilityParams& params = config.utility;
  const Inputs in = LoadInputs(inputs, params);
  const ChargingPlan plan = RunAlgorithm(algo, policy_path, in, params);
  if (!out.empty()) {
    OrUsage(WritePlan(plan, in.network, params.catalog.size(), out));
  }
  if (!geojson.empty()) {
    OrUsage(ExportPlan(plan, in.network, params.catalog, geojson));
  }
  PrintMetrics(algo, OrFail(EvaluateMetrics(plan, in.network, params)));
  return kExitOk;
}

int TrainCommand(const std::string& checkpoint, const std::string& log_path,
                 const std::string& plan_out, std::optional<int> episodes,
                 bool verbose, const InputFlags& inputs,
                 const CommonFlags& common) {
  ExperimentConfig config = ResolveConfig(common);
  if (episodes) {
    config.train.episodes_max = *episodes;
    OrUsage(config.train.Validate());
  }
  const UtilityParams& params = config.utility;
  const Inputs in = LoadInputs(inputs, params);
  PlacementEnv env(&in.network, params);
  const TrainResult result = OrFail(Train(
      env, in.initial, config.train, [&](const EpisodeLog& e) {
        if (verbose) {
          std::cerr << absl::StrFormat("episode %d score %.6f eps %.3f\n",
                                       e.episode, e.final_score, e.epsilon);
        }
      }));
  OrUsage(result.policy.Save(checkpoint));
  if (!log_path.empty()) {
    std::ofstream log(log_path, std::ios::binary);
    if (!log) throw UsageError{absl::StrCat("cannot write ", log_path)};
    log << TrainingLogCsv(result.log);
  }
  const PolicyRollout rollout =
      OrFail(EvaluatePolicy(result.policy, env, in.initial));
  if (!plan_out.empty()) {
    OrUsage(WritePlan(rollout.plan, in.network, params.catalog.size(),
                      plan_out));
  }
  PrintMetrics(kPolicyRowName, rollout.metrics);
  return kExitOk;
}

int Compare(const std::string& algos, const std::string& policy_path,
            const std::string& reference, const std::string& out,
            const std::string& text_out, const std::string& plans_dir,
            const InputFlags& inputs, const CommonFlags& common) {
  const ExperimentConfig config = ResolveConfig(common);
  const UtilityParams& params = config.utility;
  const Inputs in = LoadInputs(inputs, params);
  std::vector<std::string> names;
  if (algos.empty()) {
    for (Baseline b : AllBaselines()) names.push_back(BaselineName(b));
  } else {
    names = absl::StrSplit(algos, ',', absl::SkipEmpty());
  }
  if (!policy_path.empty()) names.push_back(kPolicyAlgo);
  for (const std::string& name : names) {
    if (name != kPolicyAlgo) OrUsage(ParseBaseline(name).status());
  }

  std::vector<std::pair<std::string, PlanMetrics>> models;
  for (const std::string& name : names) {
    const ChargingPlan plan = RunAlgorithm(name, policy_path, in, params);
    const std::string row = name == kPolicyAlgo ? kPolicyRowName : name;
    if (!plans_dir.empty()) {
      OrUsage(WritePlan(plan, in.network, params.catalog.size(),
                        absl::StrCat(plans_dir, "/", row, ".csv")));
    }
    models.emplace_back(row, OrFail(EvaluateMetrics(plan, in.network, params)));
  }
  const RelativeTable table = OrUsage(MakeRelativeTable(models, reference));
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError{absl::StrCat("cannot write ", out)};
    f << table.ToCsv();
  }
  if (!text_out.empty()) {
    std::ofstream f(text_out, std::ios::binary);
    if (!f) throw UsageError{absl::StrCat("cannot write ", text_out)};
    f << table.ToText();
  }
  std::cout << table.ToText();
  return kExitOk;
}

int Validate(const std::string& plan_path, const InputFlags& inputs,
             const CommonFlags& common) {
  const ExperimentConfig config = ResolveConfig(common);
  const UtilityParams& params = config.utility;
  const Inputs in = LoadInputs(inputs, params);
  std::vector<std::string> warnings;
  const ChargingPlan plan = OrUsage(LoadExistingStations(
      plan_path, in.network, params.catalog,
      // No clamping here: oversized stations must be reported.
      std::numeric_limits<int>::max(), &warnings));
  PrintWarnings(warnings);
  // Stations already in the initial plan are sunk cost.
  const double spent = PlanFee(plan, in.network, params.catalog) -
                       PlanFee(in.initial, in.network, params.catalog);
  const FeasibilityReport report =
      CheckConstraints(plan, in.network, params, spent);
  for (const Violation& v : report.violations) {
    std::cout << "violation: " << ConstraintName(v.kind);
    if (v.node_id >= 0) std::cout << " node " << v.node_id;
    std::cout << " value " << v.value << "\n";
  }
  std::cout << (report.feasible() ? "feasible" : "infeasible") << "\n";
  return report.feasible() ? kExitOk : kExitFailure;
}

int Main(int argc, char** argv) {
  CLI::App app{"Charging-station placement planner"};
  app.require_subcommand(1);

  CommonFlags common;
  InputFlags inputs;

  CLI::App* synth = app.add_subcommand("synth", "Generate a lattice network");
  int rows = 10;
  int cols = 10;
  std::string profile = "hotspot";
  std::string out_dir = ".";
  synth->add_option("--rows", rows, "Lattice rows");
  synth->add_option("--cols", cols, "Lattice columns");
  synth->add_option("--profile", profile, "uniform, hotspot or gradient");
  synth->add_option("--out-dir", out_dir, "Output directory")
      ->check(CLI::ExistingDirectory);
  AddCommonFlags(synth, &common);

  CLI::App* plan = app.add_subcommand("plan", "Run one algorithm");
  std::string algo;
  std::string policy_path;
  std::string plan_out;
  std::string geojson;
  plan->add_option("--algo", algo,
                   "existing, best_benefit, highest_demand, "
                   "bounding_optimising_plus, score_greedy or policy")
      ->required();
  plan->add_option("--policy", policy_path, "Policy checkpoint");
  plan->add_option("--out", plan_out, "Plan CSV to write");
  plan->add_option("--geojson", geojson, "GeoJSON file to write");
  AddInputFlags(plan, &inputs);
  AddCommonFlags(plan, &common);

  CLI::App* train = app.add_subcommand("train", "Train a DQN policy");
  std::string checkpoint;
  std::string log_path;
  std::string train_plan;
  std::optional<int> episodes;
  bool verbose = false;
  train->add_option("--checkpoint", checkpoint, "Policy file to write")
      ->required();
  train->add_option("--log", log_path, "Training log CSV");
  train->add_option("--plan-out", train_plan, "Greedy plan CSV");
  train->add_option("--episodes", episodes, "Overrides episodes_max");
  train->add_flag("--verbose", verbose, "Per-episode progress on stderr");
  AddInputFlags(train, &inputs);
  AddCommonFlags(train, &common);

  CLI::App* compare = app.add_subcommand("compare", "Compare algorithms");
  std::string algos;
  std::string reference = "existing";
  std::string table_out;
  std::string text_out;
  std::string plans_dir;
  compare->add_option("--algos", algos,
                      "Comma-separated algorithms (default: all baselines)");
  compare->add_option("--policy", policy_path,
                      "Policy checkpoint, added as row 'pcrl'");
  compare->add_option("--reference", reference, "Reference row");
  compare->add_option("--out", table_out, "Table CSV to write");
  compare->add_option("--text-out", text_out, "Aligned table to write");
  compare->add_option("--plans-dir", plans_dir, "Directory for plan CSVs")
      ->check(CLI::ExistingDirectory);
  AddInputFlags(compare, &inputs);
  AddCommonFlags(compare, &common);

  CLI::App* validate = app.add_subcommand("validate", "Check a plan file");
  std::string plan_path;
  validate->add_option("--plan", plan_path, "Plan CSV")
      ->required()
      ->check(CLI::ExistingFile);
  AddInputFlags(validate, &inputs);
  AddCommonFlags(validate, &common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth->parsed()) return Synth(rows, cols, profile, out_dir, common);
    if (plan->parsed()) {
      return Plan(algo, policy_path, plan_out, geojson, inputs, common);
    }
    if (train->parsed()) {
      return TrainCommand(checkpoint, log_path, train_plan, episodes, verbose,
                          inputs, common);
    }
    if (compare->parsed()) {
      return Compare(algos, policy_path, reference, table_out, text_out,
                     plans_dir, inputs, common);
    }
    if (validate->parsed()) return Validate(plan_path, inputs, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const RunError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace chargeplan

int main(int argc, char** argv) { return chargeplan::Main(argc, argv); }
