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

#ifndef CHARGEPLAN_MLP_H_
#define CHARGEPLAN_MLP_H_

#include <span>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "chargeplan/rng.h"

namespace chargeplan {

// Parameter-shaped container, also used for gradients and optimizer state.
struct MlpParams {
  std::vector<Eigen::MatrixXd> weights;  // fan_in x fan_out
  std::vector<Eigen::RowVectorXd> biases;

  void SetZero();
  Eigen::VectorXd Flatten() const;
  void Unflatten(const Eigen::VectorXd& flat);
  size_t size() const;
};

// Fully connected network with ReLU hidden layers and a linear output.
// Inputs are row-major batches: one sample per row.
class Mlp {
 public:
  Mlp() = default;
  // `layer_sizes` lists input, hidden and output widths. Weights are drawn
  // uniformly within +-sqrt(6 / (fan_in + fan_out)); biases start at zero.
  Mlp(std::span<const int> layer_sizes, Rng& rng);

  int input_size() const;
  int output_size() const;
  std::vector<int> layer_sizes() const;

  Eigen::MatrixXd Forward(const Eigen::MatrixXd& inputs) const;

  // Mean Huber loss between Q(s_i, a_i) and targets_i. Writes parameter
  // gradients into `grads` when non-null.
  double TdLoss(const Eigen::MatrixXd& inputs, std::span<const int> actions,
                std::span<const double> targets, double huber_delta,
                MlpParams* grads) const;

  const MlpParams& params() const { return params_; }
  MlpParams& mutable_params() { return params_; }

  // Text dump of layer shapes and parameters; exact round trip.
  std::string Serialize() const;
  static absl::StatusOr<Mlp> Deserialize(const std::string& text);

 private:
  MlpParams params_;
};

// Stochastic gradient descent with classical momentum.
class SgdMomentum {
 public:
  SgdMomentum(double learning_rate, double momentum)
      : learning_rate_(learning_rate), momentum_(momentum) {}

  void Step(const MlpParams& grads, MlpParams& params);

 private:
  double learning_rate_;
  double momentum_;
  MlpParams velocity_;
};

}  // namespace chargeplan

#endif  // CHARGEPLAN_MLP_H_
