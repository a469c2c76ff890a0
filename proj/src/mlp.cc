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

#include "chargeplan/mlp.h"

#include <cmath>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "text_util.h"

namespace chargeplan {
namespace {

constexpr char kMagic[] = "chargeplan-mlp";
constexpr int kFormatVersion = 1;

}  // namespace

void MlpParams::SetZero() {
  for (auto& w : weights) w.setZero();
  for (auto& b : biases) b.setZero();
}

size_t MlpParams::size() const {
  size_t n = 0;
  for (const auto& w : weights) n += w.size();
  for (const auto& b : biases) n += b.size();
  return n;
}

Eigen::VectorXd MlpParams::Flatten() const {
  Eigen::VectorXd flat(size());
  Eigen::Index k = 0;
  for (size_t l = 0; l < weights.size(); ++l) {
    for (Eigen::Index i = 0; i < weights[l].rows(); ++i) {
      for (Eigen::Index j = 0; j < weights[l].cols(); ++j) {
        flat[k++] = weights[l](i, j);
      }
    }
    for (Eigen::Index j = 0; j < biases[l].size(); ++j) flat[k++] = biases[l][j];
  }
  return flat;
}

void MlpParams::Unflatten(const Eigen::VectorXd& flat) {
  Eigen::Index k = 0;
  for (size_t l = 0; l < weights.size(); ++l) {
    for (Eigen::Index i = 0; i < weights[l].rows(); ++i) {
      for (Eigen::Index j = 0; j < weights[l].cols(); ++j) {
        weights[l](i, j) = flat[k++];
      }
    }
    for (Eigen::Index j = 0; j < biases[l].size(); ++j) biases[l][j] = flat[k++];
  }
}

Mlp::Mlp(std::span<const int> layer_sizes, Rng& rng) {
  for (size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const int fan_in = layer_sizes[l];
    const int fan_out = layer_sizes[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    Eigen::MatrixXd w(fan_in, fan_out);
    for (int i = 0; i < fan_in; ++i) {
      for (int j = 0; j < fan_out; ++j) w(i, j) = rng.Uniform(-limit, limit);
    }
    params_.weights.push_back(std::move(w));
    params_.biases.push_back(Eigen::RowVectorXd::Zero(fan_out));
  }
}

int Mlp::input_size() const {
  return params_.weights.empty() ? 0
                                 : static_cast<int>(params_.weights.front().rows());
}

int Mlp::output_size() const {
  return params_.weights.empty() ? 0
                                 : static_cast<int>(params_.weights.back().cols());
}

std::vector<int> Mlp::layer_sizes() const {
  std::vector<int> sizes;
  if (params_.weights.empty()) return sizes;
  sizes.push_back(input_size());
  for (const auto& w : params_.weights) sizes.push_back(static_cast<int>(w.cols()));
  return sizes;
}

Eigen::MatrixXd Mlp::Forward(const Eigen::MatrixXd& inputs) const {
  Eigen::MatrixXd a = inputs;
  const size_t layers = params_.weights.size();
  for (size_t l = 0; l < layers; ++l) {
    Eigen::MatrixXd z = a * params_.weights[l];
    z.rowwise() += params_.biases[l];
    if (l + 1 < layers) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

double Mlp::TdLoss(const Eigen::MatrixXd& inputs, std::span<const int> actions,
                   std::span<const double> targets, double huber_delta,
                   MlpParams* grads) const {
  const size_t layers = params_.weights.size();
  const Eigen::Index batch = inputs.rows();
  // activations[l] is the input of layer l; activations[layers] is Q.
  std::vector<Eigen::MatrixXd> activations;
  activations.reserve(layers + 1);
  activations.push_back(inputs);
  for (size_t l = 0; l < layers; ++l) {
    Eigen::MatrixXd z = activations.back() * params_.weights[l];
    z.rowwise() += params_.biases[l];
    if (l + 1 < layers) z = z.cwiseMax(0.0);
    activations.push_back(std::move(z));
  }
  const Eigen::MatrixXd& q = activations.back();

  double loss = 0.0;
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(batch, q.cols());
  for (Eigen::Index i = 0; i < batch; ++i) {
    const double d = q(i, actions[i]) - targets[i];
    const double ad = std::fabs(d);
    if (ad <= huber_delta) {
      loss += 0.5 * d * d;
      delta(i, actions[i]) = d;
    } else {
      loss += huber_delta * (ad - 0.5 * huber_delta);
      delta(i, actions[i]) = d > 0.0 ? huber_delta : -huber_delta;
    }
  }
  loss /= static_cast<double>(batch);
  if (grads == nullptr) return loss;

  delta /= static_cast<double>(batch);
  grads->weights.resize(layers);
  grads->biases.resize(layers);
  for (size_t l = layers; l-- > 0;) {
    grads->weights[l] = activations[l].transpose() * delta;
    grads->biases[l] = delta.colwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = delta * params_.weights[l].transpose();
      // ReLU derivative: activations[l] is the rectified output of layer l-1.
      delta = (activations[l].array() > 0.0).select(back, 0.0);
    }
  }
  return loss;
}

std::string Mlp::Serialize() const {
  std::string out = absl::StrCat(kMagic, " ", kFormatVersion, "\nlayers");
  for (int s : layer_sizes()) absl::StrAppend(&out, " ", s);
  out += "\n";
  for (size_t l = 0; l < params_.weights.size(); ++l) {
    const Eigen::MatrixXd& w = params_.weights[l];
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        absl::StrAppend(&out, j ? " " : "", internal::FormatDouble(w(i, j)));
      }
      out += "\n";
    }
    const Eigen::RowVectorXd& b = params_.biases[l];
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      absl::StrAppend(&out, j ? " " : "", internal::FormatDouble(b[j]));
    }
    out += "\n";
  }
  return out;
}

absl::StatusOr<Mlp> Mlp::Deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string magic, token;
  int version = 0;
  in >> magic >> version;
  if (magic != kMagic) {
    return absl::InvalidArgumentError("not a chargeplan policy checkpoint");
  }
  if (version != kFormatVersion) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported checkpoint version ", version));
  }
  std::string line;
  std::getline(in, line);  // rest of the magic line
  std::getline(in, line);
  std::istringstream sizes_in(line);
  sizes_in >> token;
  if (token != "layers") {
    return absl::InvalidArgumentError("checkpoint is missing the layers line");
  }
  std::vector<int> sizes;
  int s = 0;
  while (sizes_in >> s) {
    if (s <= 0) return absl::InvalidArgumentError("bad layer width");
    sizes.push_back(s);
  }
  if (sizes.size() < 2) {
    return absl::InvalidArgumentError("checkpoint needs at least two layers");
  }
  Mlp mlp;
  auto read = [&](double* v) -> bool {
    if (!(in >> token)) return false;
    return absl::SimpleAtod(token, v);
  };
  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    Eigen::MatrixXd w(sizes[l], sizes[l + 1]);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        if (!read(&w(i, j))) {
          return absl::InvalidArgumentError("truncated checkpoint weights");
        }
      }
    }
    Eigen::RowVectorXd b(sizes[l + 1]);
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (!read(&b[j])) {
        return absl::InvalidArgumentError("truncated checkpoint biases");
      }
    }
    mlp.params_.weights.push_back(std::move(w));
    mlp.params_.biases.push_back(std::move(b));
  }
  if (in >> token) {
    return absl::InvalidArgumentError("trailing data in checkpoint");
  }
  return mlp;
}

void SgdMomentum::Step(const MlpParams& grads, MlpParams& params) {
  if (velocity_.weights.size() != params.weights.size()) {
    velocity_ = params;
    velocity_.SetZero();
  }
  for (size_t l = 0; l < params.weights.size(); ++l) {
    velocity_.weights[l] = momentum_ * velocity_.weights[l] + grads.weights[l];
    velocity_.biases[l] = momentum_ * velocity_.biases[l] + grads.biases[l];
    params.weights[l] -= learning_rate_ * velocity_.weights[l];
    params.biases[l] -= learning_rate_ * velocity_.biases[l];
  }
}

}  // namespace chargeplan
