// Copyright 2026 The ags Authors
//
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

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ags/rng.hpp"

namespace ags::nn {

/// Batches are row-major in the mathematical sense: one sample per row.
using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;

enum class Activation : std::uint8_t { identity = 0, relu = 1, sigmoid = 2 };

/// y = act(x W^T + b), W is out x in.
struct Dense {
  Matrix weight;
  RowVector bias;
  Activation act = Activation::identity;

  std::size_t in() const { return static_cast<std::size_t>(weight.cols()); }
  std::size_t out() const { return static_cast<std::size_t>(weight.rows()); }
};

/// Glorot-uniform weights, zero bias.
Dense make_dense(std::size_t in, std::size_t out, Activation act, Rng& rng);

class DenseNet {
 public:
  DenseNet() = default;
  /// dims has one more entry than acts: dims[i] -> dims[i + 1] uses acts[i].
  DenseNet(std::span<const std::size_t> dims, std::span<const Activation> acts,
           Rng& rng);
  explicit DenseNet(std::vector<Dense> layers);

  static DenseNet identity(std::size_t dim);

  std::vector<Dense>& layers() { return layers_; }
  const std::vector<Dense>& layers() const { return layers_; }
  std::size_t input_dim() const;
  std::size_t output_dim() const;
  std::size_t num_parameters() const;

  /// Flat views over W0, b0, W1, b1, ... in that order.
  std::vector<std::span<double>> parameters();

 private:
  void check_chain() const;
  std::vector<Dense> layers_;
};

Matrix activate(const Matrix& z, Activation act);
/// dL/dz given z, act(z) and dL/d act(z). ReLU uses subgradient 0 at z <= 0.
Matrix activation_backward(const Matrix& z, const Matrix& y, Activation act,
                           const Matrix& grad_y);

struct ForwardCache {
  std::vector<Matrix> inputs;  // input of each layer
  std::vector<Matrix> pre;     // pre-activation of each layer
  std::vector<Matrix> post;    // output of each layer
};

struct Gradients {
  std::vector<Matrix> weight;
  std::vector<RowVector> bias;
  Matrix input;  // dL/dx

  /// Views aligned with DenseNet::parameters().
  std::vector<std::span<const double>> views() const;
};

Matrix forward(const DenseNet& net, const Matrix& x, ForwardCache* cache = nullptr);
Gradients backward(const DenseNet& net, const ForwardCache& cache,
                   const Matrix& grad_out);

/// Bias-corrected Adam.
class Adam {
 public:
  struct Options {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
  };

  Adam() = default;
  explicit Adam(Options opt) : opt_(opt) {}

  /// Updates params in place. Throws (leaving every parameter untouched) if
  /// any gradient entry is non-finite.
  void step(std::span<const std::span<double>> params,
            std::span<const std::span<const double>> grads);

  std::uint64_t steps() const { return t_; }
  const Options& options() const { return opt_; }

 private:
  Options opt_;
  std::uint64_t t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

struct Loss {
  double value = 0.0;
  Matrix grad;  // dL/dprediction
};

/// Mean squared error over every entry.
Loss mse(const Matrix& pred, const Matrix& target);
/// Mean softmax cross-entropy over the batch.
Loss softmax_cross_entropy(const Matrix& logits,
                           std::span<const std::int32_t> classes);
Matrix softmax(const Matrix& logits);
std::vector<std::int32_t> argmax_rows(const Matrix& scores);

/// Micro-averaged F1 from pooled per-class TP/FP/FN counts.
double micro_f1(std::span<const std::int32_t> predicted,
                std::span<const std::int32_t> truth);

}  // namespace ags::nn
