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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ags/common.hpp"
#include "ags/graph.hpp"
#include "ags/nn.hpp"
#include "ags/rng.hpp"

namespace ags::similarity {

/// dot / (|a| |b|). A zero vector gives 0 and sets *zero_vector.
double cosine(std::span<const double> a, std::span<const double> b,
              bool* zero_vector = nullptr);

double squared_distance(std::span<const double> a, std::span<const double> b);

enum class SimKind : std::uint8_t { cosine = 0, neg_euclidean = 1, learned = 2 };

SimKind parse_sim_kind(std::string_view name);
std::string_view to_string(SimKind kind);

/// Two-tower pair regressor: a shared tower (f -> H1 -> H2, ReLU) embeds
/// both inputs, and a sigmoid head scores [|e1 - e2|, e1 * e2].
class SiameseModel {
 public:
  SiameseModel() = default;
  SiameseModel(std::size_t features, std::size_t h1, std::size_t h2, Rng& rng);
  SiameseModel(nn::DenseNet tower, nn::DenseNet head);

  std::size_t feature_dim() const { return tower_.input_dim(); }
  std::size_t embed_dim() const { return tower_.output_dim(); }

  nn::DenseNet& tower() { return tower_; }
  const nn::DenseNet& tower() const { return tower_; }
  nn::DenseNet& head() { return head_; }
  const nn::DenseNet& head() const { return head_; }

  /// Tower parameters followed by head parameters.
  std::vector<std::span<double>> parameters();

  friend bool operator==(const SiameseModel& a, const SiameseModel& b);

 private:
  nn::DenseNet tower_;
  nn::DenseNet head_;
};

/// One output per row pair, shape (rows x 1).
nn::Matrix predict(const SiameseModel& model, const nn::Matrix& a,
                   const nn::Matrix& b);

/// Single pair score in (0, 1).
double predict_edge_weight(const SiameseModel& model, std::span<const double> xu,
                           std::span<const double> xv);

struct SiameseGrad {
  double loss = 0.0;
  std::vector<nn::Matrix> grads;  // aligned with SiameseModel::parameters()

  std::vector<std::span<const double>> views() const;
};

/// MSE of predict(a, b) against `target` and its parameter gradient.
SiameseGrad siamese_loss_grad(const SiameseModel& model, const nn::Matrix& a,
                              const nn::Matrix& b, const nn::Matrix& target);

struct SiameseConfig {
  std::size_t h1 = 256;
  std::size_t h2 = 256;
  std::size_t batch = 10000;      // pairs per step, half edges, half non-edges
  std::size_t epochs = 50;
  std::size_t max_steps = 0;      // 0 means no cap
  std::size_t patience = 5;       // epochs without improvement before stopping
  double min_delta = 1e-4;        // relative improvement that resets patience
  double lr = 1e-3;
  std::uint64_t seed = 0;
};

struct SiameseTrainReport {
  std::vector<double> epoch_loss;
  std::vector<double> step_loss;
  bool used_class_fallback = false;  // no edges between training nodes
  std::size_t num_pairs = 0;         // positive pairs in the training pool
};

/// Fits the model to the label-match indicator on pairs of training nodes.
/// `train` lists training vertices. Deterministic for a given seed.
SiameseModel train_similarity(const Graph& g, const FeatureMatrix& x,
                              const LabelVector& y, std::span<const NodeId> train,
                              const SiameseConfig& cfg,
                              SiameseTrainReport* report = nullptr);

void save_model(const SiameseModel& model, const std::filesystem::path& path);
SiameseModel load_model(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_model(const SiameseModel& model);
SiameseModel decode_model(std::span<const std::uint8_t> bytes);

/// A pair score. cosine returns the raw cosine, neg_euclidean returns minus
/// the squared distance (an ordering only), learned returns the model output.
struct SimilarityFn {
  SimKind kind = SimKind::cosine;
  std::shared_ptr<const SiameseModel> model;

  double operator()(std::span<const double> a, std::span<const double> b) const;
};

SimilarityFn make_similarity(SimKind kind,
                             std::shared_ptr<const SiameseModel> model = nullptr);

/// Symmetric nonnegative kernel over the listed feature rows:
/// cosine -> (cos + 1) / 2, neg_euclidean -> maxD - D with D squared
/// distance, learned -> model output.
nn::Matrix pairwise_kernel(const FeatureMatrix& x, std::span<const NodeId> rows,
                           const SimilarityFn& sim);

/// Same, over an explicit row-per-point matrix.
nn::Matrix pairwise_kernel(const nn::Matrix& points, const SimilarityFn& sim);

}  // namespace ags::similarity
