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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Sparse>

#include "ags/graph.hpp"
#include "ags/nn.hpp"
#include "ags/rank_table.hpp"
#include "ags/rng.hpp"
#include "ags/subgraph.hpp"

namespace ags::sage {

using nn::Matrix;
using nn::RowVector;

/// h' = relu(h W_self^T + mean(h_nbr) W_neigh^T + b).
struct SageLayer {
  Matrix w_self;
  Matrix w_neigh;
  RowVector bias;
};

struct SageChannel {
  std::vector<SageLayer> layers;
};

enum class Combiner : std::uint8_t { concat = 0, skip = 1 };

Combiner parse_combiner(std::string_view name);
std::string_view to_string(Combiner c);

/// One or two channels and a classification head.
///
/// One channel: logits = h W_a^T + b.
/// concat:      logits = h_s W_a^T + h_d W_b^T + b.
/// skip:        z = relu(h_s S_a^T + h_d S_b^T + s + h_s + h_d),
///              logits = z W_a^T + b.
struct SageModel {
  std::vector<SageChannel> channels;
  Combiner combiner = Combiner::concat;
  Matrix head_a, head_b;
  RowVector head_bias;
  Matrix skip_a, skip_b;
  RowVector skip_bias;

  static SageModel init(std::size_t features, std::size_t hidden, std::size_t classes,
                        std::size_t layers, std::size_t channels, Combiner combiner,
                        Rng& rng);

  std::size_t num_layers() const;
  std::size_t hidden() const;
  std::size_t num_classes() const { return static_cast<std::size_t>(head_a.rows()); }
  std::vector<std::span<double>> parameters();
  std::size_t num_parameters();
};

/// Sampled computation graphs for one batch, one per channel, all over the
/// same seeds in the same order.
struct Batch {
  std::vector<Subgraph> channels;
};

/// Row-normalized aggregation from the nodes of depth <= depth + 1 into the
/// nodes of depth <= `depth`, weighting repeated draws by multiplicity.
Eigen::SparseMatrix<double, Eigen::RowMajor> aggregation_matrix(const Subgraph& sg,
                                                                std::uint32_t depth);

/// Seed embeddings of one channel (rows follow the subgraph's seed order).
Matrix forward_channel(const SageChannel& ch, const Subgraph& sg, const FeatureMatrix& x);

/// Seed logits.
Matrix forward(const SageModel& model, const FeatureMatrix& x, const Batch& batch);

struct SageGrad {
  double loss = 0.0;
  std::vector<Matrix> grads;  // aligned with SageModel::parameters()
  std::vector<std::span<const double>> views() const;
};

/// Mean softmax cross-entropy over the seeds and its parameter gradient.
SageGrad loss_and_grad(const SageModel& model, const FeatureMatrix& x, const Batch& batch,
                       std::span<const std::int32_t> seed_labels);

struct Split {
  std::vector<NodeId> train, val, test;
};

/// Random 60/20/20 (default) partition of all nodes.
Split random_split(std::size_t n, const Rng& rng, double train_frac = 0.6,
                   double val_frac = 0.2);

struct TrainConfig {
  std::size_t hidden = 64;
  std::vector<std::size_t> fanouts{8, 4};
  std::size_t batch = 64;
  std::size_t epochs = 250;
  double lr = 1e-3;
  Combiner combiner = Combiner::concat;
  std::size_t window = 5;        // convergence: stddev of the last `window`
  double threshold = 1e-4;       // epoch losses below `threshold`
  std::size_t mc_samples = 3;    // sampled neighborhoods averaged at inference
  bool replace = false;
  std::size_t workers = 1;       // sampling workers
  std::uint64_t seed = 0;
};

enum class StopReason : std::uint8_t { converged, epoch_cap, non_finite };
std::string_view to_string(StopReason r);

struct History {
  std::vector<double> epoch_loss;
  std::vector<double> val_f1;
  std::size_t best_epoch = 0;
  double best_val_f1 = 0.0;
  StopReason stop = StopReason::epoch_cap;
  std::string error;  // set when stop == non_finite
};

struct TrainResult {
  SageModel model;  // best by validation micro-F1
  History history;
};

/// `tables` holds one table (single channel) or two (similar, diverse).
TrainResult train(const Graph& g, const FeatureMatrix& x, const LabelVector& y,
                  std::span<const RankTable* const> tables, const Split& split,
                  const TrainConfig& cfg);

/// Micro-F1 over `nodes`, averaging class probabilities over
/// cfg.mc_samples sampled neighborhoods. Deterministic given `rng`.
double evaluate(const SageModel& model, const Graph& g, const FeatureMatrix& x,
                const LabelVector& y, std::span<const RankTable* const> tables,
                std::span<const NodeId> nodes, const TrainConfig& cfg, const Rng& rng);

/// True once the last `window` losses have population stddev < threshold.
bool converged(std::span<const double> losses, std::size_t window, double threshold);

}  // namespace ags::sage
