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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "support.hpp"

namespace ags::cli {

using Path = std::filesystem::path;

struct Common {
  Path out;
  Path manifest;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 0;  // 0 = available cores
};

struct AnalyzeOptions {
  Path graph, labels, features;
  bool directed = false;
  std::string pairing = "edges";
  std::size_t pairs = 10000;
  bool local = false;
};

struct RankOptions {
  Path graph, features, labels, model;
  bool directed = false;
  std::string mode = "similar";
  std::string sim = "cosine";
  std::string fn = "facility";
  std::string pmf = "step";
  double k1 = 0.2, k2 = 0.2;
  std::vector<double> lambdas{4.0, 2.0, 1.0};
  double decay = 0.5;
  double floor = 1e-6;
  double cut_lambda = 2.0;
  bool partial_sort = false;
  // Inline similarity learning for --sim learned without --model.
  std::size_t siamese_hidden = 256;
  std::size_t siamese_epochs = 50;
  std::size_t siamese_batch = 10000;
  double train_frac = 0.6;
};

struct SampleOptions {
  Path table, table2, graph, seeds;
  bool directed = false;
  std::size_t batch = 64;
  // node
  std::vector<std::size_t> fanouts{25, 10};
  bool replace = false;
  bool exclude_self = false;
  // walk
  std::size_t steps = 2;
  // disjoint
  std::size_t k = 2;
  std::size_t forests = 4;
  double residual_frac = 0.05;
};

struct SynthOptions {
  Path labels, labels_out, features_out;
  std::size_t nodes = 0;    // generate labels when no --labels is given
  std::size_t classes = 0;
  std::optional<double> hn;
  std::vector<double> hn_range;
  double degree = 20;
  std::size_t feature_dim = 0;  // 0 = no features written
  double signal = 1.0;
  double noise = 0.5;
};

struct LemmaOptions {
  Path graph, features, labels, model;
  bool directed = false;
  std::string sim = "cosine";
  bool per_node = false;
};

struct TrainOptions {
  Path graph, features, labels, table_sim, table_div;
  bool directed = false;
  std::size_t channels = 2;
  std::string combiner = "concat";
  std::size_t epochs = 250;
  std::size_t hidden = 64;
  std::vector<std::size_t> fanouts{8, 4};
  std::size_t batch = 64;
  double lr = 1e-3;
  std::size_t window = 5;
  double threshold = 1e-4;
  std::size_t mc_samples = 3;
  double train_frac = 0.6, val_frac = 0.2;
};

struct BenchOptions {
  Path graph, features, labels;
  bool directed = false;
  std::size_t nodes = 2000;
  std::size_t classes = 5;
  std::size_t feature_dim = 16;
  double degree = 20;
  std::vector<std::size_t> sizes{1000, 2000, 4000};
  std::vector<std::size_t> worker_counts{1, 2, 4};
  std::size_t repeats = 3;
  std::size_t sample_batch = 512;
};

Json analyze(const AnalyzeOptions& o, const Common& c, Run& run);
Json rank(const RankOptions& o, const Common& c, Run& run);
Json sample_node(const SampleOptions& o, const Common& c, Run& run);
Json sample_walk(const SampleOptions& o, const Common& c, Run& run);
Json sample_disjoint(const SampleOptions& o, const Common& c, Run& run);
Json synth(const SynthOptions& o, const Common& c, Run& run);
Json verify_lemmas(const LemmaOptions& o, const Common& c, Run& run);
Json train_demo(const TrainOptions& o, const Common& c, Run& run);
Json bench(const BenchOptions& o, const Common& c, Run& run);

}  // namespace ags::cli
