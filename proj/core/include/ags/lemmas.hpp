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
#include <optional>
#include <vector>

#include "ags/graph.hpp"
#include "ags/similarity.hpp"

namespace ags::synth {

/// Same-label selection probabilities at one node t.
struct LemmaNode {
  NodeId node = 0;
  double p_uniform = 0.0;              // local node homophily of t
  std::optional<double> p_similar;     // mass on same-label neighbors, p ~ s(x_i, x_t)
  std::optional<double> p_diverse;     // same, p ~ facility-location gain given {t}
  bool assumption1 = true;  // same-label neighbors at least as similar on average
  bool assumption2 = true;  // same-label neighbors at most as diverse on average
};

struct LemmaReport {
  std::vector<LemmaNode> nodes;  // non-isolated nodes, ascending id
  double mean_p_uniform = 0.0;
  double mean_p_similar = 0.0;   // over nodes with a defined p_similar
  double mean_p_diverse = 0.0;   // over nodes with a defined p_diverse
  std::size_t similar_ge_uniform = 0;
  std::size_t diverse_le_uniform = 0;
  std::size_t assumption1_violations = 0;
  std::size_t assumption2_violations = 0;
  // Nodes where an assumption held but the implied inequality did not.
  std::size_t lemma1_failures = 0;
  std::size_t lemma2_failures = 0;
  std::size_t zero_similarity = 0;  // excluded from the similar means
  std::size_t zero_gain = 0;        // excluded from the diverse means
  std::size_t isolated = 0;
};

/// Exact per-node probabilities. Similarities are row t of the egonet
/// kernel of `sim` (nonnegative), so cosine enters as (cos + 1) / 2.
LemmaReport verify_lemmas(const Graph& g, const FeatureMatrix& x, const LabelVector& y,
                          const similarity::SimilarityFn& sim, std::size_t workers = 1);

}  // namespace ags::synth
