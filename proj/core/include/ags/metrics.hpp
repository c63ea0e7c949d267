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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ags/graph.hpp"
#include "ags/rng.hpp"

namespace ags::metrics {

/// Fraction of u's neighbors sharing u's label; nullopt for isolated nodes.
std::optional<double> local_node_homophily(const Graph& g, const LabelVector& y,
                                           NodeId u);

/// Mean local homophily over non-isolated nodes.
double node_homophily(const Graph& g, const LabelVector& y);

/// Same-label fraction of the edge set. Undirected graphs count each
/// unordered edge once (a self-loop counts as one same-label edge).
double edge_homophily(const Graph& g, const LabelVector& y);

struct AdjustedHomophily {
  double value = 0.0;
  bool degenerate = false;  // denominator vanished; value set to 0 (or 1 if h_e == 1)
};

/// Edge homophily corrected for the expected same-label fraction under
/// degree-preserving random wiring: (h_e - sum_k p_k^2) / (1 - sum_k p_k^2)
/// with p_k = D_k / sum_v d_v and D_k the total degree of class k.
AdjustedHomophily adjusted_homophily(const Graph& g, const LabelVector& y);

/// (1/(c-1)) * sum_k max(0, h_k - |C_k|/n) where h_k is the same-class share
/// of the edge endpoints owned by class k. Requires c >= 2.
double class_insensitive_homophily(const Graph& g, const LabelVector& y);

/// Per-node entropy of the neighbor-label distribution, normalized by ln(c)
/// and averaged over all nodes (isolated nodes contribute 0).
double entropy_score(const Graph& g, const LabelVector& y);

/// Upper 5% point of the chi-square distribution with `dof` degrees of
/// freedom (table for dof <= 30, Wilson-Hilferty beyond).
double chi_square_critical_95(std::size_t dof);

struct UniformityResult {
  double score = 0.0;              // passing nodes / n
  std::size_t passing = 0;
  std::size_t low_degree = 0;      // nodes with 0 < d_u < c, auto-fail
  std::size_t isolated = 0;        // auto-fail
};

/// Fraction of nodes whose neighbor-label histogram is consistent with a
/// uniform distribution over the c classes (uncorrected chi-square, 95%).
UniformityResult uniformity_score(const Graph& g, const LabelVector& y);

/// Pearson correlation of endpoint degrees over every stored edge entry.
/// nullopt when either endpoint-degree series has zero variance.
std::optional<double> degree_assortativity(const Graph& g);

enum class Pairing { edges, random_pairs, balanced };

using PairSimilarity = std::function<double(NodeId, NodeId)>;

/// Pearson r between pair similarity and the same-label indicator.
/// `edges`: every unique non-loop edge. `random_pairs`: `num_pairs`
/// uniformly random distinct pairs. `balanced`: every edge plus as many
/// random non-adjacent pairs.
double feature_label_correlation(const Graph& g, const LabelVector& y,
                                 const PairSimilarity& sim, Pairing pairing,
                                 std::size_t num_pairs, const Rng& rng);

/// Plain Pearson correlation; throws on < 2 points or zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kHistogramBuckets = 20;

struct HomophilyReport {
  double h_node = 0.0;
  double h_edge = 0.0;
  double h_adjusted = 0.0;
  bool h_adjusted_degenerate = false;
  std::optional<double> h_class_insensitive;  // undefined for c = 1
  double h_entropy = 0.0;
  UniformityResult uniformity;
  std::optional<double> assortativity;
  std::optional<double> feature_label_r;      // only with features
  std::vector<std::optional<double>> local;   // per node; nullopt if isolated
  std::vector<std::size_t> histogram;         // kHistogramBuckets over [0, 1]
  std::size_t num_isolated = 0;
};

HomophilyReport homophily_report(const Graph& g, const LabelVector& y,
                                 const FeatureMatrix* x = nullptr);

}  // namespace ags::metrics
