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
#include <vector>

#include "ags/graph.hpp"
#include "ags/rank_table.hpp"
#include "ags/rng.hpp"
#include "ags/subgraph.hpp"

namespace ags::sampling {

struct WeightedEdge {
  NodeId u = 0;  // u <= v
  NodeId v = 0;
  double w = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Undirected edge weights (p_uv + p_vu) / 2 from a table over an
/// undirected graph. One entry per unordered edge, self-loops once.
std::vector<WeightedEdge> edge_weights_from_table(const Graph& g, const RankTable& rt);

struct DisjointPart {
  std::vector<WeightedEdge> edges;
  double weight = 0.0;
};

/// Edge-disjoint parts of a graph. Every part but the last is a maximum
/// spanning forest; the last is the residual and has weight 0.
struct DisjointCollection {
  std::size_t num_nodes = 0;
  std::vector<DisjointPart> parts;
  bool exhausted = false;  // edges ran out before K forests were extracted

  std::size_t num_forests() const { return parts.empty() ? 0 : parts.size() - 1; }
  const DisjointPart& residual() const { return parts.back(); }
};

/// Extracts up to K maximum spanning forests (Kruskal, ties by descending
/// weight then ascending (u, v)) from the remaining edges. Forest i gets
/// weight max(total edge weight, K_i * 1e-3), where K_i counts the forests
/// still to be extracted including this one.
DisjointCollection disjoint_decompose(std::size_t num_nodes,
                                      std::vector<WeightedEdge> edges, std::size_t K);

/// Union of k forests drawn without replacement with probability
/// proportional to their weight, plus round(frac * |residual|) residual
/// edges drawn uniformly. Edges are stored in both directions and carry
/// layer 0; the subgraph has no seeds.
Subgraph disjoint_subgraph_sample(const Graph& g, const DisjointCollection& col,
                                  std::size_t k, double residual_frac, Rng& rng);

}  // namespace ags::sampling
