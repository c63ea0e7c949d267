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
#include <utility>
#include <vector>

#include "ags/graph.hpp"
#include "ags/rank_table.hpp"
#include "ags/rng.hpp"
#include "ags/subgraph.hpp"

namespace ags::sampling {

/// Draws from row u of the table. With replacement: k iid draws. Without:
/// min(k, d) distinct neighbors in the order of successive PMF-weighted
/// draws (exponential keys). `exclude_self` drops a self-loop entry.
std::vector<NodeId> sample_neighbors(const RankTable& rt, NodeId u, std::size_t k,
                                     bool replace, Rng& rng, bool exclude_self = false);

struct NodeSampleOptions {
  std::vector<std::size_t> fanouts{25, 10};
  bool replace = false;
  bool exclude_self = false;
  std::size_t workers = 1;
};

/// Layered frontier expansion from the seeds. Each node is expanded once,
/// at the first depth it is reached, with k = fanouts[depth] draws from its
/// row. Draws use the stream rng.split(layer, node), so results do not
/// depend on the worker count.
Subgraph node_sample_khop(const Graph& g, const RankTable& rt,
                          std::span<const NodeId> seeds, const NodeSampleOptions& opt,
                          const Rng& rng);

/// Two independent expansions over the same seeds, one per table.
std::pair<Subgraph, Subgraph> node_sample_dual(const Graph& g, const RankTable& similar,
                                               const RankTable& diverse,
                                               std::span<const NodeId> seeds,
                                               const NodeSampleOptions& opt,
                                               const Rng& rng);

/// One walk of `steps` PMF-weighted transitions per seed. Walks stop early
/// at nodes without neighbors. The result is the union of walk edges.
Subgraph weighted_random_walk(const Graph& g, const RankTable& rt,
                              std::span<const NodeId> seeds, std::size_t steps,
                              const Rng& rng, std::size_t workers = 1);

}  // namespace ags::sampling
