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
#include <optional>
#include <span>
#include <vector>

#include "ags/graph.hpp"

namespace ags {

/// One edge chosen by a sampler, in parent (global) ids. `layer` is the
/// 1-based expansion step (hop or walk step) that produced it.
struct SampledEdge {
  NodeId src = 0;
  NodeId dst = 0;
  std::uint32_t layer = 1;

  friend bool operator==(const SampledEdge&, const SampledEdge&) = default;
};

/// A sampled computation structure over a parent graph.
///
/// Local ids are contiguous and ordered by depth: seeds first, then the
/// nodes first reached at step 1, and so on, so the nodes of depth <= j form
/// a prefix. `local` stores only the sampled edges; repeated draws of the
/// same edge are merged and counted in the edge weight.
struct Subgraph {
  std::vector<NodeId> parent_ids;
  Graph local;
  std::vector<std::uint8_t> seed_mask;
  std::vector<std::uint32_t> depth;
  std::vector<std::uint32_t> edge_layer;  // aligned with local CSR entries

  std::size_t num_nodes() const { return parent_ids.size(); }
  std::size_t num_edges() const { return local.num_entries(); }
  std::size_t num_seeds() const;
  /// Number of local nodes with depth <= d.
  std::size_t prefix_size(std::uint32_t d) const;
  std::optional<NodeId> local_id(NodeId global) const;
  /// Every stored edge mapped back to parent ids, in local CSR order.
  std::vector<SampledEdge> parent_edges() const;
};

/// Materializes the sampled structure. Every edge must exist in `g`; seeds
/// and edge endpoints must be valid node ids. With `directed` false each
/// edge is stored in both directions.
Subgraph build_subgraph(const Graph& g, std::span<const NodeId> seeds,
                        std::span<const SampledEdge> edges,
                        bool directed = true);

}  // namespace ags
