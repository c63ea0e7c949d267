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

#include "ags/subgraph.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace ags {

std::size_t Subgraph::num_seeds() const {
  return static_cast<std::size_t>(
      std::count(seed_mask.begin(), seed_mask.end(), std::uint8_t{1}));
}

std::size_t Subgraph::prefix_size(std::uint32_t d) const {
  return static_cast<std::size_t>(
      std::upper_bound(depth.begin(), depth.end(), d) - depth.begin());
}

std::optional<NodeId> Subgraph::local_id(NodeId global) const {
  auto it = std::find(parent_ids.begin(), parent_ids.end(), global);
  if (it == parent_ids.end()) return std::nullopt;
  return static_cast<NodeId>(it - parent_ids.begin());
}

std::vector<SampledEdge> Subgraph::parent_edges() const {
  std::vector<SampledEdge> out;
  out.reserve(num_edges());
  auto offs = local.offsets();
  auto tgt = local.targets();
  for (std::size_t u = 0; u < num_nodes(); ++u) {
    for (auto i = offs[u]; i < offs[u + 1]; ++i) {
      out.push_back({parent_ids[u], parent_ids[tgt[i]], edge_layer[i]});
    }
  }
  return out;
}

Subgraph build_subgraph(const Graph& g, std::span<const NodeId> seeds,
                        std::span<const SampledEdge> edges, bool directed) {
  const std::size_t n = g.num_nodes();
  Subgraph sg;
  std::unordered_map<NodeId, NodeId> local;
  auto add = [&](NodeId v, std::uint32_t d) -> NodeId {
    AGS_CHECK(v < n, "subgraph node " + std::to_string(v) + " out of range");
    auto [it, fresh] = local.emplace(v, static_cast<NodeId>(sg.parent_ids.size()));
    if (fresh) {
      sg.parent_ids.push_back(v);
      sg.depth.push_back(d);
      sg.seed_mask.push_back(0);
    }
    return it->second;
  };
  for (NodeId s : seeds) sg.seed_mask[add(s, 0)] = 1;

  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return edges[a].layer < edges[b].layer;
  });

  struct LocalEdge {
    NodeId src, dst;
    std::uint32_t layer;
  };
  std::vector<LocalEdge> le;
  le.reserve(directed ? edges.size() : 2 * edges.size());
  for (std::size_t i : order) {
    const SampledEdge& e = edges[i];
    AGS_CHECK(e.src < n && e.dst < n, "sampled edge endpoint out of range");
    AGS_CHECK(g.has_edge(e.src, e.dst),
              "sampled edge (" + std::to_string(e.src) + ", " +
                  std::to_string(e.dst) + ") not in parent graph");
    const NodeId ls = add(e.src, e.layer > 0 ? e.layer - 1 : 0);
    const NodeId ld = add(e.dst, e.layer);
    le.push_back({ls, ld, e.layer});
    if (!directed && ls != ld) le.push_back({ld, ls, e.layer});
  }
  std::sort(le.begin(), le.end(), [](const LocalEdge& a, const LocalEdge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });

  const std::size_t ln = sg.parent_ids.size();
  std::vector<std::uint64_t> offsets(ln + 1, 0);
  std::vector<NodeId> targets;
  std::vector<double> counts;
  for (std::size_t i = 0; i < le.size(); ++i) {
    if (i > 0 && le[i].src == le[i - 1].src && le[i].dst == le[i - 1].dst) {
      counts.back() += 1.0;
      sg.edge_layer.back() = std::min(sg.edge_layer.back(), le[i].layer);
      continue;
    }
    ++offsets[le[i].src + 1];
    targets.push_back(le[i].dst);
    counts.push_back(1.0);
    sg.edge_layer.push_back(le[i].layer);
  }
  for (std::size_t u = 0; u < ln; ++u) offsets[u + 1] += offsets[u];
  sg.local = Graph::from_csr(std::move(offsets), std::move(targets),
                             std::move(counts), directed);
  return sg;
}

}  // namespace ags
