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

#include "ags/sampling.hpp"

#include <algorithm>
#include <string>

#include "ags/common.hpp"
#include "ags/parallel.hpp"

namespace ags::sampling {

namespace {

void check_table(const Graph& g, const RankTable& rt) {
  AGS_CHECK(rt.num_nodes() == g.num_nodes(),
            "rank table has " + std::to_string(rt.num_nodes()) + " rows, graph has " +
                std::to_string(g.num_nodes()) + " nodes");
}

void check_seeds(const Graph& g, std::span<const NodeId> seeds) {
  AGS_CHECK(!seeds.empty(), "empty seed set");
  for (auto s : seeds) AGS_CHECK(s < g.num_nodes(), "seed out of range");
}

}  // namespace

std::vector<NodeId> sample_neighbors(const RankTable& rt, NodeId u, std::size_t k,
                                     bool replace, Rng& rng, bool exclude_self) {
  AGS_CHECK(u < rt.num_nodes(), "node out of range");
  auto ids = rt.ids(u);
  auto mass = rt.masses(u);
  std::vector<NodeId> out;
  if (ids.empty() || k == 0) return out;

  std::vector<std::size_t> pos;
  pos.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!(exclude_self && ids[i] == u)) pos.push_back(i);
  }
  if (pos.empty()) return out;

  if (replace) {
    std::vector<double> cdf(pos.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) cdf[i] = acc += mass[pos[i]];
    out.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
      const double r = rng.uniform() * acc;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
      const auto j = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                                           pos.size() - 1);
      out.push_back(ids[pos[j]]);
    }
    return out;
  }

  // Smallest E_i / p_i keys give a PMF-weighted draw without replacement.
  std::vector<std::pair<double, std::size_t>> keys(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    keys[i] = {rng.exponential() / mass[pos[i]], pos[i]};
  }
  const std::size_t take = std::min(k, keys.size());
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(take),
                    keys.end());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(ids[keys[i].second]);
  return out;
}

Subgraph node_sample_khop(const Graph& g, const RankTable& rt,
                          std::span<const NodeId> seeds, const NodeSampleOptions& opt,
                          const Rng& rng) {
  check_table(g, rt);
  check_seeds(g, seeds);
  std::vector<std::uint8_t> seen(g.num_nodes(), 0);
  std::vector<NodeId> frontier;
  for (auto s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      frontier.push_back(s);
    }
  }
  std::vector<SampledEdge> edges;
  for (std::size_t layer = 1; layer <= opt.fanouts.size() && !frontier.empty(); ++layer) {
    const std::size_t k = opt.fanouts[layer - 1];
    std::vector<std::vector<NodeId>> drawn(frontier.size());
    parallel_for(0, frontier.size(), opt.workers, [&](std::size_t i) {
      Rng r = rng.split(layer, frontier[i]);
      drawn[i] = sample_neighbors(rt, frontier[i], k, opt.replace, r, opt.exclude_self);
    });
    std::vector<NodeId> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto v : drawn[i]) {
        edges.push_back({frontier[i], v, static_cast<std::uint32_t>(layer)});
        if (!seen[v]) {
          seen[v] = 1;
          next.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  return build_subgraph(g, seeds, edges);
}

std::pair<Subgraph, Subgraph> node_sample_dual(const Graph& g, const RankTable& similar,
                                               const RankTable& diverse,
                                               std::span<const NodeId> seeds,
                                               const NodeSampleOptions& opt,
                                               const Rng& rng) {
  return {node_sample_khop(g, similar, seeds, opt, rng.split(1)),
          node_sample_khop(g, diverse, seeds, opt, rng.split(2))};
}

Subgraph weighted_random_walk(const Graph& g, const RankTable& rt,
                              std::span<const NodeId> seeds, std::size_t steps,
                              const Rng& rng, std::size_t workers) {
  check_table(g, rt);
  check_seeds(g, seeds);
  std::vector<std::vector<SampledEdge>> walks(seeds.size());
  parallel_for(0, seeds.size(), workers, [&](std::size_t i) {
    Rng r = rng.split(i);
    NodeId cur = seeds[i];
    for (std::size_t t = 1; t <= steps; ++t) {
      auto next = sample_neighbors(rt, cur, 1, true, r);
      if (next.empty()) break;
      walks[i].push_back({cur, next[0], static_cast<std::uint32_t>(t)});
      cur = next[0];
    }
  });
  std::vector<SampledEdge> edges;
  for (auto& w : walks) edges.insert(edges.end(), w.begin(), w.end());
  return build_subgraph(g, seeds, edges);
}

}  // namespace ags::sampling
