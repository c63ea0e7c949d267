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

#include "ags/disjoint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ags/common.hpp"

namespace ags::sampling {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace

std::vector<WeightedEdge> edge_weights_from_table(const Graph& g, const RankTable& rt) {
  AGS_CHECK(!g.directed(), "edge weights need an undirected graph");
  AGS_CHECK(rt.num_nodes() == g.num_nodes(), "rank table does not match graph");
  std::vector<WeightedEdge> out;
  for (const auto& e : g.unique_edges()) {
    auto mass_of = [&](NodeId a, NodeId b) {
      const auto ids = rt.ids(a);
      const auto m = rt.masses(a);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] == b) return m[i];
      }
      throw Error("ags: rank table row " + std::to_string(a) + " lacks neighbor " +
                  std::to_string(b));
    };
    out.push_back({e.src, e.dst, 0.5 * (mass_of(e.src, e.dst) + mass_of(e.dst, e.src))});
  }
  return out;
}

DisjointCollection disjoint_decompose(std::size_t num_nodes,
                                      std::vector<WeightedEdge> edges, std::size_t K) {
  AGS_CHECK(K >= 1, "need K >= 1 forests");
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    AGS_CHECK(e.v < num_nodes, "edge endpoint out of range");
    AGS_CHECK(std::isfinite(e.w) && e.w >= 0.0, "edge weights must be finite and >= 0");
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.w != b.w) return a.w > b.w;
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  DisjointCollection col;
  col.num_nodes = num_nodes;
  std::vector<WeightedEdge> remaining = std::move(edges);
  for (std::size_t left = K; left > 0; --left) {
    if (std::none_of(remaining.begin(), remaining.end(),
                     [](const WeightedEdge& e) { return e.u != e.v; })) {
      col.exhausted = true;
      break;
    }
    UnionFind uf(num_nodes);
    DisjointPart forest;
    std::vector<WeightedEdge> rest;
    for (const auto& e : remaining) {
      if (uf.unite(e.u, e.v)) {
        forest.edges.push_back(e);
        forest.weight += e.w;
      } else {
        rest.push_back(e);
      }
    }
    forest.weight = std::max(forest.weight, static_cast<double>(left) * 1e-3);
    col.parts.push_back(std::move(forest));
    remaining = std::move(rest);
  }
  col.parts.push_back({std::move(remaining), 0.0});
  return col;
}

Subgraph disjoint_subgraph_sample(const Graph& g, const DisjointCollection& col,
                                  std::size_t k, double residual_frac, Rng& rng) {
  AGS_CHECK(col.num_nodes == g.num_nodes(), "collection does not match graph");
  AGS_CHECK(k <= col.num_forests(), "asked for " + std::to_string(k) + " of " +
                                        std::to_string(col.num_forests()) + " forests");
  AGS_CHECK(std::isfinite(residual_frac) && residual_frac >= 0.0 && residual_frac <= 1.0,
            "residual fraction must be in [0, 1]");

  // Exponential keys: the k smallest E_i / w_i form a weighted draw.
  std::vector<std::pair<double, std::size_t>> keys;
  for (std::size_t i = 0; i < col.num_forests(); ++i) {
    keys.push_back({rng.exponential() / col.parts[i].weight, i});
  }
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(k), keys.end());

  std::vector<SampledEdge> edges;
  for (std::size_t j = 0; j < k; ++j) {
    for (const auto& e : col.parts[keys[j].second].edges) edges.push_back({e.u, e.v, 0});
  }
  const auto& res = col.residual().edges;
  const auto take = static_cast<std::size_t>(
      std::llround(residual_frac * static_cast<double>(res.size())));
  if (take > 0) {
    std::vector<std::size_t> idx(res.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < take; ++i) {
      std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
      edges.push_back({res[idx[i]].u, res[idx[i]].v, 0});
    }
  }
  return build_subgraph(g, {}, edges, /*directed=*/false);
}

}  // namespace ags::sampling
