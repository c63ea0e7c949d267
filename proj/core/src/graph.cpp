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

#include "ags/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ags {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        bool directed, bool weighted) {
  std::vector<Edge> all;
  all.reserve(directed ? edges.size() : 2 * edges.size());
  for (const Edge& e : edges) {
    AGS_CHECK(e.src < n && e.dst < n,
              "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                  ") out of range for n=" + std::to_string(n));
    AGS_CHECK(std::isfinite(e.weight) && e.weight >= 0.0,
              "edge weight must be finite and nonnegative");
    all.push_back(e);
    if (!directed && e.src != e.dst) all.push_back({e.dst, e.src, e.weight});
  }
  std::sort(all.begin(), all.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });

  std::vector<std::uint64_t> offsets(n + 1, 0);
  std::vector<NodeId> targets;
  std::vector<double> weights;
  targets.reserve(all.size());
  if (weighted) weights.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i > 0 && all[i].src == all[i - 1].src && all[i].dst == all[i - 1].dst) {
      if (weighted) weights.back() = std::max(weights.back(), all[i].weight);
      continue;
    }
    ++offsets[all[i].src + 1];
    targets.push_back(all[i].dst);
    if (weighted) weights.push_back(all[i].weight);
  }
  for (std::size_t u = 0; u < n; ++u) offsets[u + 1] += offsets[u];
  return from_csr(std::move(offsets), std::move(targets), std::move(weights),
                  directed);
}

Graph Graph::from_csr(std::vector<std::uint64_t> offsets,
                      std::vector<NodeId> targets, std::vector<double> weights,
                      bool directed) {
  Graph g;
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(targets);
  g.weights_ = std::move(weights);
  g.directed_ = directed;
  g.validate();
  return g;
}

void Graph::validate() const {
  AGS_CHECK(!offsets_.empty() && offsets_.front() == 0, "offsets[0] must be 0");
  AGS_CHECK(offsets_.back() == targets_.size(), "offsets[n] must equal m");
  AGS_CHECK(weights_.empty() || weights_.size() == targets_.size(),
            "weights length must equal m");
  const std::size_t n = num_nodes();
  for (std::size_t u = 0; u < n; ++u) {
    AGS_CHECK(offsets_[u] <= offsets_[u + 1], "offsets must be nondecreasing");
    for (std::uint64_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
      AGS_CHECK(targets_[i] < n, "target id out of range");
      AGS_CHECK(i == offsets_[u] || targets_[i - 1] < targets_[i],
                "row " + std::to_string(u) + " not strictly increasing");
    }
  }
  for (double w : weights_) {
    AGS_CHECK(std::isfinite(w) && w >= 0.0, "weights must be finite and >= 0");
  }
  if (!directed_) {
    for (std::size_t u = 0; u < n; ++u) {
      for (NodeId v : neighbors(static_cast<NodeId>(u))) {
        AGS_CHECK(has_edge(v, static_cast<NodeId>(u)),
                  "undirected graph missing reverse edge");
      }
    }
  }
}

std::optional<std::size_t> Graph::find_edge(NodeId u, NodeId v) const {
  if (u >= num_nodes()) return std::nullopt;
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v);
  if (it == row.end() || *it != v) return std::nullopt;
  return offsets_[u] + static_cast<std::size_t>(it - row.begin());
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  return find_edge(u, v).has_value();
}

std::size_t Graph::num_edges() const {
  if (directed_) return targets_.size();
  std::size_t loops = 0;
  for (std::size_t u = 0; u < num_nodes(); ++u) {
    if (has_edge(static_cast<NodeId>(u), static_cast<NodeId>(u))) ++loops;
  }
  return (targets_.size() - loops) / 2 + loops;
}

std::vector<Edge> Graph::entries() const {
  std::vector<Edge> out;
  out.reserve(targets_.size());
  for (std::size_t u = 0; u < num_nodes(); ++u) {
    for (std::uint64_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
      out.push_back({static_cast<NodeId>(u), targets_[i],
                     weights_.empty() ? 1.0 : weights_[i]});
    }
  }
  return out;
}

std::vector<Edge> Graph::unique_edges() const {
  std::vector<Edge> out;
  for (const Edge& e : entries()) {
    if (directed_ || e.src <= e.dst) out.push_back(e);
  }
  return out;
}

Graph Graph::to_undirected() const {
  if (!directed_) return *this;
  auto all = entries();
  return from_edges(num_nodes(), all, /*directed=*/false, weighted());
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t dim,
                             std::vector<double> data)
    : rows_(rows), dim_(dim), data_(std::move(data)) {
  AGS_CHECK(data_.size() == rows_ * dim_, "feature data size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error("ags: non-finite feature at row " +
                  std::to_string(i / std::max<std::size_t>(dim_, 1)));
    }
  }
}

LabelVector::LabelVector(std::vector<std::int32_t> labels)
    : labels_(std::move(labels)) {
  std::int32_t mx = -1;
  for (auto l : labels_) {
    AGS_CHECK(l >= 0, "labels must be nonnegative");
    mx = std::max(mx, l);
  }
  num_classes_ = mx + 1;
  AGS_CHECK(num_classes_ >= 1, "label vector is empty");
}

}  // namespace ags
