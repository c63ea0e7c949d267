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

#include "ags/common.hpp"

namespace ags {

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double weight = 1.0;
};

/// Immutable CSR adjacency. Rows are sorted and deduplicated; an undirected
/// graph stores both directions of every edge (a self-loop is stored once).
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds a graph from an arbitrary edge list. Duplicate edges are merged
  /// keeping the largest weight. When `directed` is false the edge set is
  /// symmetrized. Weights are dropped unless `weighted` is set.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          bool directed, bool weighted = false);

  /// Adopts already-built CSR arrays after validating every invariant.
  static Graph from_csr(std::vector<std::uint64_t> offsets,
                        std::vector<NodeId> targets,
                        std::vector<double> weights, bool directed);

  std::size_t num_nodes() const noexcept { return offsets_.size() - 1; }
  std::size_t num_entries() const noexcept { return targets_.size(); }
  bool directed() const noexcept { return directed_; }
  bool weighted() const noexcept { return !weights_.empty(); }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], degree(u)};
  }
  std::span<const double> edge_weights(NodeId u) const {
    if (weights_.empty()) return {};
    return {weights_.data() + offsets_[u], degree(u)};
  }
  bool has_edge(NodeId u, NodeId v) const;
  /// CSR position of (u, v), if present.
  std::optional<std::size_t> find_edge(NodeId u, NodeId v) const;

  /// Number of undirected edges (each unordered pair once, self-loops once).
  /// For directed graphs this equals num_entries().
  std::size_t num_edges() const;

  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const NodeId> targets() const { return targets_; }
  std::span<const double> weights() const { return weights_; }

  /// Symmetrized copy; idempotent.
  Graph to_undirected() const;

  /// Every stored entry as an edge (both directions for undirected graphs).
  std::vector<Edge> entries() const;
  /// Undirected graphs: each unordered edge once with src <= dst.
  std::vector<Edge> unique_edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void validate() const;

  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  bool directed_ = false;
};

/// Dense row-major node features.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t dim, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Class labels in [0, c). c is one past the largest label.
class LabelVector {
 public:
  LabelVector() = default;
  explicit LabelVector(std::vector<std::int32_t> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::int32_t num_classes() const noexcept { return num_classes_; }
  std::int32_t operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::int32_t> values() const { return labels_; }

 private:
  std::vector<std::int32_t> labels_;
  std::int32_t num_classes_ = 0;
};

}  // namespace ags
