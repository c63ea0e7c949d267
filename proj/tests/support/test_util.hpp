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

// Small graph builders and reference routines shared by the test binaries.

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ags/graph.hpp"
#include "ags/rng.hpp"

namespace ags::testing {

inline Graph undirected(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> e) {
  std::vector<Edge> edges;
  for (auto [u, v] : e) edges.push_back({u, v});
  return Graph::from_edges(n, edges, false);
}

inline LabelVector labels(std::initializer_list<std::int32_t> y) {
  return LabelVector(std::vector<std::int32_t>(y));
}

/// Erdos-Renyi style graph with optional self-loops.
inline Graph random_graph(std::size_t n, double p, Rng& rng, bool loops = false) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = loops ? u : u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, edges, false);
}

/// Uniform labels over c classes; class c - 1 is forced to appear.
inline LabelVector random_labels(std::size_t n, std::size_t c, Rng& rng) {
  std::vector<std::int32_t> y(n);
  for (auto& l : y) l = static_cast<std::int32_t>(rng.below(c));
  if (n > 0) y[rng.below(n)] = static_cast<std::int32_t>(c - 1);
  return LabelVector(std::move(y));
}

inline FeatureMatrix random_features(std::size_t n, std::size_t f, Rng& rng) {
  std::vector<double> data(n * f);
  for (auto& v : data) v = rng.normal();
  return FeatureMatrix(n, f, std::move(data));
}

inline FeatureMatrix features(std::size_t f, std::initializer_list<double> values) {
  std::vector<double> data(values);
  const std::size_t rows = data.size() / f;
  return FeatureMatrix(rows, f, std::move(data));
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("ags_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace ags::testing
