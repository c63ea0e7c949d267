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
#include <filesystem>
#include <iosfwd>
#include <unordered_map>

#include "ags/graph.hpp"

namespace ags::io {

/// Maps sparse external node ids to dense 0-based ids.
using IdMap = std::unordered_map<std::uint64_t, NodeId>;

/// Edge list text: one "u v [w]" per line (TAB or space separated), '#'
/// comments, optional "# n=<N>" header fixing the node count.
Graph read_edge_list(std::istream& in, bool directed,
                     const IdMap* ids = nullptr);
Graph load_edge_list(const std::filesystem::path& path, bool directed,
                     const IdMap* ids = nullptr);
/// Writes "# n=<N>" followed by every unique edge (weights if present).
void save_edge_list(const Graph& g, const std::filesystem::path& path);

/// "external dense" pairs, one per line. Dense ids must be 0..k-1.
IdMap load_id_map(const std::filesystem::path& path);

FeatureMatrix read_features(std::istream& in);
FeatureMatrix load_features(const std::filesystem::path& path);
void save_features(const FeatureMatrix& x, const std::filesystem::path& path);

LabelVector read_labels(std::istream& in);
LabelVector load_labels(const std::filesystem::path& path);
void save_labels(const LabelVector& y, const std::filesystem::path& path);

/// Throws unless x (when given) and y agree with g's node count.
void check_attached(const Graph& g, const FeatureMatrix* x,
                    const LabelVector* y);

}  // namespace ags::io
