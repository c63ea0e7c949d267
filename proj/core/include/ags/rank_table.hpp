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
#include <span>
#include <string_view>
#include <vector>

#include "ags/graph.hpp"
#include "ags/pmf.hpp"

namespace ags {

enum class RankMode : std::uint8_t { similar = 0, diverse = 1, uniform = 2 };

RankMode parse_rank_mode(std::string_view name);
std::string_view to_string(RankMode mode);

/// Per-node neighbor ranking plus the sampling mass of every ranked entry.
/// Row u lists a permutation of N(u), best first; its masses sum to one.
struct RankTable {
  RankMode mode = RankMode::uniform;
  PmfSpec pmf;
  std::vector<std::uint64_t> offsets{0};
  std::vector<NodeId> ranked_ids;
  std::vector<double> probs;

  std::size_t num_nodes() const { return offsets.size() - 1; }
  std::size_t num_entries() const { return ranked_ids.size(); }
  std::size_t degree(NodeId u) const { return offsets[u + 1] - offsets[u]; }
  std::span<const NodeId> ids(NodeId u) const {
    return {ranked_ids.data() + offsets[u], degree(u)};
  }
  std::span<const double> masses(NodeId u) const {
    return {probs.data() + offsets[u], degree(u)};
  }

  /// Checks the structural invariants; when `g` is given also checks that
  /// every row is a permutation of the graph's neighborhood.
  void validate(const Graph* g = nullptr) const;

  /// Directed CSR graph whose rows are the ranked ids, sorted.
  Graph adjacency() const;

  friend bool operator==(const RankTable&, const RankTable&) = default;
};

/// Fixed bytes before the offsets array: magic, version, mode, pmf kind,
/// padding, seven f64 pmf parameters, n and m.
inline constexpr std::size_t kRankTableHeaderBytes = 84;
/// Trailing CRC32 of everything before it.
inline constexpr std::size_t kRankTableTrailerBytes = 4;
inline constexpr std::uint32_t kRankTableVersion = 1;

std::size_t rank_table_file_size(std::size_t n, std::size_t m);

void save_rank_table(const RankTable& rt, const std::filesystem::path& path);
RankTable load_rank_table(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_rank_table(const RankTable& rt);
RankTable decode_rank_table(std::span<const std::uint8_t> bytes);

}  // namespace ags
