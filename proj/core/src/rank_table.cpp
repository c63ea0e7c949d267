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

#include "ags/rank_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "binio.hpp"

namespace ags {

RankMode parse_rank_mode(std::string_view name) {
  if (name == "similar") return RankMode::similar;
  if (name == "diverse") return RankMode::diverse;
  if (name == "uniform") return RankMode::uniform;
  throw Error("ags: unknown rank mode '" + std::string(name) + "'");
}

std::string_view to_string(RankMode mode) {
  switch (mode) {
    case RankMode::similar: return "similar";
    case RankMode::diverse: return "diverse";
    case RankMode::uniform: return "uniform";
  }
  return "?";
}

void RankTable::validate(const Graph* g) const {
  AGS_CHECK(!offsets.empty() && offsets.front() == 0, "rank table offsets[0] != 0");
  AGS_CHECK(offsets.back() == ranked_ids.size() && probs.size() == ranked_ids.size(),
            "rank table array lengths disagree");
  const std::size_t n = num_nodes();
  if (g) {
    AGS_CHECK(g->num_nodes() == n, "rank table node count differs from graph");
  }
  std::vector<NodeId> scratch;
  for (std::size_t u = 0; u < n; ++u) {
    AGS_CHECK(offsets[u] <= offsets[u + 1], "rank table offsets decrease");
    const auto node = static_cast<NodeId>(u);
    double total = 0.0;
    for (double p : masses(node)) {
      AGS_CHECK(std::isfinite(p) && p > 0.0, "rank table mass must be positive");
      total += p;
    }
    if (degree(node) > 0) {
      AGS_CHECK(std::abs(total - 1.0) <= 1e-9,
                "rank table row " + std::to_string(u) + " does not sum to 1");
    }
    scratch.assign(ids(node).begin(), ids(node).end());
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t i = 0; i < scratch.size(); ++i) {
      AGS_CHECK(scratch[i] < n, "rank table id out of range");
      AGS_CHECK(i == 0 || scratch[i - 1] < scratch[i], "rank table row repeats an id");
    }
    if (g) {
      auto nb = g->neighbors(node);
      AGS_CHECK(std::equal(scratch.begin(), scratch.end(), nb.begin(), nb.end()),
                "rank table row " + std::to_string(u) + " is not a permutation of N(u)");
    }
  }
}

Graph RankTable::adjacency() const {
  std::vector<NodeId> targets(ranked_ids);
  for (std::size_t u = 0; u < num_nodes(); ++u) {
    std::sort(targets.begin() + offsets[u], targets.begin() + offsets[u + 1]);
  }
  return Graph::from_csr(offsets, std::move(targets), {}, /*directed=*/true);
}

std::size_t rank_table_file_size(std::size_t n, std::size_t m) {
  return kRankTableHeaderBytes + (n + 1) * 8 + m * (8 + 8) +
         kRankTableTrailerBytes;
}

std::vector<std::uint8_t> encode_rank_table(const RankTable& rt) {
  binio::Writer w;
  w.bytes("AGSR", 4);
  w.u32(kRankTableVersion);
  w.u8(static_cast<std::uint8_t>(rt.mode));
  w.u8(static_cast<std::uint8_t>(rt.pmf.kind));
  w.u8(0);
  w.u8(0);
  for (double p : {rt.pmf.k1, rt.pmf.k2, rt.pmf.lambda1, rt.pmf.lambda2,
                   rt.pmf.lambda3, rt.pmf.decay, rt.pmf.floor}) {
    w.f64(p);
  }
  w.u64(rt.num_nodes());
  w.u64(rt.num_entries());
  for (auto o : rt.offsets) w.u64(o);
  for (auto id : rt.ranked_ids) w.u64(id);
  for (double p : rt.probs) w.f64(p);
  w.crc();
  return std::move(w.buffer());
}

RankTable decode_rank_table(std::span<const std::uint8_t> bytes) {
  binio::Reader head(bytes);
  head.expect_magic("AGSR", 4);
  if (const auto v = head.u32(); v != kRankTableVersion) {
    throw FormatError("ags: rank table version " + std::to_string(v) +
                      " unsupported (expected " +
                      std::to_string(kRankTableVersion) + ")");
  }
  RankTable rt;
  const auto mode = head.u8();
  const auto kind = head.u8();
  if (mode > 2 || kind > 4) throw FormatError("ags: bad rank table enum");
  rt.mode = static_cast<RankMode>(mode);
  rt.pmf.kind = static_cast<PmfKind>(kind);
  head.u8();
  head.u8();
  rt.pmf.k1 = head.f64();
  rt.pmf.k2 = head.f64();
  rt.pmf.lambda1 = head.f64();
  rt.pmf.lambda2 = head.f64();
  rt.pmf.lambda3 = head.f64();
  rt.pmf.decay = head.f64();
  rt.pmf.floor = head.f64();
  const std::uint64_t n = head.u64();
  const std::uint64_t m = head.u64();
  if (n > (bytes.size() / 8) || m > (bytes.size() / 16) ||
      bytes.size() < rank_table_file_size(n, m)) {
    throw FormatError("ags: truncated file");
  }
  if (bytes.size() != rank_table_file_size(n, m)) {
    throw FormatError("ags: rank table size does not match header");
  }
  binio::check_crc(bytes);
  binio::Reader r(bytes.subspan(kRankTableHeaderBytes));
  rt.offsets.resize(n + 1);
  for (auto& o : rt.offsets) o = r.u64();
  rt.ranked_ids.resize(m);
  for (auto& id : rt.ranked_ids) {
    const auto v = r.u64();
    if (v >= n) throw FormatError("ags: rank table id out of range");
    id = static_cast<NodeId>(v);
  }
  rt.probs.resize(m);
  for (auto& p : rt.probs) p = r.f64();
  try {
    rt.validate();
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
  return rt;
}

void save_rank_table(const RankTable& rt, const std::filesystem::path& path) {
  binio::write_file(path, encode_rank_table(rt));
}

RankTable load_rank_table(const std::filesystem::path& path) {
  return decode_rank_table(binio::read_file(path));
}

}  // namespace ags
