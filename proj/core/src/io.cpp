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

#include "ags/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

namespace ags::io {
namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("ags: cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("ags: cannot write " + path.string());
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_int(std::string_view s, T& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  // from_chars for double is available in libstdc++ 11.
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

Graph read_edge_list(std::istream& in, bool directed, const IdMap* ids) {
  std::vector<Edge> edges;
  std::optional<std::uint64_t> declared_n;
  bool weighted = false;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      s.remove_prefix(1);
      s = trim(s);
      if (s.substr(0, 2) == "n=") {
        std::uint64_t n = 0;
        if (!parse_int(trim(s.substr(2)), n)) {
          throw ParseError("ags: malformed node-count header", lineno);
        }
        declared_n = n;
      }
      continue;
    }
    auto tok = split_ws(s);
    if (tok.size() != 2 && tok.size() != 3) {
      throw ParseError("ags: expected 'u v [w]'", lineno);
    }
    std::uint64_t u = 0, v = 0;
    if (!parse_int(tok[0], u) || !parse_int(tok[1], v)) {
      throw ParseError("ags: malformed node id", lineno);
    }
    if (ids) {
      auto iu = ids->find(u), iv = ids->find(v);
      if (iu == ids->end() || iv == ids->end()) {
        throw ParseError("ags: node id missing from id map", lineno);
      }
      u = iu->second;
      v = iv->second;
    }
    double w = 1.0;
    if (tok.size() == 3) {
      if (!parse_double(tok[2], w) || !std::isfinite(w)) {
        throw ParseError("ags: malformed edge weight", lineno);
      }
      if (w < 0.0) throw ParseError("ags: negative edge weight", lineno);
      weighted = true;
    }
    if (declared_n && (u >= *declared_n || v >= *declared_n)) {
      throw ParseError("ags: node id exceeds declared n=" +
                           std::to_string(*declared_n),
                       lineno);
    }
    if (u > std::numeric_limits<NodeId>::max() - 1 ||
        v > std::numeric_limits<NodeId>::max() - 1) {
      throw ParseError("ags: node id too large", lineno);
    }
    max_id = std::max({max_id, u, v});
    any = true;
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }
  std::size_t n = declared_n ? *declared_n : (any ? max_id + 1 : 0);
  if (ids && !declared_n) n = std::max(n, ids->size());
  return Graph::from_edges(n, edges, directed, weighted);
}

Graph load_edge_list(const std::filesystem::path& path, bool directed,
                     const IdMap* ids) {
  auto in = open_in(path);
  return read_edge_list(in, directed, ids);
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "# n=" << g.num_nodes() << '\n';
  out << std::setprecision(17);
  for (const Edge& e : g.unique_edges()) {
    out << e.src << '\t' << e.dst;
    if (g.weighted()) out << '\t' << e.weight;
    out << '\n';
  }
}

IdMap load_id_map(const std::filesystem::path& path) {
  auto in = open_in(path);
  IdMap map;
  std::vector<bool> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    auto tok = split_ws(s);
    std::uint64_t ext = 0, dense = 0;
    if (tok.size() != 2 || !parse_int(tok[0], ext) ||
        !parse_int(tok[1], dense)) {
      throw ParseError("ags: expected 'external dense'", lineno);
    }
    if (!map.emplace(ext, static_cast<NodeId>(dense)).second) {
      throw ParseError("ags: duplicate external id", lineno);
    }
    if (dense >= seen.size()) seen.resize(dense + 1, false);
    seen[dense] = true;
  }
  for (bool b : seen) {
    if (!b) throw Error("ags: id map dense ids are not contiguous");
  }
  return map;
}

FeatureMatrix read_features(std::istream& in) {
  std::vector<double> data;
  std::size_t rows = 0, dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty()) continue;
    std::size_t cols = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = s.find(',', start);
      std::string_view cell = trim(s.substr(start, comma - start));
      double v = 0.0;
      if (!parse_double(cell, v)) {
        throw ParseError("ags: malformed feature value", lineno);
      }
      if (!std::isfinite(v)) {
        throw ParseError("ags: non-finite feature value", lineno);
      }
      data.push_back(v);
      ++cols;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      dim = cols;
    } else if (cols != dim) {
      throw ParseError("ags: feature row length " + std::to_string(cols) +
                           " != " + std::to_string(dim),
                       lineno);
    }
    ++rows;
  }
  if (rows == 0) throw Error("ags: feature file has no rows");
  return FeatureMatrix(rows, dim, std::move(data));
}

FeatureMatrix load_features(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_features(in);
}

void save_features(const FeatureMatrix& x, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << std::setprecision(17);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto r = x.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out << ',';
      out << r[j];
    }
    out << '\n';
  }
}

LabelVector read_labels(std::istream& in) {
  std::vector<std::int32_t> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty()) continue;
    std::int32_t v = 0;
    if (!parse_int(s, v)) throw ParseError("ags: malformed label", lineno);
    if (v < 0) throw ParseError("ags: label out of range", lineno);
    labels.push_back(v);
  }
  if (labels.empty()) throw Error("ags: label file has no rows");
  return LabelVector(std::move(labels));
}

LabelVector load_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_labels(in);
}

void save_labels(const LabelVector& y, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (auto l : y.values()) out << l << '\n';
}

void check_attached(const Graph& g, const FeatureMatrix* x,
                    const LabelVector* y) {
  if (x && x->rows() != g.num_nodes()) {
    throw Error("ags: feature rows (" + std::to_string(x->rows()) +
                ") != graph nodes (" + std::to_string(g.num_nodes()) + ")");
  }
  if (y && y->size() != g.num_nodes()) {
    throw Error("ags: label count (" + std::to_string(y->size()) +
                ") != graph nodes (" + std::to_string(g.num_nodes()) + ")");
  }
}

}  // namespace ags::io
