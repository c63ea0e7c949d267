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

#include "ags/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>

#include "ags/similarity.hpp"

namespace ags::metrics {
namespace {

void check_labels(const Graph& g, const LabelVector& y) {
  AGS_CHECK(y.size() == g.num_nodes(), "label count differs from node count");
}

// Neighbor-label histogram of u.
std::vector<std::size_t> label_counts(const Graph& g, const LabelVector& y,
                                      NodeId u) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(y.num_classes()), 0);
  for (NodeId v : g.neighbors(u)) ++counts[static_cast<std::size_t>(y[v])];
  return counts;
}

}  // namespace

std::optional<double> local_node_homophily(const Graph& g, const LabelVector& y,
                                           NodeId u) {
  check_labels(g, y);
  AGS_CHECK(u < g.num_nodes(), "node id out of range");
  const auto nb = g.neighbors(u);
  if (nb.empty()) return std::nullopt;
  std::size_t same = 0;
  for (NodeId v : nb) same += (y[v] == y[u]);
  return static_cast<double>(same) / static_cast<double>(nb.size());
}

double node_homophily(const Graph& g, const LabelVector& y) {
  check_labels(g, y);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    if (auto h = local_node_homophily(g, y, static_cast<NodeId>(u))) {
      sum += *h;
      ++count;
    }
  }
  AGS_CHECK(count > 0, "node homophily undefined: every node is isolated");
  return sum / static_cast<double>(count);
}

double edge_homophily(const Graph& g, const LabelVector& y) {
  check_labels(g, y);
  std::size_t same = 0, total = 0;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
      if (!g.directed() && v < u) continue;
      ++total;
      same += (y[v] == y[u]);
    }
  }
  AGS_CHECK(total > 0, "edge homophily undefined: empty edge set");
  return static_cast<double>(same) / static_cast<double>(total);
}

AdjustedHomophily adjusted_homophily(const Graph& g, const LabelVector& y) {
  check_labels(g, y);
  const std::size_t m = g.num_entries();
  AGS_CHECK(m > 0, "adjusted homophily undefined: empty edge set");
  // Entry-level h_e matches the unordered-edge value whenever the graph has
  // no self-loops, and keeps h_e and the degree sums on the same footing
  // when it does.
  std::size_t same = 0;
  std::vector<double> class_degree(static_cast<std::size_t>(y.num_classes()), 0.0);
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const auto node = static_cast<NodeId>(u);
    class_degree[static_cast<std::size_t>(y[node])] +=
        static_cast<double>(g.degree(node));
    for (NodeId v : g.neighbors(node)) same += (y[v] == y[node]);
  }
  const double he = static_cast<double>(same) / static_cast<double>(m);
  const double total = static_cast<double>(m);
  double expected = 0.0;
  for (double dk : class_degree) expected += (dk / total) * (dk / total);
  const double denom = 1.0 - expected;
  if (std::abs(denom) < 1e-12) return {he >= 1.0 ? 1.0 : 0.0, true};
  return {(he - expected) / denom, false};
}

double class_insensitive_homophily(const Graph& g, const LabelVector& y) {
  check_labels(g, y);
  const auto c = static_cast<std::size_t>(y.num_classes());
  AGS_CHECK(c >= 2, "class-insensitive homophily needs at least two classes");
  std::vector<double> same(c, 0.0), deg(c, 0.0), size(c, 0.0);
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const auto node = static_cast<NodeId>(u);
    const auto k = static_cast<std::size_t>(y[node]);
    size[k] += 1.0;
    deg[k] += static_cast<double>(g.degree(node));
    for (NodeId v : g.neighbors(node)) same[k] += (y[v] == y[node]);
  }
  const double n = static_cast<double>(g.num_nodes());
  double sum = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    const double hk = deg[k] > 0.0 ? same[k] / deg[k] : 0.0;
    sum += std::max(0.0, hk - size[k] / n);
  }
  return sum / static_cast<double>(c - 1);
}

double entropy_score(const Graph& g, const LabelVector& y) {
  check_labels(g, y);
  const auto c = static_cast<std::size_t>(y.num_classes());
  if (c <= 1 || g.num_nodes() == 0) return 0.0;
  const double norm = std::log(static_cast<double>(c));
  double sum = 0.0;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const auto node = static_cast<NodeId>(u);
    const double d = static_cast<double>(g.degree(node));
    if (d == 0.0) continue;
    double h = 0.0;
    for (std::size_t cnt : label_counts(g, y, node)) {
      if (cnt == 0) continue;
      const double p = static_cast<double>(cnt) / d;
      h -= p * std::log(p);
    }
    sum += h / norm;
  }
  return sum / static_cast<double>(g.num_nodes());
}

double chi_square_critical_95(std::size_t dof) {
  static constexpr std::array<double, 30> kTable = {
      3.841459,  5.991465,  7.814728,  9.487729,  11.070498, 12.591587,
      14.067140, 15.507313, 16.918978, 18.307038, 19.675138, 21.026070,
      22.362032, 23.684791, 24.995790, 26.296228, 27.587112, 28.869299,
      30.143527, 31.410433, 32.670573, 33.924438, 35.172462, 36.415029,
      37.652484, 38.885139, 40.113272, 41.337138, 42.556968, 43.772972};
  AGS_CHECK(dof >= 1, "chi-square needs at least one degree of freedom");
  if (dof <= kTable.size()) return kTable[dof - 1];
  // Wilson-Hilferty: chi2_p ~ k (1 - 2/(9k) + z_p sqrt(2/(9k)))^3.
  constexpr double z95 = 1.6448536269514722;
  const double k = static_cast<double>(dof);
  const double t = 1.0 - 2.0 / (9.0 * k) + z95 * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

UniformityResult uniformity_score(const Graph& g, const LabelVector& y) {
  check_labels(g, y);
  const auto c = static_cast<std::size_t>(y.num_classes());
  UniformityResult r;
  if (g.num_nodes() == 0) return r;
  AGS_CHECK(c >= 2, "uniformity score needs at least two classes");
  const double critical = chi_square_critical_95(c - 1);
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const auto node = static_cast<NodeId>(u);
    const std::size_t d = g.degree(node);
    if (d == 0) {
      ++r.isolated;
      continue;
    }
    if (d < c) {
      ++r.low_degree;
      continue;
    }
    const double expected = static_cast<double>(d) / static_cast<double>(c);
    double stat = 0.0;
    for (std::size_t cnt : label_counts(g, y, node)) {
      const double diff = static_cast<double>(cnt) - expected;
      stat += diff * diff / expected;
    }
    if (stat <= critical) ++r.passing;
  }
  r.score = static_cast<double>(r.passing) / static_cast<double>(g.num_nodes());
  return r;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  AGS_CHECK(a.size() == b.size(), "pearson inputs differ in length");
  AGS_CHECK(a.size() >= 2, "pearson needs at least two pairs");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  AGS_CHECK(saa > 0.0 && sbb > 0.0, "pearson undefined: zero variance");
  return sab / std::sqrt(saa * sbb);
}

std::optional<double> degree_assortativity(const Graph& g) {
  AGS_CHECK(g.num_entries() > 0, "assortativity undefined: empty edge set");
  std::vector<double> src, dst;
  src.reserve(g.num_entries());
  dst.reserve(g.num_entries());
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const auto node = static_cast<NodeId>(u);
    for (NodeId v : g.neighbors(node)) {
      src.push_back(static_cast<double>(g.degree(node)));
      dst.push_back(static_cast<double>(g.degree(v)));
    }
  }
  auto constant = [](const std::vector<double>& s) {
    return std::all_of(s.begin(), s.end(), [&](double x) { return x == s[0]; });
  };
  if (src.size() < 2 || constant(src) || constant(dst)) return std::nullopt;
  return pearson(src, dst);
}

double feature_label_correlation(const Graph& g, const LabelVector& y,
                                 const PairSimilarity& sim, Pairing pairing,
                                 std::size_t num_pairs, const Rng& rng) {
  check_labels(g, y);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  if (pairing == Pairing::edges || pairing == Pairing::balanced) {
    for (const Edge& e : g.unique_edges()) {
      if (e.src != e.dst) pairs.emplace_back(e.src, e.dst);
    }
  }
  const std::size_t n = g.num_nodes();
  if (pairing != Pairing::edges && n >= 2) {
    const std::size_t want =
        pairing == Pairing::balanced ? pairs.size() : num_pairs;
    Rng r = rng.split(0x70a1);
    std::size_t added = 0, attempts = 0;
    while (added < want && attempts < 50 * want + 100) {
      ++attempts;
      const auto u = static_cast<NodeId>(r.below(n));
      const auto v = static_cast<NodeId>(r.below(n));
      if (u == v) continue;
      if (pairing == Pairing::balanced && g.has_edge(u, v)) continue;
      pairs.emplace_back(u, v);
      ++added;
    }
  }
  std::vector<double> s, match;
  s.reserve(pairs.size());
  match.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    s.push_back(sim(u, v));
    match.push_back(y[u] == y[v] ? 1.0 : 0.0);
  }
  return pearson(s, match);
}

HomophilyReport homophily_report(const Graph& g, const LabelVector& y,
                                 const FeatureMatrix* x) {
  check_labels(g, y);
  HomophilyReport r;
  r.local.resize(g.num_nodes());
  r.histogram.assign(kHistogramBuckets, 0);
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    r.local[u] = local_node_homophily(g, y, static_cast<NodeId>(u));
    if (!r.local[u]) {
      ++r.num_isolated;
      continue;
    }
    auto b = static_cast<std::size_t>(*r.local[u] * kHistogramBuckets);
    r.histogram[std::min(b, kHistogramBuckets - 1)] += 1;
  }
  r.h_node = node_homophily(g, y);
  r.h_edge = edge_homophily(g, y);
  const auto adj = adjusted_homophily(g, y);
  r.h_adjusted = adj.value;
  r.h_adjusted_degenerate = adj.degenerate;
  if (y.num_classes() >= 2) {
    r.h_class_insensitive = class_insensitive_homophily(g, y);
    r.uniformity = uniformity_score(g, y);
  }
  r.h_entropy = entropy_score(g, y);
  r.assortativity = degree_assortativity(g);
  if (x) {
    AGS_CHECK(x->rows() == g.num_nodes(), "feature rows differ from node count");
    auto cosine = [x](NodeId u, NodeId v) {
      return similarity::cosine(x->row(u), x->row(v));
    };
    try {
      r.feature_label_r =
          feature_label_correlation(g, y, cosine, Pairing::edges, 0, Rng(0));
    } catch (const Error&) {
      r.feature_label_r.reset();  // zero variance or too few pairs
    }
  }
  return r;
}

}  // namespace ags::metrics
