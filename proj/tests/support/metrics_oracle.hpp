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

// Reference homophily metrics computed from a dense adjacency matrix with
// direct loops. Shares no code with ags::metrics.

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <optional>
#include <vector>

#include "ags/graph.hpp"

namespace ags::testing {

struct OracleMetrics {
  double h_node = 0, h_edge = 0, h_adjusted = 0, h_class_insensitive = 0;
  double h_entropy = 0, uniformity = 0;
  std::optional<double> assortativity;
  bool has_edges = false;
  bool has_non_isolated = false;
};

inline double chi_square_quantile_95(std::size_t dof) {
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::quantile(boost::math::complement(dist, 0.05));
}

inline OracleMetrics oracle_metrics(const Graph& g, const LabelVector& y) {
  const std::size_t n = g.num_nodes();
  const std::size_t c = static_cast<std::size_t>(y.num_classes());
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (const auto& e : g.unique_edges()) {
    a[e.src][e.dst] = 1;
    a[e.dst][e.src] = 1;
  }
  std::vector<double> deg(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) deg[u] += a[u][v];
  }

  OracleMetrics r;
  // Node homophily: mean over non-isolated nodes of the same-label share.
  double hn_sum = 0;
  std::size_t hn_count = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (deg[u] == 0) continue;
    double same = 0;
    for (std::size_t v = 0; v < n; ++v) same += a[u][v] * (y[u] == y[v]);
    hn_sum += same / deg[u];
    ++hn_count;
  }
  r.has_non_isolated = hn_count > 0;
  if (hn_count) r.h_node = hn_sum / static_cast<double>(hn_count);

  // Edge homophily over unordered pairs u <= v.
  double edges = 0, same_edges = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u; v < n; ++v) {
      if (!a[u][v]) continue;
      edges += 1;
      same_edges += (y[u] == y[v]);
    }
  }
  r.has_edges = edges > 0;
  if (edges > 0) r.h_edge = same_edges / edges;

  // Adjusted homophily over ordered adjacency entries.
  double total = 0, same_entries = 0;
  std::vector<double> dk(c, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      total += a[u][v];
      same_entries += a[u][v] * (y[u] == y[v]);
    }
    dk[static_cast<std::size_t>(y[u])] += deg[u];
  }
  if (total > 0) {
    const double he = same_entries / total;
    double s = 0;
    for (double d : dk) s += (d * d) / (total * total);
    r.h_adjusted = std::abs(1 - s) < 1e-12 ? (he >= 1.0 ? 1.0 : 0.0) : (he - s) / (1 - s);
  }

  // Class-insensitive homophily.
  if (c >= 2) {
    double sum = 0;
    for (std::size_t k = 0; k < c; ++k) {
      double within = 0, outgoing = 0, size = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (static_cast<std::size_t>(y[u]) != k) continue;
        size += 1;
        for (std::size_t v = 0; v < n; ++v) {
          outgoing += a[u][v];
          within += a[u][v] * (static_cast<std::size_t>(y[v]) == k);
        }
      }
      const double hk = outgoing > 0 ? within / outgoing : 0.0;
      sum += std::max(0.0, hk - size / static_cast<double>(n));
    }
    r.h_class_insensitive = sum / static_cast<double>(c - 1);
  }

  // Entropy and uniformity from neighbor-label counts.
  double ent = 0;
  std::size_t pass = 0;
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<double> cnt(c, 0.0);
    for (std::size_t v = 0; v < n; ++v) cnt[static_cast<std::size_t>(y[v])] += a[u][v];
    if (deg[u] == 0) continue;
    if (c >= 2) {
      double h = 0;
      for (double k : cnt) {
        if (k > 0) h -= (k / deg[u]) * std::log(k / deg[u]);
      }
      ent += h / std::log(static_cast<double>(c));
      if (deg[u] >= static_cast<double>(c)) {
        double stat = 0;
        const double e = deg[u] / static_cast<double>(c);
        for (double k : cnt) stat += (k - e) * (k - e) / e;
        pass += stat <= chi_square_quantile_95(c - 1);
      }
    }
  }
  if (n) {
    r.h_entropy = ent / static_cast<double>(n);
    r.uniformity = static_cast<double>(pass) / static_cast<double>(n);
  }

  // Assortativity via the joint endpoint-degree distribution e_ij.
  if (total > 0) {
    std::size_t dmax = 0;
    for (double d : deg) dmax = std::max(dmax, static_cast<std::size_t>(d));
    std::vector<std::vector<double>> e(dmax + 1, std::vector<double>(dmax + 1, 0.0));
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (a[u][v]) e[static_cast<std::size_t>(deg[u])][static_cast<std::size_t>(deg[v])] += 1.0 / total;
      }
    }
    std::vector<double> pa(dmax + 1, 0.0), pb(dmax + 1, 0.0);
    for (std::size_t i = 0; i <= dmax; ++i) {
      for (std::size_t j = 0; j <= dmax; ++j) {
        pa[i] += e[i][j];
        pb[j] += e[i][j];
      }
    }
    double ma = 0, mb = 0, va = 0, vb = 0, cov = 0;
    for (std::size_t i = 0; i <= dmax; ++i) {
      ma += double(i) * pa[i];
      mb += double(i) * pb[i];
    }
    for (std::size_t i = 0; i <= dmax; ++i) {
      va += (double(i) - ma) * (double(i) - ma) * pa[i];
      vb += (double(i) - mb) * (double(i) - mb) * pb[i];
      for (std::size_t j = 0; j <= dmax; ++j) cov += double(i) * double(j) * e[i][j];
    }
    cov -= ma * mb;
    if (va > 1e-15 && vb > 1e-15) r.assortativity = cov / std::sqrt(va * vb);
  }
  return r;
}

}  // namespace ags::testing
