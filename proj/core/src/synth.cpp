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

#include "ags/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "ags/common.hpp"
#include "ags/parallel.hpp"

namespace ags::synth {

namespace {

std::size_t stochastic_round(double x, Rng& rng) {
  const double base = std::floor(x);
  return static_cast<std::size_t>(base) + (rng.uniform() < x - base ? 1 : 0);
}

/// k distinct indices from [0, pool) (Floyd), sorted. Falls back to k draws
/// with replacement, deduplicated, when k exceeds the pool.
std::vector<std::size_t> pick(std::size_t pool, std::size_t k, Rng& rng, bool& exhausted) {
  std::vector<std::size_t> out;
  if (k == 0 || pool == 0) return out;
  if (k > pool) {
    exhausted = true;
    for (std::size_t i = 0; i < k; ++i) out.push_back(rng.below(pool));
  } else {
    std::unordered_set<std::size_t> chosen;
    for (std::size_t j = pool - k; j < pool; ++j) {
      const std::size_t t = rng.below(j + 1);
      const std::size_t v = chosen.count(t) ? j : t;
      chosen.insert(v);
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Graph generate_mixed(const LabelVector& y, double lo, double hi, double degree,
                     const Rng& rng, SynthReport* report, std::size_t workers) {
  AGS_CHECK(0.0 <= lo && lo <= hi && hi <= 1.0, "need 0 <= lo <= hi <= 1");
  AGS_CHECK(std::isfinite(degree) && degree >= 2.0, "average degree must be >= 2");
  const std::size_t n = y.size();
  AGS_CHECK(n >= 2, "need at least two labeled nodes");
  const auto c = static_cast<std::size_t>(y.num_classes());

  std::vector<std::vector<NodeId>> members(c);
  for (NodeId u = 0; u < n; ++u) members[static_cast<std::size_t>(y[u])].push_back(u);
  std::vector<std::size_t> rank_in_class(n);
  for (const auto& m : members) {
    for (std::size_t i = 0; i < m.size(); ++i) rank_in_class[m[i]] = i;
  }

  struct NodeOut {
    std::vector<NodeId> partners;
    bool infeasible = false;
    bool exhausted = false;
    std::size_t same = 0, cross = 0;
  };
  std::vector<NodeOut> per(n);
  parallel_for(0, n, workers, [&](std::size_t i) {
    const auto u = static_cast<NodeId>(i);
    Rng r = rng.split(u);
    const double h = lo + (hi - lo) * r.uniform();
    const auto cls = static_cast<std::size_t>(y[u]);
    const auto& own = members[cls];
    NodeOut& o = per[i];
    o.same = stochastic_round(h * degree / 2.0, r);
    o.cross = stochastic_round((1.0 - h) * degree / 2.0, r);

    const std::size_t same_pool = own.size() - 1;
    if (o.same > 0 && same_pool == 0) o.infeasible = true;
    for (auto j : pick(same_pool, o.same, r, o.exhausted)) {
      o.partners.push_back(own[j < rank_in_class[u] ? j : j + 1]);
    }
    const std::size_t cross_pool = n - own.size();
    for (auto j : pick(cross_pool, o.cross, r, o.exhausted)) {
      // Map the j-th node outside u's class through the class blocks.
      for (std::size_t k = 0; k < c; ++k) {
        if (k == cls) continue;
        if (j < members[k].size()) {
          o.partners.push_back(members[k][j]);
          break;
        }
        j -= members[k].size();
      }
    }
  });

  SynthReport rep;
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    const auto& o = per[u];
    rep.infeasible_nodes += o.infeasible;
    rep.exhausted_pools += o.exhausted;
    rep.requested_same += o.same;
    rep.requested_cross += o.cross;
    for (auto v : o.partners) edges.push_back({u, v});
  }
  if (report) *report = rep;
  return Graph::from_edges(n, edges, /*directed=*/false);
}

Graph generate_synthetic(const LabelVector& y, double hn, double degree, const Rng& rng,
                         SynthReport* report, std::size_t workers) {
  return generate_mixed(y, hn, hn, degree, rng, report, workers);
}

FeatureMatrix noisy_onehot_features(const LabelVector& y, std::size_t dim, double signal,
                                    double noise, const Rng& rng) {
  AGS_CHECK(dim >= static_cast<std::size_t>(y.num_classes()),
            "feature width must be at least the class count");
  AGS_CHECK(std::isfinite(signal) && std::isfinite(noise) && noise >= 0.0,
            "signal and noise must be finite, noise >= 0");
  std::vector<double> data(y.size() * dim);
  for (std::size_t u = 0; u < y.size(); ++u) {
    Rng r = rng.split(u);
    for (std::size_t j = 0; j < dim; ++j) data[u * dim + j] = noise * r.normal();
    data[u * dim + static_cast<std::size_t>(y[u])] += signal;
  }
  return FeatureMatrix(y.size(), dim, std::move(data));
}

LabelVector random_labels(std::size_t n, std::span<const double> proportions,
                          const Rng& rng) {
  AGS_CHECK(!proportions.empty(), "need at least one class proportion");
  std::vector<double> cdf(proportions.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < proportions.size(); ++k) {
    AGS_CHECK(std::isfinite(proportions[k]) && proportions[k] >= 0.0,
              "class proportions must be finite and >= 0");
    cdf[k] = acc += proportions[k];
  }
  AGS_CHECK(acc > 0.0, "class proportions sum to zero");
  Rng r = rng;
  std::vector<std::int32_t> labels(n);
  for (auto& l : labels) {
    const double x = r.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    l = static_cast<std::int32_t>(
        std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1));
  }
  // Keep every class present so c matches the proportions given.
  for (std::size_t k = 0; k < proportions.size() && k < n; ++k) {
    if (std::find(labels.begin(), labels.end(), static_cast<std::int32_t>(k)) == labels.end()) {
      labels[k] = static_cast<std::int32_t>(k);
    }
  }
  return LabelVector(std::move(labels));
}

}  // namespace ags::synth
