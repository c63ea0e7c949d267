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

#include "ags/lemmas.hpp"

#include <algorithm>

#include "ags/common.hpp"
#include "ags/parallel.hpp"

namespace ags::synth {

namespace {

// Slack for the implication checks, which compare two rounded quotients.
constexpr double kImplicationTol = 1e-12;

}  // namespace

LemmaReport verify_lemmas(const Graph& g, const FeatureMatrix& x, const LabelVector& y,
                          const similarity::SimilarityFn& sim, std::size_t workers) {
  const std::size_t n = g.num_nodes();
  AGS_CHECK(x.rows() == n && y.size() == n, "features/labels do not match graph");

  std::vector<std::optional<LemmaNode>> per(n);
  parallel_for(0, n, workers, [&](std::size_t i) {
    const auto t = static_cast<NodeId>(i);
    const auto nbrs = g.neighbors(t);
    if (nbrs.empty()) return;
    std::vector<NodeId> rows{t};
    rows.insert(rows.end(), nbrs.begin(), nbrs.end());
    const nn::Matrix k = similarity::pairwise_kernel(x, rows, sim);
    const auto m = static_cast<Eigen::Index>(rows.size());

    double s_same = 0, s_diff = 0, g_same = 0, g_diff = 0;
    std::size_t n_same = 0, n_diff = 0;
    for (Eigen::Index a = 1; a < m; ++a) {
      const double s = k(0, a);
      double gain = 0.0;
      for (Eigen::Index b = 0; b < m; ++b) gain += std::max(0.0, k(a, b) - k(0, b));
      if (y[rows[a]] == y[t]) {
        ++n_same;
        s_same += s;
        g_same += gain;
      } else {
        ++n_diff;
        s_diff += s;
        g_diff += gain;
      }
    }
    LemmaNode node;
    node.node = t;
    node.p_uniform = static_cast<double>(n_same) / static_cast<double>(n_same + n_diff);
    if (s_same + s_diff > 0.0) node.p_similar = s_same / (s_same + s_diff);
    if (g_same + g_diff > 0.0) node.p_diverse = g_same / (g_same + g_diff);
    // Cross-multiplied mean comparisons; vacuous when one side is empty.
    node.assumption1 = s_same * static_cast<double>(n_diff) >=
                       s_diff * static_cast<double>(n_same);
    node.assumption2 = g_same * static_cast<double>(n_diff) <=
                       g_diff * static_cast<double>(n_same);
    per[i] = node;
  });

  LemmaReport rep;
  double su = 0, ss = 0, sd = 0;
  std::size_t cs = 0, cd = 0;
  for (auto& p : per) {
    if (!p) {
      ++rep.isolated;
      continue;
    }
    const LemmaNode& v = *p;
    su += v.p_uniform;
    rep.assumption1_violations += !v.assumption1;
    rep.assumption2_violations += !v.assumption2;
    if (v.p_similar) {
      ss += *v.p_similar;
      ++cs;
      rep.similar_ge_uniform += *v.p_similar >= v.p_uniform;
      rep.lemma1_failures += v.assumption1 && *v.p_similar < v.p_uniform - kImplicationTol;
    } else {
      ++rep.zero_similarity;
    }
    if (v.p_diverse) {
      sd += *v.p_diverse;
      ++cd;
      rep.diverse_le_uniform += *v.p_diverse <= v.p_uniform;
      rep.lemma2_failures += v.assumption2 && *v.p_diverse > v.p_uniform + kImplicationTol;
    } else {
      ++rep.zero_gain;
    }
    rep.nodes.push_back(v);
  }
  AGS_CHECK(!rep.nodes.empty(), "every node is isolated");
  rep.mean_p_uniform = su / static_cast<double>(rep.nodes.size());
  rep.mean_p_similar = cs ? ss / static_cast<double>(cs) : 0.0;
  rep.mean_p_diverse = cd ? sd / static_cast<double>(cd) : 0.0;
  return rep;
}

}  // namespace ags::synth
