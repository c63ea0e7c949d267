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

#include "ags/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "ags/common.hpp"
#include "ags/parallel.hpp"

namespace ags::ranking {

namespace {

RankTable empty_table(const Graph& g, RankMode mode, const PmfSpec& pmf) {
  RankTable rt;
  rt.mode = mode;
  rt.pmf = pmf;
  rt.offsets.assign(g.offsets().begin(), g.offsets().end());
  rt.ranked_ids.resize(g.num_entries());
  rt.probs.resize(g.num_entries());
  return rt;
}

void check_features(const Graph& g, const FeatureMatrix& x) {
  AGS_CHECK(x.rows() == g.num_nodes(),
            "ranking needs one feature row per node (got " + std::to_string(x.rows()) +
                " rows for " + std::to_string(g.num_nodes()) + " nodes)");
}

void write_row(RankTable& rt, NodeId u, std::span<const NodeId> order,
               std::span<const double> masses) {
  std::copy(order.begin(), order.end(), rt.ranked_ids.begin() + rt.offsets[u]);
  std::copy(masses.begin(), masses.end(), rt.probs.begin() + rt.offsets[u]);
}

}  // namespace

RankTable rank_by_similarity(const Graph& g, const FeatureMatrix& x,
                             const similarity::SimilarityFn& sim, const PmfSpec& pmf,
                             std::size_t workers, bool partial_sort) {
  check_features(g, x);
  pmf.validate();
  AGS_CHECK(pmf.kind != PmfKind::gain, "gain pmf applies to diversity ranking only");
  RankTable rt = empty_table(g, RankMode::similar, pmf);
  parallel_for(0, g.num_nodes(), workers, [&](std::size_t i) {
    const auto u = static_cast<NodeId>(i);
    const auto nbrs = g.neighbors(u);
    const std::size_t d = nbrs.size();
    if (d == 0) return;
    std::vector<std::pair<double, NodeId>> scored(d);
    for (std::size_t j = 0; j < d; ++j) scored[j] = {sim(x.row(nbrs[j]), x.row(u)), nbrs[j]};
    auto better = [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    };
    std::size_t head = d;
    if (partial_sort && pmf.kind == PmfKind::step) {
      const auto t = step_tiers(d, pmf);
      head = t.top1 + t.top2;
    } else if (partial_sort && pmf.kind == PmfKind::uniform) {
      head = 0;
    }
    if (head >= d) {
      std::sort(scored.begin(), scored.end(), better);
    } else if (head > 0) {
      std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(head),
                        scored.end(), better);
    }
    std::vector<NodeId> order(d);
    for (std::size_t j = 0; j < d; ++j) order[j] = scored[j].second;
    write_row(rt, u, order, pmf_from_ranks(d, pmf));
  });
  return rt;
}

submodular::GreedyResult diversity_order(const Graph& g, const FeatureMatrix& x,
                                         const similarity::SimilarityFn& sim,
                                         const DiversityOptions& opt, NodeId u) {
  const auto nbrs = g.neighbors(u);
  // Element 0 is the ego; a self-loop neighbor is a separate element.
  std::vector<NodeId> rows;
  rows.reserve(nbrs.size() + 1);
  rows.push_back(u);
  rows.insert(rows.end(), nbrs.begin(), nbrs.end());

  nn::Matrix data;
  if (opt.fn == submodular::Kind::facility_location ||
      opt.fn == submodular::Kind::graph_cut) {
    data = similarity::pairwise_kernel(x, rows, sim);
  } else {
    data.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(x.dim()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto r = x.row(rows[i]);
      for (std::size_t j = 0; j < r.size(); ++j) {
        data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[j];
      }
    }
  }
  submodular::Objective fn(opt.fn, std::move(data), opt.lambda);
  const std::size_t initial[] = {0};
  return submodular::lazy_greedy(fn, initial);
}

RankTable rank_by_diversity(const Graph& g, const FeatureMatrix& x,
                            const similarity::SimilarityFn& sim,
                            const DiversityOptions& opt, const PmfSpec& pmf,
                            std::size_t workers) {
  check_features(g, x);
  pmf.validate();
  RankTable rt = empty_table(g, RankMode::diverse, pmf);
  parallel_for(0, g.num_nodes(), workers, [&](std::size_t i) {
    const auto u = static_cast<NodeId>(i);
    const auto nbrs = g.neighbors(u);
    const std::size_t d = nbrs.size();
    if (d == 0) return;
    const auto res = diversity_order(g, x, sim, opt, u);
    std::vector<NodeId> order(d);
    for (std::size_t j = 0; j < d; ++j) order[j] = nbrs[res.order[j] - 1];
    std::vector<double> masses;
    if (pmf.kind == PmfKind::gain) {
      std::vector<double> scores(d);
      for (std::size_t j = 0; j < d; ++j) scores[j] = std::max(0.0, res.gains[j]);
      masses = pmf_from_ranks(d, pmf, scores);
    } else {
      masses = pmf_from_ranks(d, pmf);
    }
    write_row(rt, u, order, masses);
  });
  return rt;
}

RankTable rank_uniform(const Graph& g) {
  PmfSpec pmf;
  pmf.kind = PmfKind::uniform;
  RankTable rt = empty_table(g, RankMode::uniform, pmf);
  std::copy(g.targets().begin(), g.targets().end(), rt.ranked_ids.begin());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto d = g.degree(u);
    std::fill_n(rt.probs.begin() + static_cast<std::ptrdiff_t>(rt.offsets[u]), d,
                1.0 / static_cast<double>(d));
  }
  return rt;
}

}  // namespace ags::ranking
