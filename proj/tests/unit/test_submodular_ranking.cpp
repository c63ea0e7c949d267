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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ags/common.hpp"
#include "ags/pmf.hpp"
#include "ags/ranking.hpp"
#include "ags/similarity.hpp"
#include "ags/submodular.hpp"
#include "support/test_util.hpp"

namespace ags::submodular {
// Readable parameter values in test names.
inline void PrintTo(Kind k, std::ostream* os) { *os << to_string(k); }
}  // namespace ags::submodular

namespace ags {
namespace {

using nn::Matrix;
using submodular::Kind;
using submodular::Objective;

Matrix line_kernel() {
  Matrix p = Matrix::Zero(7, 2);
  const double xs[] = {0, 1, 2, 5, 7, 8, 9};
  for (int i = 0; i < 7; ++i) p(i, 0) = xs[i];
  return similarity::pairwise_kernel(
      p, similarity::make_similarity(similarity::SimKind::neg_euclidean));
}

// Plain greedy: rescans every remaining element each round.
submodular::GreedyResult naive_greedy(Objective& fn, std::span<const std::size_t> initial) {
  fn.reset();
  std::vector<bool> taken(fn.size(), false);
  for (auto i : initial) {
    fn.add(i);
    taken[i] = true;
  }
  submodular::GreedyResult r;
  while (r.order.size() + initial.size() < fn.size()) {
    std::size_t best = fn.size();
    double best_gain = 0;
    for (std::size_t v = 0; v < fn.size(); ++v) {
      if (taken[v]) continue;
      const double g = fn.gain(v);
      if (best == fn.size() || g > best_gain) {
        best = v;
        best_gain = g;
      }
    }
    taken[best] = true;
    fn.add(best);
    r.order.push_back(best);
    r.gains.push_back(best_gain);
  }
  return r;
}

Matrix random_kernel(std::size_t n, Rng& rng) {
  Matrix p(n, 3);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = rng.normal();
  return similarity::pairwise_kernel(
      p, similarity::make_similarity(rng.below(2) ? similarity::SimKind::cosine
                                                  : similarity::SimKind::neg_euclidean));
}

Matrix random_nonneg(std::size_t n, std::size_t f, Rng& rng, bool binary) {
  Matrix m(n, f);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    m.data()[i] = binary ? static_cast<double>(rng.below(2)) : rng.uniform() * 2;
  return m;
}

Matrix data_for(Kind k, std::size_t n, Rng& rng) {
  switch (k) {
    case Kind::facility_location:
    case Kind::graph_cut: return random_kernel(n, rng);
    case Kind::max_coverage: return random_nonneg(n, 5, rng, false) * 0.4;
    case Kind::feature_based: return random_nonneg(n, 4, rng, false);
  }
  return {};
}

TEST(Submodular, LineExampleFromEmptySet) {
  Objective fn(Kind::facility_location, line_kernel());
  auto r = submodular::lazy_greedy(fn);
  std::vector<std::size_t> one_based;
  for (auto v : r.order) one_based.push_back(v + 1);
  EXPECT_EQ(one_based, (std::vector<std::size_t>{4, 2, 6, 1, 3, 5, 7}));
  EXPECT_EQ(r.gains[0], 488.0);
  EXPECT_EQ(r.gains[1], 48.0);
}

TEST(Submodular, SingletonGroundSet) {
  Matrix k(1, 1);
  k << 3.0;
  Objective fn(Kind::facility_location, k);
  auto r = submodular::lazy_greedy(fn);
  ASSERT_EQ(r.order.size(), 1u);
  EXPECT_EQ(r.gains[0], 3.0);
}

TEST(Submodular, HandEvaluatedGains) {
  Matrix f(1, 2);
  f << 4, 9;
  EXPECT_DOUBLE_EQ(submodular::feature_based_gain(f, {}, 0), 5.0);
  Matrix k = line_kernel();
  EXPECT_DOUBLE_EQ(submodular::facility_location_gain(k, {}, 3), k.row(3).sum());

  Matrix docs(3, 3);
  docs << 1, 1, 1, 0, 1, 0, 1, 0, 1;
  std::vector<std::size_t> all{0};
  EXPECT_EQ(submodular::max_coverage_gain(docs, all, 1), 0.0);
  EXPECT_EQ(submodular::max_coverage_gain(docs, all, 2), 0.0);
  EXPECT_EQ(submodular::max_coverage_gain(docs, {}, 1), 1.0);
}

TEST(Submodular, RejectsBadData) {
  Matrix neg(2, 2);
  neg << 1, -1, 0, 1;
  EXPECT_THROW(Objective(Kind::max_coverage, neg), Error);
  Matrix asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  EXPECT_THROW(Objective(Kind::facility_location, asym), Error);
  EXPECT_THROW(Objective(Kind::facility_location, Matrix(0, 0)), Error);
}

TEST(Submodular, ParseKinds) {
  EXPECT_EQ(submodular::parse_kind("facility"), Kind::facility_location);
  EXPECT_EQ(submodular::parse_kind("coverage"), Kind::max_coverage);
  EXPECT_EQ(submodular::parse_kind("feature"), Kind::feature_based);
  EXPECT_EQ(submodular::parse_kind("graphcut"), Kind::graph_cut);
  EXPECT_THROW(submodular::parse_kind("entropy"), Error);
  EXPECT_FALSE(submodular::is_monotone(Kind::graph_cut));
}

class LazyVsNaive : public ::testing::TestWithParam<Kind> {};

TEST_P(LazyVsNaive, IdenticalOrderAndGains) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 100);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    Objective fn(GetParam(), data_for(GetParam(), n, rng), 1.0 + rng.uniform() * 2);
    std::vector<std::size_t> initial;
    if (n > 1 && rng.below(2)) initial.push_back(rng.below(n));
    auto lazy = submodular::lazy_greedy(fn, initial);
    auto naive = naive_greedy(fn, initial);
    ASSERT_EQ(lazy.order, naive.order) << "trial " << trial;
    ASSERT_EQ(lazy.gains, naive.gains) << "trial " << trial;
  }
}

TEST_P(LazyVsNaive, IncrementalStateMatchesDirectEvaluation) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 200);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(10);
    const double lambda = 1.5;
    Matrix data = data_for(GetParam(), n, rng);
    Objective fn(GetParam(), data, lambda);
    std::vector<std::size_t> set;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(perm.begin(), perm.end());
    for (auto v : perm) {
      const double before = submodular::evaluate(GetParam(), data, set, lambda);
      auto with = set;
      with.push_back(v);
      const double direct = submodular::evaluate(GetParam(), data, with, lambda) - before;
      EXPECT_NEAR(fn.gain(v), direct, 1e-9);
      fn.add(v);
      set = with;
      EXPECT_NEAR(fn.value(), submodular::evaluate(GetParam(), data, set, lambda), 1e-9);
    }
  }
}

TEST_P(LazyVsNaive, DiminishingReturnsForMonotoneKinds) {
  if (!submodular::is_monotone(GetParam())) GTEST_SKIP();
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 300);
  for (int trial = 0; trial < 100; ++trial) {
    Objective fn(GetParam(), data_for(GetParam(), 2 + rng.below(10), rng));
    auto r = submodular::lazy_greedy(fn);
    for (std::size_t i = 0; i < r.gains.size(); ++i) {
      EXPECT_GE(r.gains[i], 0.0);
      if (i > 0) { EXPECT_LE(r.gains[i], r.gains[i - 1]); }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, LazyVsNaive,
                         ::testing::Values(Kind::facility_location, Kind::max_coverage,
                                           Kind::feature_based, Kind::graph_cut),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Pmf, WorkedExamples) {
  PmfSpec step;
  auto m = pmf_from_ranks(10, step);
  for (int i = 0; i < 10; ++i) {
    const double expected = i < 2 ? 4.0 / 18 : i < 4 ? 2.0 / 18 : 1.0 / 18;
    EXPECT_NEAR(m[i], expected, 1e-15);
  }
  EXPECT_EQ(pmf_from_ranks(1, step), std::vector<double>{1.0});

  PmfSpec lin{.kind = PmfKind::linear, .floor = 0};
  auto l = pmf_from_ranks(3, lin);
  EXPECT_NEAR(l[0], 3.0 / 6, 1e-15);
  EXPECT_NEAR(l[1], 2.0 / 6, 1e-15);
  EXPECT_NEAR(l[2], 1.0 / 6, 1e-15);

  PmfSpec ex{.kind = PmfKind::exponential, .decay = 0.5, .floor = 0};
  auto e = pmf_from_ranks(3, ex);
  EXPECT_NEAR(e[0], 4.0 / 7, 1e-15);
  EXPECT_NEAR(e[1], 2.0 / 7, 1e-15);
  EXPECT_NEAR(e[2], 1.0 / 7, 1e-15);
}

TEST(Pmf, PositiveAndNormalized) {
  for (auto kind : {PmfKind::step, PmfKind::linear, PmfKind::exponential, PmfKind::uniform}) {
    PmfSpec spec{.kind = kind};
    for (std::size_t d = 1; d < 200; d += 7) {
      auto m = pmf_from_ranks(d, spec);
      EXPECT_NEAR(std::accumulate(m.begin(), m.end(), 0.0), 1.0, 1e-9);
      for (double p : m) EXPECT_GT(p, 0.0);
      for (std::size_t i = 1; i < d; ++i) EXPECT_LE(m[i], m[i - 1] + 1e-15);
    }
  }
}

TEST(Pmf, InvalidSpecs) {
  EXPECT_THROW(pmf_from_ranks(0, PmfSpec{}), Error);
  EXPECT_THROW(pmf_from_ranks(3, PmfSpec{.lambda1 = 1, .lambda2 = 2}), Error);
  EXPECT_THROW(pmf_from_ranks(3, PmfSpec{.kind = PmfKind::exponential, .decay = 1.5}), Error);
  EXPECT_THROW(pmf_from_ranks(3, PmfSpec{.kind = PmfKind::gain}), Error);
}

// Star with center 0 whose leaves carry the given 2-d features.
struct Star {
  Graph g;
  FeatureMatrix x;
};

Star star(std::vector<std::pair<double, double>> center_then_leaves) {
  std::vector<Edge> edges;
  std::vector<double> data;
  for (std::size_t i = 0; i < center_then_leaves.size(); ++i) {
    if (i > 0) edges.push_back({0, static_cast<NodeId>(i)});
    data.push_back(center_then_leaves[i].first);
    data.push_back(center_then_leaves[i].second);
  }
  const auto n = center_then_leaves.size();
  return {Graph::from_edges(n, edges, false), FeatureMatrix(n, 2, std::move(data))};
}

const auto kCosine = similarity::make_similarity(similarity::SimKind::cosine);

TEST(RankBySimilarity, OneHotNeighbors) {
  auto s = star({{1, 0}, {1, 0}, {0, 1}, {1, 0}});
  auto rt = ranking::rank_by_similarity(s.g, s.x, kCosine, PmfSpec{});
  rt.validate(&s.g);
  auto ids = rt.ids(0);
  EXPECT_EQ(std::vector<NodeId>(ids.begin(), ids.end()), (std::vector<NodeId>{1, 3, 2}));
  EXPECT_EQ(rt.mode, RankMode::similar);
}

TEST(RankBySimilarity, StepMassesOnDegreeTen) {
  std::vector<std::pair<double, double>> pts{{1, 0}};
  for (int i = 0; i < 10; ++i) pts.push_back({std::cos(0.1 * i), std::sin(0.1 * i)});
  auto s = star(pts);
  auto rt = ranking::rank_by_similarity(s.g, s.x, kCosine, PmfSpec{});
  auto ids = rt.ids(0);
  auto m = rt.masses(0);
  // Leaf i is at angle 0.1 (i - 1), so ids come out in order.
  for (int i = 0; i < 4; ++i) EXPECT_EQ(ids[i], static_cast<NodeId>(i + 1));
  EXPECT_NEAR(m[0], 4.0 / 18, 1e-15);
  EXPECT_NEAR(m[3], 2.0 / 18, 1e-15);
  EXPECT_NEAR(m[9], 1.0 / 18, 1e-15);
}

TEST(RankBySimilarity, UniformPmfAndTies) {
  auto s = star({{1, 0}, {0, 1}, {0, 1}, {0, 1}});
  auto rt = ranking::rank_by_similarity(s.g, s.x, kCosine, PmfSpec{.kind = PmfKind::uniform});
  auto ids = rt.ids(0);
  EXPECT_EQ(std::vector<NodeId>(ids.begin(), ids.end()), (std::vector<NodeId>{1, 2, 3}));
  for (double p : rt.masses(0)) EXPECT_DOUBLE_EQ(p, 1.0 / 3);
}

TEST(RankBySimilarity, ScaleInvariantUnderCosine) {
  Rng rng(31);
  Graph g = testing::random_graph(80, 0.15, rng);
  FeatureMatrix x = testing::random_features(80, 6, rng);
  std::vector<double> scaled(x.data().begin(), x.data().end());
  for (auto& v : scaled) v *= 3.5;
  FeatureMatrix xs(80, 6, scaled);
  auto a = ranking::rank_by_similarity(g, x, kCosine, PmfSpec{});
  auto b = ranking::rank_by_similarity(g, xs, kCosine, PmfSpec{});
  EXPECT_EQ(a.ranked_ids, b.ranked_ids);
}

TEST(RankBySimilarity, FullSortMatchesOracleAndPartialSortKeepsTopTiers) {
  Rng rng(32);
  Graph g = testing::random_graph(60, 0.4, rng);
  FeatureMatrix x = testing::random_features(60, 5, rng);
  auto full = ranking::rank_by_similarity(g, x, kCosine, PmfSpec{});
  auto part = ranking::rank_by_similarity(g, x, kCosine, PmfSpec{}, 1, true);
  full.validate(&g);
  part.validate(&g);
  EXPECT_EQ(full.probs, part.probs);
  for (NodeId u = 0; u < 60; ++u) {
    std::vector<NodeId> nb(g.neighbors(u).begin(), g.neighbors(u).end());
    std::stable_sort(nb.begin(), nb.end(), [&](NodeId a, NodeId b) {
      return kCosine(x.row(a), x.row(u)) > kCosine(x.row(b), x.row(u));
    });
    auto tiers = step_tiers(nb.size(), PmfSpec{});
    auto f = full.ids(u);
    auto p = part.ids(u);
    EXPECT_TRUE(std::ranges::equal(f, nb));
    for (std::size_t i = 0; i < tiers.top1 + tiers.top2; ++i) EXPECT_EQ(p[i], nb[i]);
  }
}

TEST(RankByDiversity, ClustersAlternateAtTheTop) {
  auto s = star({{1, 1}, {1, 0}, {0.98, 0.05}, {0.97, 0.02}, {0.02, 1}, {0.05, 0.97}, {0, 1}});
  for (auto sk : {similarity::SimKind::cosine, similarity::SimKind::neg_euclidean}) {
    auto sim = similarity::make_similarity(sk);
    auto rt = ranking::rank_by_diversity(s.g, s.x, sim, {}, PmfSpec{});
    rt.validate(&s.g);
    auto ids = rt.ids(0);
    EXPECT_NE(ids[0] <= 3, ids[1] <= 3) << similarity::to_string(sk);
    EXPECT_EQ(rt.mode, RankMode::diverse);
  }
}

TEST(RankByDiversity, IdenticalNeighborsUseIdOrder) {
  auto s = star({{1, 0}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
  auto rt = ranking::rank_by_diversity(s.g, s.x, kCosine, {}, PmfSpec{});
  auto ids = rt.ids(0);
  EXPECT_EQ(std::vector<NodeId>(ids.begin(), ids.end()), (std::vector<NodeId>{1, 2, 3}));
  auto r = ranking::diversity_order(s.g, s.x, kCosine, {}, 0);
  EXPECT_EQ(r.gains[1], r.gains[2]);
}

TEST(RankByDiversity, DegreeOneAndGainPmf) {
  auto s = star({{1, 0}, {0, 1}});
  auto rt = ranking::rank_by_diversity(s.g, s.x, kCosine, {}, PmfSpec{});
  EXPECT_EQ(rt.masses(0)[0], 1.0);
  EXPECT_EQ(rt.masses(1)[0], 1.0);

  Rng rng(33);
  Graph g = testing::random_graph(40, 0.3, rng);
  FeatureMatrix x = testing::random_features(40, 4, rng);
  auto gt = ranking::rank_by_diversity(g, x, kCosine, {}, PmfSpec{.kind = PmfKind::gain});
  gt.validate(&g);
  for (NodeId u = 0; u < 40; ++u) {
    auto m = gt.masses(u);
    for (std::size_t i = 1; i < m.size(); ++i) EXPECT_LE(m[i], m[i - 1] + 1e-12);
  }
}

TEST(RankByDiversity, AllFunctionKindsProduceValidTables) {
  Rng rng(34);
  Graph g = testing::random_graph(30, 0.3, rng);
  std::vector<double> data(30 * 4);
  for (auto& v : data) v = rng.uniform();
  FeatureMatrix x(30, 4, data);
  for (auto k : {Kind::facility_location, Kind::max_coverage, Kind::feature_based,
                 Kind::graph_cut}) {
    auto rt = ranking::rank_by_diversity(g, x, kCosine, {.fn = k}, PmfSpec{});
    rt.validate(&g);
  }
}

TEST(Ranking, WorkerCountDoesNotChangeOutput) {
  Rng rng(35);
  Graph g = testing::random_graph(120, 0.1, rng, true);
  FeatureMatrix x = testing::random_features(120, 5, rng);
  auto s1 = ranking::rank_by_similarity(g, x, kCosine, PmfSpec{}, 1);
  auto s4 = ranking::rank_by_similarity(g, x, kCosine, PmfSpec{}, 4);
  EXPECT_TRUE(s1 == s4);
  auto d1 = ranking::rank_by_diversity(g, x, kCosine, {}, PmfSpec{}, 1);
  auto d4 = ranking::rank_by_diversity(g, x, kCosine, {}, PmfSpec{}, 4);
  EXPECT_TRUE(d1 == d4);
  auto u = ranking::rank_uniform(g);
  u.validate(&g);
}

TEST(Ranking, RejectsMissingFeatures) {
  Graph g = testing::undirected(3, {{0, 1}});
  FeatureMatrix x = testing::features(2, {1, 0, 0, 1});
  EXPECT_THROW(ranking::rank_by_similarity(g, x, kCosine, PmfSpec{}), Error);
}

}  // namespace
}  // namespace ags
