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

#include <numeric>

#include "ags/common.hpp"
#include "ags/lemmas.hpp"
#include "ags/metrics.hpp"
#include "ags/ranking.hpp"
#include "ags/sampling.hpp"
#include "ags/similarity.hpp"
#include "ags/synth.hpp"
#include "support/test_util.hpp"

namespace ags::synth {
namespace {

LabelVector balanced_labels(std::size_t n, std::size_t c) {
  std::vector<std::int32_t> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<std::int32_t>(i % c);
  return LabelVector(std::move(y));
}

class TargetHomophily : public ::testing::TestWithParam<double> {};

TEST_P(TargetHomophily, AchievedNodeHomophilyNearTarget) {
  const double h = GetParam();
  auto y = balanced_labels(1500, 5);
  SynthReport rep;
  Graph g = generate_synthetic(y, h, 20, Rng(61), &rep);
  EXPECT_FALSE(g.directed());
  EXPECT_EQ(rep.infeasible_nodes, 0u);
  EXPECT_NEAR(metrics::node_homophily(g, y), h, 0.02);
}

INSTANTIATE_TEST_SUITE_P(Targets, TargetHomophily, ::testing::Values(0.05, 0.3, 0.6, 0.9));

TEST(Generator, FixedRangeEqualsSynthetic) {
  auto y = balanced_labels(300, 3);
  Graph a = generate_synthetic(y, 0.4, 10, Rng(62));
  Graph b = generate_mixed(y, 0.4, 0.4, 10, Rng(62));
  EXPECT_EQ(a.unique_edges().size(), b.unique_edges().size());
  EXPECT_TRUE(std::ranges::equal(a.targets(), b.targets()));
}

TEST(Generator, DeterministicAcrossWorkers) {
  auto y = balanced_labels(400, 4);
  Graph a = generate_mixed(y, 0.1, 0.8, 12, Rng(63), nullptr, 1);
  Graph b = generate_mixed(y, 0.1, 0.8, 12, Rng(63), nullptr, 4);
  EXPECT_TRUE(std::ranges::equal(a.offsets(), b.offsets()));
  EXPECT_TRUE(std::ranges::equal(a.targets(), b.targets()));
}

double local_spread(const metrics::HomophilyReport& rep) {
  double sum = 0, sq = 0, n = 0;
  for (const auto& h : rep.local) {
    if (!h) continue;
    sum += *h;
    sq += *h * *h;
    ++n;
  }
  return sq / n - (sum / n) * (sum / n);
}

TEST(Generator, MixedRangeSpreadsLocalHomophily) {
  auto y = balanced_labels(2000, 4);
  auto mixed = metrics::homophily_report(generate_mixed(y, 0.0, 1.0, 30, Rng(64)), y);
  auto fixed = metrics::homophily_report(generate_synthetic(y, 0.5, 30, Rng(64)), y);
  EXPECT_NEAR(mixed.h_node, 0.5, 0.05);
  EXPECT_GT(local_spread(mixed), 2 * local_spread(fixed));
}

TEST(Generator, SingletonClassIsReported) {
  auto y = testing::labels({0, 0, 0, 0, 1});
  SynthReport rep;
  Graph g = generate_synthetic(y, 1.0, 4, Rng(65), &rep);
  EXPECT_EQ(rep.infeasible_nodes, 1u);
  for (auto v : g.neighbors(4)) EXPECT_NE(y[v], 1);
}

TEST(Generator, RejectsBadArguments) {
  auto y = balanced_labels(10, 2);
  EXPECT_THROW(generate_mixed(y, 0.6, 0.4, 4, Rng(1)), Error);
  EXPECT_THROW(generate_synthetic(y, 1.5, 4, Rng(1)), Error);
  EXPECT_THROW(generate_synthetic(y, 0.5, -1, Rng(1)), Error);
}

TEST(Features, OneHotPlusNoise) {
  auto y = balanced_labels(3000, 3);
  FeatureMatrix x = noisy_onehot_features(y, 6, 2.0, 0.5, Rng(66));
  EXPECT_EQ(x.dim(), 6u);
  double on = 0, off = 0;
  for (std::size_t i = 0; i < 3000; ++i) {
    on += x.row(i)[static_cast<std::size_t>(y[i])];
    off += x.row(i)[5];
  }
  EXPECT_NEAR(on / 3000, 2.0, 0.05);
  EXPECT_NEAR(off / 3000, 0.0, 0.05);
  EXPECT_THROW(noisy_onehot_features(y, 2, 1.0, 0.1, Rng(1)), Error);
}

TEST(Labels, ProportionsAndCoverage) {
  std::vector<double> p{0.7, 0.2, 0.1};
  auto y = random_labels(10000, p, Rng(67));
  std::vector<double> freq(3, 0.0);
  for (auto l : y.values()) freq[static_cast<std::size_t>(l)] += 1e-4;
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(freq[k], p[k], 0.02);
  std::vector<double> tiny{0.999, 0.0005, 0.0005};
  EXPECT_EQ(random_labels(20, tiny, Rng(68)).num_classes(), 3);
}

TEST(Lemmas, ImplicationsHoldOnEveryNode) {
  Rng rng(69);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = testing::random_graph(60, 0.1, rng, trial % 2 == 0);
    auto y = testing::random_labels(60, 3, rng);
    FeatureMatrix x = testing::random_features(60, 4, rng);
    for (auto kind : {similarity::SimKind::cosine, similarity::SimKind::neg_euclidean}) {
      auto rep = verify_lemmas(g, x, y, similarity::make_similarity(kind));
      EXPECT_EQ(rep.lemma1_failures, 0u);
      EXPECT_EQ(rep.lemma2_failures, 0u);
      for (const auto& node : rep.nodes) {
        if (node.assumption1 && node.p_similar) { EXPECT_GE(*node.p_similar, node.p_uniform); }
        if (node.assumption2 && node.p_diverse) { EXPECT_LE(*node.p_diverse, node.p_uniform); }
      }
    }
  }
}

TEST(Lemmas, HandComputedNode) {
  // Center 0 (label 0, feature (1,0)); leaves 1 (label 0, (1,0)) and 2 (label 1, (0,1)).
  Graph g = testing::undirected(3, {{0, 1}, {0, 2}});
  auto y = testing::labels({0, 0, 1});
  auto x = testing::features(2, {1, 0, 1, 0, 0, 1});
  auto rep = verify_lemmas(g, x, y, similarity::make_similarity(similarity::SimKind::cosine));
  const auto& c = rep.nodes[0];
  ASSERT_EQ(c.node, 0u);
  EXPECT_DOUBLE_EQ(c.p_uniform, 0.5);
  // Kernel row of the center: s_1 = 1, s_2 = 1/2.
  EXPECT_DOUBLE_EQ(*c.p_similar, 1.0 / 1.5);
  // Gains given {0}: leaf 1 duplicates the center (gain 0), leaf 2 gains 1/2.
  EXPECT_DOUBLE_EQ(*c.p_diverse, 0.0);
}

TEST(Lemmas, LabelCorrelatedFeaturesOrderTheMeans) {
  auto y = balanced_labels(800, 4);
  Graph g = generate_mixed(y, 0.1, 0.9, 16, Rng(70));
  FeatureMatrix x = noisy_onehot_features(y, 8, 1.0, 0.5, Rng(71));
  auto rep = verify_lemmas(g, x, y, similarity::make_similarity(similarity::SimKind::cosine), 2);
  EXPECT_GT(rep.mean_p_similar, rep.mean_p_uniform);
  EXPECT_GT(rep.mean_p_uniform, rep.mean_p_diverse);
  EXPECT_EQ(rep.lemma1_failures + rep.lemma2_failures, 0u);
}

TEST(Lemmas, AllIsolatedThrows) {
  Graph g = Graph::from_edges(3, {}, false);
  auto y = testing::labels({0, 1, 0});
  auto x = testing::features(1, {1, 2, 3});
  EXPECT_THROW(verify_lemmas(g, x, y, similarity::make_similarity(similarity::SimKind::cosine)),
               Error);
}

// Mean same-label share of the first-hop draws around each seed.
double sampled_homophily(const Subgraph& sg, const LabelVector& y) {
  double sum = 0;
  std::size_t count = 0;
  for (NodeId u = 0; u < sg.num_nodes(); ++u) {
    if (!sg.seed_mask[u] || sg.local.degree(u) == 0) continue;
    double same = 0;
    for (auto v : sg.local.neighbors(u))
      same += y[sg.parent_ids[v]] == y[sg.parent_ids[u]];
    sum += same / static_cast<double>(sg.local.degree(u));
    ++count;
  }
  return sum / static_cast<double>(count);
}

TEST(DualChannel, SimilarChannelIsMoreHomophilous) {
  auto y = balanced_labels(1000, 4);
  Graph g = generate_mixed(y, 0.05, 0.5, 20, Rng(72));
  FeatureMatrix x = noisy_onehot_features(y, 8, 1.0, 0.6, Rng(73));
  auto sim = similarity::make_similarity(similarity::SimKind::cosine);
  RankTable rs = ranking::rank_by_similarity(g, x, sim, PmfSpec{});
  RankTable rd = ranking::rank_by_diversity(g, x, sim, {}, PmfSpec{});
  std::vector<NodeId> seeds(200);
  std::iota(seeds.begin(), seeds.end(), NodeId{0});
  sampling::NodeSampleOptions opt{.fanouts = {5}};
  auto [s, d] = sampling::node_sample_dual(g, rs, rd, seeds, opt, Rng(74));
  EXPECT_GT(sampled_homophily(s, y), sampled_homophily(d, y));
}

}  // namespace
}  // namespace ags::synth
