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

#include <cmath>
#include <numeric>

#include "ags/metrics.hpp"
#include "ags/similarity.hpp"
#include "support/metrics_oracle.hpp"
#include "support/test_util.hpp"

namespace ags::metrics {
namespace {

using testing::labels;
using testing::undirected;

Graph triangle() { return undirected(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph path4() { return undirected(4, {{0, 1}, {1, 2}, {2, 3}}); }

TEST(LocalHomophily, Triangle) {
  auto y = labels({0, 0, 1});
  EXPECT_DOUBLE_EQ(*local_node_homophily(triangle(), y, 0), 0.5);
  EXPECT_DOUBLE_EQ(*local_node_homophily(triangle(), y, 2), 0.0);
  Graph g = undirected(3, {{0, 1}});
  EXPECT_FALSE(local_node_homophily(g, y, 2).has_value());
}

TEST(NodeHomophily, TriangleAndSingleClass) {
  EXPECT_DOUBLE_EQ(node_homophily(triangle(), labels({0, 0, 1})), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(node_homophily(triangle(), labels({0, 0, 0})), 1.0);
  EXPECT_THROW(node_homophily(Graph::from_edges(2, {}, false), labels({0, 1})), Error);
}

TEST(EdgeHomophily, PathAndBipartite) {
  EXPECT_DOUBLE_EQ(edge_homophily(path4(), labels({0, 0, 1, 1})), 2.0 / 3.0);
  Graph k22 = undirected(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_DOUBLE_EQ(edge_homophily(k22, labels({0, 0, 1, 1})), 0.0);
  EXPECT_DOUBLE_EQ(edge_homophily(triangle(), labels({2, 2, 2})), 1.0);
  EXPECT_THROW(edge_homophily(Graph::from_edges(2, {}, false), labels({0, 1})), Error);
}

TEST(AdjustedHomophily, PathAnchor) {
  auto r = adjusted_homophily(path4(), labels({0, 0, 1, 1}));
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-15);
  EXPECT_FALSE(r.degenerate);
}

TEST(AdjustedHomophily, SingleClassIsDegenerate) {
  auto r = adjusted_homophily(triangle(), labels({0, 0, 0}));
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.value, 1.0);
}

TEST(AdjustedHomophily, CanFallBelowMinusOneThird) {
  // A single heterophilous edge: h_e = 0, expected = 1/2, so (0 - 1/2)/(1/2).
  auto r = adjusted_homophily(undirected(2, {{0, 1}}), labels({0, 1}));
  EXPECT_DOUBLE_EQ(r.value, -1.0);
  // Star with center A and leaves B: D_A = D_B = 5, h_e = 0.
  Graph star = undirected(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  EXPECT_DOUBLE_EQ(adjusted_homophily(star, labels({0, 1, 1, 1, 1, 1})).value, -1.0);
}

TEST(ClassInsensitive, Anchors) {
  // Two balanced classes, every edge inside a class: (1/1) * 2 * (1 - 1/2).
  Graph g = undirected(4, {{0, 1}, {2, 3}});
  EXPECT_DOUBLE_EQ(class_insensitive_homophily(g, labels({0, 0, 1, 1})), 1.0);
  Graph k22 = undirected(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_DOUBLE_EQ(class_insensitive_homophily(k22, labels({0, 0, 1, 1})), 0.0);
  EXPECT_THROW(class_insensitive_homophily(g, labels({0, 0, 0, 0})), Error);
}

TEST(ClassInsensitive, RandomLabelsNearZero) {
  Rng rng(21);
  Graph g = testing::random_graph(600, 0.02, rng);
  auto y = testing::random_labels(600, 4, rng);
  EXPECT_LT(std::abs(class_insensitive_homophily(g, y)), 0.05);
}

TEST(Entropy, Anchors) {
  // Star center sees half A, half B leaves: term 1. Leaves see one label: 0.
  Graph star = undirected(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_DOUBLE_EQ(entropy_score(star, labels({0, 0, 0, 1, 1})), 1.0 / 5.0);
  EXPECT_DOUBLE_EQ(entropy_score(triangle(), labels({0, 0, 0})), 0.0);
}

TEST(ChiSquare, TableAndApproximationAgreeWithReference) {
  for (std::size_t dof = 1; dof <= 30; ++dof) {
    EXPECT_NEAR(chi_square_critical_95(dof), testing::chi_square_quantile_95(dof), 1e-5)
        << "dof " << dof;
  }
  for (std::size_t dof : {31, 40, 60, 100, 250}) {
    const double ref = testing::chi_square_quantile_95(dof);
    EXPECT_NEAR(chi_square_critical_95(dof), ref, 2e-3 * ref) << "dof " << dof;
  }
}

TEST(Uniformity, Anchors) {
  // Node 0 sees two A and two B neighbors: statistic 0, passes.
  Graph star = undirected(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto r = uniformity_score(star, labels({0, 0, 0, 1, 1}));
  EXPECT_EQ(r.passing, 1u);
  EXPECT_EQ(r.low_degree, 4u);  // leaves have d = 1 < c

  // 100 neighbors of one label against c = 2: statistic 100 > 3.841.
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= 100; ++v) edges.push_back({0, v});
  Graph big = Graph::from_edges(102, edges, false);
  std::vector<std::int32_t> y(102, 0);
  y[101] = 1;
  auto fail = uniformity_score(big, LabelVector(y));
  EXPECT_EQ(fail.passing, 0u);
  EXPECT_EQ(fail.score, 0.0);
}

TEST(Assortativity, StarIsMinusOneAndRegularUndefined) {
  Graph star = undirected(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  EXPECT_NEAR(*degree_assortativity(star), -1.0, 1e-12);
  Graph cycle = undirected(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  EXPECT_FALSE(degree_assortativity(cycle).has_value());
}

TEST(FeatureLabelCorrelation, Anchors) {
  // Same-label endpoints share a one-hot feature; different labels are orthogonal.
  Graph g = undirected(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  auto y = labels({0, 0, 1, 1});
  auto x = testing::features(2, {1, 0, 1, 0, 0, 1, 0, 1});
  auto cos = [&](NodeId u, NodeId v) { return similarity::cosine(x.row(u), x.row(v)); };
  EXPECT_NEAR(feature_label_correlation(g, y, cos, Pairing::edges, 0, Rng(1)), 1.0, 1e-12);
  auto constant = [](NodeId, NodeId) { return 0.5; };
  EXPECT_THROW(feature_label_correlation(g, y, constant, Pairing::edges, 0, Rng(1)), Error);
}

TEST(FeatureLabelCorrelation, IndependentFeaturesNearZero) {
  Rng rng(8);
  Graph g = testing::random_graph(400, 0.02, rng);
  auto y = testing::random_labels(400, 3, rng);
  auto x = testing::random_features(400, 8, rng);
  auto cos = [&](NodeId u, NodeId v) { return similarity::cosine(x.row(u), x.row(v)); };
  const double r = feature_label_correlation(g, y, cos, Pairing::random_pairs, 10000, Rng(2));
  EXPECT_LT(std::abs(r), 0.05);
}

TEST(Report, TriangleAndHistogram) {
  auto rep = homophily_report(triangle(), labels({0, 0, 1}));
  EXPECT_DOUBLE_EQ(rep.h_node, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(rep.h_edge, 1.0 / 3.0);
  EXPECT_EQ(std::accumulate(rep.histogram.begin(), rep.histogram.end(), std::size_t{0}), 3u);

  Graph g = undirected(5, {{0, 1}, {1, 2}});
  auto r2 = homophily_report(g, labels({0, 0, 0, 0, 0}));
  EXPECT_EQ(r2.h_node, 1.0);
  EXPECT_EQ(r2.h_edge, 1.0);
  EXPECT_EQ(r2.h_adjusted, 1.0);
  EXPECT_EQ(r2.num_isolated, 2u);
  EXPECT_EQ(std::accumulate(r2.histogram.begin(), r2.histogram.end(), std::size_t{0}), 3u);
}

TEST(Properties, MatchOracleOnRandomGraphs) {
  Rng rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + rng.below(40);
    Graph g = testing::random_graph(n, 0.05 + 0.4 * rng.uniform(), rng, trial % 3 == 0);
    if (g.num_entries() == 0) continue;
    auto y = testing::random_labels(n, 2 + rng.below(4), rng);
    auto o = testing::oracle_metrics(g, y);
    EXPECT_NEAR(node_homophily(g, y), o.h_node, 1e-12);
    EXPECT_NEAR(edge_homophily(g, y), o.h_edge, 1e-12);
    EXPECT_NEAR(adjusted_homophily(g, y).value, o.h_adjusted, 1e-12);
    EXPECT_NEAR(class_insensitive_homophily(g, y), o.h_class_insensitive, 1e-12);
    EXPECT_NEAR(entropy_score(g, y), o.h_entropy, 1e-12);
    EXPECT_NEAR(uniformity_score(g, y).score, o.uniformity, 1e-12);
    auto a = degree_assortativity(g);
    ASSERT_EQ(a.has_value(), o.assortativity.has_value());
    if (a) { EXPECT_NEAR(*a, *o.assortativity, 1e-12); }
  }
}

TEST(Properties, InvariantUnderRelabelingNodes) {
  Rng rng(4);
  Graph g = testing::random_graph(30, 0.2, rng);
  auto y = testing::random_labels(30, 3, rng);
  std::vector<NodeId> perm(30);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  rng.shuffle(perm.begin(), perm.end());
  std::vector<Edge> edges;
  for (auto e : g.unique_edges()) edges.push_back({perm[e.src], perm[e.dst]});
  Graph pg = Graph::from_edges(30, edges, false);
  std::vector<std::int32_t> py(30);
  for (NodeId u = 0; u < 30; ++u) py[perm[u]] = y[u];
  LabelVector ly(py);
  EXPECT_NEAR(node_homophily(g, y), node_homophily(pg, ly), 1e-12);
  EXPECT_NEAR(edge_homophily(g, y), edge_homophily(pg, ly), 1e-12);
  EXPECT_NEAR(adjusted_homophily(g, y).value, adjusted_homophily(pg, ly).value, 1e-12);
  EXPECT_NEAR(entropy_score(g, y), entropy_score(pg, ly), 1e-12);
  EXPECT_NEAR(*degree_assortativity(g), *degree_assortativity(pg), 1e-12);
}

TEST(Properties, EdgeEqualsNodeOnUniformComposition) {
  // 4-cycle with alternating pairs: each node has one same, one different neighbor.
  Graph g = undirected(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto y = labels({0, 0, 1, 1});
  EXPECT_DOUBLE_EQ(edge_homophily(g, y), node_homophily(g, y));
}

}  // namespace
}  // namespace ags::metrics
