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
#include <numeric>
#include <set>

#include "ags/common.hpp"
#include "ags/ranking.hpp"
#include "ags/sage.hpp"
#include "ags/sampling.hpp"
#include "ags/similarity.hpp"
#include "ags/synth.hpp"
#include "support/gradcheck.hpp"
#include "support/test_util.hpp"

namespace ags::sage {
namespace {

struct Fixture {
  Graph g;
  FeatureMatrix x;
  LabelVector y;
  RankTable rt;
};

Fixture small_fixture(std::uint64_t seed) {
  Rng rng(seed);
  Fixture f{testing::random_graph(40, 0.12, rng), testing::random_features(40, 5, rng),
            testing::random_labels(40, 3, rng), {}};
  f.rt = ranking::rank_uniform(f.g);
  return f;
}

Subgraph sample(const Fixture& f, std::span<const NodeId> seeds, std::size_t layers,
                std::uint64_t seed) {
  sampling::NodeSampleOptions opt;
  opt.fanouts.assign(layers, 3);
  return sampling::node_sample_khop(f.g, f.rt, seeds, opt, Rng(seed));
}

std::vector<std::int32_t> seed_labels(const Fixture& f, std::span<const NodeId> seeds) {
  std::vector<std::int32_t> out;
  for (auto s : seeds) out.push_back(f.y[s]);
  return out;
}

struct Shape {
  std::size_t layers, channels;
  Combiner combiner;
};

void PrintTo(const Shape& s, std::ostream* os) {
  *os << "L" << s.layers << "_C" << s.channels << "_" << to_string(s.combiner);
}

class SageGradient : public ::testing::TestWithParam<Shape> {};

TEST_P(SageGradient, MatchesFiniteDifferences) {
  const auto [layers, channels, combiner] = GetParam();
  Fixture f = small_fixture(81 + layers * 10 + channels);
  std::vector<NodeId> seeds{0, 5, 9, 14, 22, 31};
  Batch b;
  for (std::size_t c = 0; c < channels; ++c) b.channels.push_back(sample(f, seeds, layers, 7 + c));
  Rng rng(3);
  SageModel m = SageModel::init(5, 6, 3, layers, channels, combiner, rng);
  // Nonzero biases keep ReLU inputs away from the kink.
  for (auto p : m.parameters())
    for (auto& v : p) v += 0.05 * rng.normal();
  auto labels = seed_labels(f, seeds);
  auto g = loss_and_grad(m, f.x, b, labels);
  auto analytic = testing::copy_views(g.views());
  auto loss = [&] { return nn::softmax_cross_entropy(forward(m, f.x, b), labels).value; };
  EXPECT_NEAR(g.loss, loss(), 1e-14);
  ASSERT_EQ(analytic.size(), m.parameters().size());
  std::string report;
  EXPECT_EQ(testing::check_gradients(loss, m.parameters(), analytic, {}, &report), 0u)
      << report;
}

INSTANTIATE_TEST_SUITE_P(Shapes, SageGradient,
                         ::testing::Values(Shape{1, 1, Combiner::concat},
                                           Shape{2, 1, Combiner::concat},
                                           Shape{2, 2, Combiner::concat},
                                           Shape{2, 2, Combiner::skip},
                                           Shape{3, 2, Combiner::skip}));

TEST(Aggregation, RowsAreNormalizedByMultiplicity) {
  Graph g = testing::undirected(4, {{0, 1}, {0, 2}, {0, 3}});
  std::vector<NodeId> seeds{0};
  std::vector<SampledEdge> edges{{0, 1, 1}, {0, 1, 1}, {0, 2, 1}};
  Subgraph sg = build_subgraph(g, seeds, edges);
  auto a = aggregation_matrix(sg, 0);
  ASSERT_EQ(a.rows(), 1);
  EXPECT_EQ(a.cols(), 3);
  Matrix d = Matrix(a);
  EXPECT_DOUBLE_EQ(d(0, *sg.local_id(1)), 2.0 / 3);
  EXPECT_DOUBLE_EQ(d(0, *sg.local_id(2)), 1.0 / 3);
}

TEST(Forward, InvariantUnderNodeRelabeling) {
  Fixture f = small_fixture(90);
  std::vector<NodeId> perm(40);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  Rng(91).shuffle(perm.begin(), perm.end());
  std::vector<Edge> edges;
  for (auto e : f.g.unique_edges()) edges.push_back({perm[e.src], perm[e.dst]});
  std::vector<double> xd(40 * 5);
  for (NodeId u = 0; u < 40; ++u)
    std::copy(f.x.row(u).begin(), f.x.row(u).end(), xd.begin() + perm[u] * 5);
  Fixture p{Graph::from_edges(40, edges, false), FeatureMatrix(40, 5, xd), f.y, {}};
  p.rt = ranking::rank_uniform(p.g);

  // Full fanout makes the sampled graph the exact 2-hop neighborhood.
  std::vector<NodeId> seeds{1, 2, 3}, pseeds{perm[1], perm[2], perm[3]};
  sampling::NodeSampleOptions opt{.fanouts = {100, 100}};
  Batch a{{sampling::node_sample_khop(f.g, f.rt, seeds, opt, Rng(1))}};
  Batch b{{sampling::node_sample_khop(p.g, p.rt, pseeds, opt, Rng(2))}};
  Rng rng(4);
  SageModel m = SageModel::init(5, 8, 3, 2, 1, Combiner::concat, rng);
  EXPECT_LT((forward(m, f.x, a) - forward(m, p.x, b)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Forward, TiedConcatHeadEqualsSingleChannel) {
  Fixture f = small_fixture(92);
  std::vector<NodeId> seeds{0, 1, 2, 3};
  Subgraph sg = sample(f, seeds, 2, 5);
  Rng rng(6);
  SageModel one = SageModel::init(5, 8, 3, 2, 1, Combiner::concat, rng);
  SageModel two = SageModel::init(5, 8, 3, 2, 2, Combiner::concat, rng);
  two.channels = {one.channels[0], one.channels[0]};
  two.head_a = one.head_a * 0.5;
  two.head_b = one.head_a * 0.5;
  two.head_bias = one.head_bias;
  Matrix l1 = forward(one, f.x, Batch{{sg}});
  Matrix l2 = forward(two, f.x, Batch{{sg, sg}});
  EXPECT_EQ(l1, l2);
}

TEST(Forward, RejectsMismatchedBatches) {
  Fixture f = small_fixture(93);
  std::vector<NodeId> s1{0, 1}, s2{0};
  Rng rng(7);
  SageModel m = SageModel::init(5, 4, 3, 1, 2, Combiner::skip, rng);
  EXPECT_THROW(forward(m, f.x, Batch{{sample(f, s1, 1, 1)}}), Error);
  EXPECT_THROW(forward(m, f.x, Batch{{sample(f, s1, 1, 1), sample(f, s2, 1, 1)}}), Error);
  EXPECT_THROW(SageModel::init(5, 4, 3, 1, 3, Combiner::skip, rng), Error);
}

TEST(Split, SizesAndDisjointness) {
  Split s = random_split(1000, Rng(8));
  EXPECT_EQ(s.train.size(), 600u);
  EXPECT_EQ(s.val.size(), 200u);
  EXPECT_EQ(s.test.size(), 200u);
  std::set<NodeId> all;
  for (auto* part : {&s.train, &s.val, &s.test}) {
    EXPECT_TRUE(std::is_sorted(part->begin(), part->end()));
    all.insert(part->begin(), part->end());
  }
  EXPECT_EQ(all.size(), 1000u);
}

TEST(Convergence, WindowedStddev) {
  std::vector<double> flat{5, 4, 1.0, 1.0, 1.00001, 1.0, 1.0};
  EXPECT_TRUE(converged(flat, 5, 1e-4));
  std::vector<double> moving{1.0, 0.9, 0.8, 0.7, 0.6};
  EXPECT_FALSE(converged(moving, 5, 1e-4));
  std::vector<double> short_run{1.0, 1.0};
  EXPECT_FALSE(converged(short_run, 5, 1e-4));
}

struct Toy {
  Graph g;
  FeatureMatrix x;
  LabelVector y;
};

Toy separable_toy() {
  std::vector<std::int32_t> yv(600);
  for (std::size_t i = 0; i < yv.size(); ++i) yv[i] = static_cast<std::int32_t>(i % 3);
  LabelVector y(yv);
  return {synth::generate_synthetic(y, 0.9, 10, Rng(94)),
          synth::noisy_onehot_features(y, 6, 1.0, 0.6, Rng(95)), y};
}

TEST(Train, SeparableToyReachesHighF1) {
  Toy t = separable_toy();
  auto sim = similarity::make_similarity(similarity::SimKind::cosine);
  RankTable rs = ranking::rank_by_similarity(t.g, t.x, sim, PmfSpec{});
  RankTable rd = ranking::rank_by_diversity(t.g, t.x, sim, {}, PmfSpec{});
  const RankTable* tables[] = {&rs, &rd};
  Split split = random_split(600, Rng(96));
  TrainConfig cfg{.hidden = 16, .fanouts = {5, 3}, .batch = 32, .epochs = 30, .lr = 1e-2,
                  .seed = 97};
  auto r = train(t.g, t.x, t.y, tables, split, cfg);
  EXPECT_NE(r.history.stop, StopReason::non_finite);
  EXPECT_GT(evaluate(r.model, t.g, t.x, t.y, tables, split.test, cfg, Rng(98)), 0.95);
}

TEST(Train, DeterministicForSeedAndWorkers) {
  Toy t = separable_toy();
  RankTable rt = ranking::rank_uniform(t.g);
  const RankTable* tables[] = {&rt};
  Split split = random_split(600, Rng(99));
  TrainConfig cfg{.hidden = 8, .fanouts = {4}, .batch = 64, .epochs = 3, .seed = 5};
  auto a = train(t.g, t.x, t.y, tables, split, cfg);
  cfg.workers = 3;
  auto b = train(t.g, t.x, t.y, tables, split, cfg);
  EXPECT_EQ(a.history.epoch_loss, b.history.epoch_loss);
  EXPECT_EQ(a.history.val_f1, b.history.val_f1);
  auto pa = a.model.parameters(), pb = b.model.parameters();
  ASSERT_EQ(pa.size(), pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_TRUE(std::ranges::equal(pa[i], pb[i]));
  EXPECT_EQ(a.history.epoch_loss.size(), 3u);
  EXPECT_EQ(a.history.stop, StopReason::epoch_cap);
}

}  // namespace
}  // namespace ags::sage
