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
#include <fstream>
#include <memory>

#include "ags/common.hpp"
#include "ags/nn.hpp"
#include "ags/similarity.hpp"
#include "support/gradcheck.hpp"
#include "support/test_util.hpp"

namespace ags::similarity {
namespace {

using nn::Matrix;

std::vector<double> v(std::initializer_list<double> x) { return x; }

Matrix line_points() {
  Matrix p = Matrix::Zero(7, 2);
  const double xs[] = {0, 1, 2, 5, 7, 8, 9};
  for (int i = 0; i < 7; ++i) p(i, 0) = xs[i];
  return p;
}

TEST(Cosine, BasicCases) {
  EXPECT_DOUBLE_EQ(cosine(v({1, 0}), v({0, 1})), 0.0);
  EXPECT_DOUBLE_EQ(cosine(v({2, 2}), v({1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(cosine(v({1, 2}), v({-1, -2})), -1.0);
  bool zero = false;
  EXPECT_EQ(cosine(v({0, 0}), v({1, 1}), &zero), 0.0);
  EXPECT_TRUE(zero);
  // Near-parallel vectors never leave [-1, 1] through rounding.
  const double c = cosine(v({0.1, 0.2, 0.3}), v({0.1 * 3, 0.2 * 3, 0.3 * 3}));
  EXPECT_LE(c, 1.0);
}

TEST(SimKind, ParseRoundTrip) {
  EXPECT_EQ(parse_sim_kind("cosine"), SimKind::cosine);
  EXPECT_EQ(parse_sim_kind("euclidean"), SimKind::neg_euclidean);
  EXPECT_EQ(parse_sim_kind("learned"), SimKind::learned);
  EXPECT_THROW(parse_sim_kind("jaccard"), Error);
  EXPECT_EQ(parse_sim_kind(to_string(SimKind::neg_euclidean)), SimKind::neg_euclidean);
}

TEST(Kernel, EuclideanLineExample) {
  Matrix k = pairwise_kernel(line_points(), make_similarity(SimKind::neg_euclidean));
  const double expected[] = {81, 80, 77, 56, 32, 17, 0};
  for (int j = 0; j < 7; ++j) EXPECT_EQ(k(0, j), expected[j]);
  EXPECT_EQ(k, k.transpose());
}

TEST(Kernel, CosineMappedToUnitInterval) {
  Rng rng(3);
  FeatureMatrix x = testing::random_features(12, 5, rng);
  std::vector<NodeId> rows{0, 3, 4, 7, 11};
  Matrix k = pairwise_kernel(x, rows, make_similarity(SimKind::cosine));
  EXPECT_EQ(k, k.transpose());
  EXPECT_GE(k.minCoeff(), 0.0);
  EXPECT_LE(k.maxCoeff(), 1.0);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(k(i, i), 1.0, 1e-15);
  EXPECT_NEAR(k(1, 2), (cosine(x.row(3), x.row(4)) + 1) / 2, 1e-15);
}

TEST(Kernel, SingleRowEuclidean) {
  Matrix p = Matrix::Ones(1, 3);
  Matrix k = pairwise_kernel(p, make_similarity(SimKind::neg_euclidean));
  ASSERT_EQ(k.rows(), 1);
  EXPECT_EQ(k(0, 0), 0.0);
}

TEST(Siamese, PredictionIsSymmetricAndBounded) {
  Rng rng(5);
  SiameseModel m(6, 8, 4, rng);
  Matrix a(3, 6), b(3, 6);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a.data()[i] = rng.normal();
    b.data()[i] = rng.normal();
  }
  Matrix ab = predict(m, a, b), ba = predict(m, b, a);
  EXPECT_EQ(ab, ba);
  EXPECT_GT(ab.minCoeff(), 0.0);
  EXPECT_LT(ab.maxCoeff(), 1.0);
  auto shared = std::make_shared<const SiameseModel>(m);
  Matrix k = pairwise_kernel(a, make_similarity(SimKind::learned, shared));
  EXPECT_EQ(k, k.transpose());
  EXPECT_THROW(make_similarity(SimKind::learned), Error);
}

TEST(Siamese, GradientMatchesFiniteDifferences) {
  Rng rng(6);
  SiameseModel m(4, 6, 5, rng);
  Matrix a(5, 4), b(5, 4), t(5, 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a.data()[i] = rng.normal();
    b.data()[i] = rng.normal();
  }
  t << 1, 0, 1, 0, 0;
  auto g = siamese_loss_grad(m, a, b, t);
  auto analytic = testing::copy_views(g.views());
  auto loss = [&] { return nn::mse(predict(m, a, b), t).value; };
  EXPECT_NEAR(g.loss, loss(), 1e-15);
  std::string report;
  EXPECT_EQ(testing::check_gradients(loss, m.parameters(), analytic, {}, &report), 0u)
      << report;
}

TEST(Siamese, LearnsSeparableToy) {
  // Two clusters; the target is "same cluster".
  Rng rng(7);
  const int n = 40;
  Matrix pts(n, 3);
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) {
    cls[i] = i % 2;
    for (int j = 0; j < 3; ++j) pts(i, j) = (cls[i] ? 2.0 : -2.0) + 0.3 * rng.normal();
  }
  Matrix a(n * n, 3), b(n * n, 3), t(n * n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a.row(i * n + j) = pts.row(i);
      b.row(i * n + j) = pts.row(j);
      t(i * n + j, 0) = cls[i] == cls[j];
    }
  SiameseModel m(3, 16, 16, rng);
  nn::Adam adam(nn::Adam::Options{.lr = 1e-2});
  double last = 1.0;
  for (int step = 0; step < 200; ++step) {
    auto g = siamese_loss_grad(m, a, b, t);
    last = g.loss;
    adam.step(m.parameters(), g.views());
  }
  EXPECT_LT(last, 0.05);
}

TEST(Siamese, TrainingIsDeterministicAndUsesEdges) {
  Rng rng(9);
  Graph g = testing::random_graph(60, 0.1, rng);
  auto y = testing::random_labels(60, 2, rng);
  auto x = testing::random_features(60, 4, rng);
  std::vector<NodeId> train;
  for (NodeId u = 0; u < 40; ++u) train.push_back(u);
  SiameseConfig cfg{.h1 = 8, .h2 = 8, .batch = 64, .epochs = 3, .seed = 11};
  SiameseTrainReport rep;
  SiameseModel m1 = train_similarity(g, x, y, train, cfg, &rep);
  SiameseModel m2 = train_similarity(g, x, y, train, cfg);
  EXPECT_TRUE(m1 == m2);
  EXPECT_FALSE(rep.used_class_fallback);
  EXPECT_GT(rep.num_pairs, 0u);
  EXPECT_FALSE(rep.epoch_loss.empty());
}

TEST(Siamese, FallsBackToClassPairsWithoutEdges) {
  Rng rng(10);
  Graph g = Graph::from_edges(20, {}, false);
  auto y = testing::random_labels(20, 2, rng);
  auto x = testing::random_features(20, 3, rng);
  std::vector<NodeId> train{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  SiameseConfig cfg{.h1 = 4, .h2 = 4, .batch = 16, .epochs = 2, .seed = 1};
  SiameseTrainReport rep;
  train_similarity(g, x, y, train, cfg, &rep);
  EXPECT_TRUE(rep.used_class_fallback);
}

TEST(ModelFile, RoundTripAndCorruption) {
  Rng rng(12);
  SiameseModel m(5, 7, 3, rng);
  testing::TempDir dir;
  const auto path = dir / "m.agsm";
  save_model(m, path);
  EXPECT_TRUE(load_model(path) == m);

  auto bytes = encode_model(m);
  EXPECT_TRUE(decode_model(bytes) == m);
  auto flipped = bytes;
  flipped[40] ^= 0x10;
  EXPECT_THROW(decode_model(flipped), Error);
  auto truncated = bytes;
  truncated.resize(bytes.size() - 9);
  EXPECT_THROW(decode_model(truncated), Error);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_model(bad_magic), Error);
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(decode_model(trailing), Error);
}

}  // namespace
}  // namespace ags::similarity
