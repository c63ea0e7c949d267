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

// Microbenchmarks for neighbor ranking and sampling on synthetic graphs.

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <numeric>
#include <vector>

#include "ags/disjoint.hpp"
#include "ags/ranking.hpp"
#include "ags/sampling.hpp"
#include "ags/synth.hpp"

namespace {

using namespace ags;

struct Fixture {
  LabelVector y;
  Graph g;
  FeatureMatrix x;
  RankTable similar;
};

// Cached per (nodes, degree) so setup is not timed.
const Fixture& fixture(std::size_t n, double degree) {
  static std::map<std::pair<std::size_t, double>, std::unique_ptr<Fixture>> cache;
  auto& slot = cache[{n, degree}];
  if (!slot) {
    const std::vector<double> props(5, 0.2);
    auto y = synth::random_labels(n, props, Rng(1));
    auto g = synth::generate_mixed(y, 0.05, 0.5, degree, Rng(2));
    auto x = synth::noisy_onehot_features(y, 16, 1.0, 0.5, Rng(3));
    const auto sim = similarity::make_similarity(similarity::SimKind::cosine);
    auto rt = ranking::rank_by_similarity(g, x, sim, PmfSpec{});
    slot = std::make_unique<Fixture>(Fixture{std::move(y), std::move(g), std::move(x), std::move(rt)});
  }
  return *slot;
}

void BM_RankSimilarity(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), 20);
  const auto sim = similarity::make_similarity(similarity::SimKind::cosine);
  const bool partial = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ranking::rank_by_similarity(f.g, f.x, sim, PmfSpec{}, 1, partial));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.g.num_entries()));
}
BENCHMARK(BM_RankSimilarity)->ArgsProduct({{1000, 4000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_RankDiversity(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), static_cast<double>(state.range(1)));
  const auto sim = similarity::make_similarity(similarity::SimKind::cosine);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ranking::rank_by_diversity(f.g, f.x, sim, {}, PmfSpec{}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.g.num_entries()));
}
BENCHMARK(BM_RankDiversity)->ArgsProduct({{1000, 4000}, {10, 40}})->Unit(benchmark::kMillisecond);

void BM_SampleNeighbors(benchmark::State& state) {
  const auto& f = fixture(2000, 20);
  const bool replace = state.range(0) != 0;
  Rng rng(4);
  NodeId u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampling::sample_neighbors(f.similar, u, 10, replace, rng));
    u = (u + 1) % static_cast<NodeId>(f.g.num_nodes());
  }
}
BENCHMARK(BM_SampleNeighbors)->Arg(0)->Arg(1);

std::vector<NodeId> first_seeds(std::size_t count) {
  std::vector<NodeId> s(count);
  std::iota(s.begin(), s.end(), NodeId{0});
  return s;
}

void BM_NodeSampleKhop(benchmark::State& state) {
  const auto& f = fixture(4000, 20);
  const auto seeds = first_seeds(static_cast<std::size_t>(state.range(0)));
  sampling::NodeSampleOptions opt;
  opt.fanouts = {25, 10};
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampling::node_sample_khop(f.g, f.similar, seeds, opt, Rng(5).split(i++)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NodeSampleKhop)->Arg(64)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_WeightedRandomWalk(benchmark::State& state) {
  const auto& f = fixture(4000, 20);
  const auto seeds = first_seeds(512);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampling::weighted_random_walk(
        f.g, f.similar, seeds, static_cast<std::size_t>(state.range(0)), Rng(6).split(i++)));
  }
}
BENCHMARK(BM_WeightedRandomWalk)->Arg(2)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_DisjointDecompose(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), 20);
  const auto edges = sampling::edge_weights_from_table(f.g, f.similar);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampling::disjoint_decompose(f.g.num_nodes(), edges, 4));
  }
}
BENCHMARK(BM_DisjointDecompose)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
