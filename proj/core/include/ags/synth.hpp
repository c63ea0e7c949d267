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

#include <cstddef>

#include "ags/graph.hpp"
#include "ags/rng.hpp"

namespace ags::synth {

struct SynthReport {
  std::size_t infeasible_nodes = 0;   // wanted same-class partners, class is a singleton
  std::size_t exhausted_pools = 0;    // asked for more partners than a pool holds
  std::size_t requested_same = 0;
  std::size_t requested_cross = 0;
};

/// Undirected graph over the labeled nodes. Node u draws a target h_u
/// uniformly from [lo, hi], then picks round(h_u d / 2) partners from its
/// own class and round((1 - h_u) d / 2) from the other classes, uniformly
/// without replacement. Rounding is stochastic on the fractional part.
/// Duplicate edges merge. Each node uses the stream rng.split(u).
Graph generate_mixed(const LabelVector& y, double lo, double hi, double degree,
                     const Rng& rng, SynthReport* report = nullptr,
                     std::size_t workers = 1);

/// generate_mixed with lo = hi = hn.
Graph generate_synthetic(const LabelVector& y, double hn, double degree, const Rng& rng,
                         SynthReport* report = nullptr, std::size_t workers = 1);

/// signal * onehot(y) in the first c columns plus N(0, noise^2) everywhere.
FeatureMatrix noisy_onehot_features(const LabelVector& y, std::size_t dim, double signal,
                                    double noise, const Rng& rng);

/// Labels drawn from the given class proportions.
LabelVector random_labels(std::size_t n, std::span<const double> proportions,
                          const Rng& rng);

}  // namespace ags::synth
