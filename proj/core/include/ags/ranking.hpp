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
#include "ags/pmf.hpp"
#include "ags/rank_table.hpp"
#include "ags/similarity.hpp"
#include "ags/submodular.hpp"

namespace ags::ranking {

/// Row u ranks N(u) by descending sim(x_v, x_u), ties by ascending id.
/// Masses come from rank positions. With `partial_sort`, step PMFs only sort
/// the top two tiers and uniform PMFs skip sorting; the masses are the same
/// because every tail entry shares one mass, but the tail keeps an
/// unspecified (deterministic) order.
RankTable rank_by_similarity(const Graph& g, const FeatureMatrix& x,
                             const similarity::SimilarityFn& sim, const PmfSpec& pmf,
                             std::size_t workers = 1, bool partial_sort = false);

struct DiversityOptions {
  submodular::Kind fn = submodular::Kind::facility_location;
  double lambda = 2.0;  // graph cut only
};

/// Row u is the lazy-greedy order over the egonet {u} + N(u) starting from
/// {u}. Kernel kinds use the egonet kernel of `sim`; coverage and
/// feature-based kinds use the raw features. With PmfKind::gain the masses
/// follow the marginal gains instead of the ranks.
RankTable rank_by_diversity(const Graph& g, const FeatureMatrix& x,
                            const similarity::SimilarityFn& sim,
                            const DiversityOptions& opt, const PmfSpec& pmf,
                            std::size_t workers = 1);

/// Greedy order and gains for a single ego, as used by rank_by_diversity.
submodular::GreedyResult diversity_order(const Graph& g, const FeatureMatrix& x,
                                         const similarity::SimilarityFn& sim,
                                         const DiversityOptions& opt, NodeId u);

/// Neighbors in CSR order with mass 1/d.
RankTable rank_uniform(const Graph& g);

}  // namespace ags::ranking
