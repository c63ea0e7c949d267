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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ags {

enum class PmfKind : std::uint8_t {
  step = 0,
  linear = 1,
  exponential = 2,
  uniform = 3,
  gain = 4,  // mass proportional to a caller-supplied score
};

/// Rank-to-mass mapping. Step tiers: the top floor(k1*d) entries weigh
/// lambda1, the next floor(k2*d) weigh lambda2, the rest lambda3.
struct PmfSpec {
  PmfKind kind = PmfKind::step;
  double k1 = 0.2;
  double k2 = 0.2;
  double lambda1 = 4.0;
  double lambda2 = 2.0;
  double lambda3 = 1.0;
  double decay = 0.5;     // exponential ratio r in (0, 1)
  double floor = 1e-6;    // added to every linear/exponential/gain weight

  void validate() const;
  friend bool operator==(const PmfSpec&, const PmfSpec&) = default;
};

/// Normalized masses for ranks 0..d-1 (rank 0 is the best neighbor).
/// `scores` is required (length d, nonnegative) only for PmfKind::gain.
std::vector<double> pmf_from_ranks(std::size_t d, const PmfSpec& spec,
                                   std::span<const double> scores = {});

/// Sizes of the three step tiers for degree d.
struct StepTiers {
  std::size_t top1, top2, rest;
};
StepTiers step_tiers(std::size_t d, const PmfSpec& spec);

PmfKind parse_pmf_kind(std::string_view name);
std::string_view to_string(PmfKind kind);

}  // namespace ags
