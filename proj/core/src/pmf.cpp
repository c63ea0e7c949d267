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

#include "ags/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ags/common.hpp"

namespace ags {

void PmfSpec::validate() const {
  switch (kind) {
    case PmfKind::step:
      AGS_CHECK(k1 >= 0.0 && k2 >= 0.0 && k1 + k2 <= 1.0,
                "step pmf needs k1, k2 >= 0 and k1 + k2 <= 1");
      AGS_CHECK(lambda1 > lambda2 && lambda2 > lambda3 && lambda3 > 0.0,
                "step pmf needs lambda1 > lambda2 > lambda3 > 0");
      break;
    case PmfKind::exponential:
      AGS_CHECK(decay > 0.0 && decay < 1.0, "exponential decay must be in (0,1)");
      [[fallthrough]];
    case PmfKind::linear:
    case PmfKind::gain:
      AGS_CHECK(std::isfinite(floor) && floor >= 0.0, "floor must be >= 0");
      break;
    case PmfKind::uniform:
      break;
  }
}

StepTiers step_tiers(std::size_t d, const PmfSpec& spec) {
  // The epsilon keeps products such as 0.29 * 100 from flooring to 28.
  const auto top1 = static_cast<std::size_t>(std::floor(spec.k1 * d + 1e-9));
  const auto top2 = static_cast<std::size_t>(std::floor(spec.k2 * d + 1e-9));
  return {top1, top2, d - top1 - top2};
}

std::vector<double> pmf_from_ranks(std::size_t d, const PmfSpec& spec,
                                   std::span<const double> scores) {
  AGS_CHECK(d >= 1, "pmf needs at least one neighbor");
  spec.validate();
  std::vector<double> w(d);
  switch (spec.kind) {
    case PmfKind::step: {
      auto t = step_tiers(d, spec);
      for (std::size_t r = 0; r < d; ++r) {
        w[r] = r < t.top1 ? spec.lambda1
               : r < t.top1 + t.top2 ? spec.lambda2
                                     : spec.lambda3;
      }
      break;
    }
    case PmfKind::linear:
      for (std::size_t r = 0; r < d; ++r) {
        w[r] = static_cast<double>(d - r) + spec.floor;
      }
      break;
    case PmfKind::exponential: {
      double x = 1.0;
      for (std::size_t r = 0; r < d; ++r) {
        w[r] = x + spec.floor;
        x *= spec.decay;
      }
      break;
    }
    case PmfKind::uniform:
      std::fill(w.begin(), w.end(), 1.0);
      break;
    case PmfKind::gain:
      AGS_CHECK(scores.size() == d, "gain pmf needs one score per rank");
      for (std::size_t r = 0; r < d; ++r) {
        AGS_CHECK(std::isfinite(scores[r]) && scores[r] >= 0.0,
                  "gain pmf scores must be finite and nonnegative");
        w[r] = scores[r] + spec.floor;
      }
      break;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  AGS_CHECK(total > 0.0, "pmf has zero total mass (set a positive floor)");
  for (double& x : w) x /= total;
  return w;
}

PmfKind parse_pmf_kind(std::string_view name) {
  if (name == "step") return PmfKind::step;
  if (name == "linear") return PmfKind::linear;
  if (name == "exp" || name == "exponential") return PmfKind::exponential;
  if (name == "uniform") return PmfKind::uniform;
  if (name == "gain") return PmfKind::gain;
  throw Error("ags: unknown pmf '" + std::string(name) + "'");
}

std::string_view to_string(PmfKind kind) {
  switch (kind) {
    case PmfKind::step: return "step";
    case PmfKind::linear: return "linear";
    case PmfKind::exponential: return "exponential";
    case PmfKind::uniform: return "uniform";
    case PmfKind::gain: return "gain";
  }
  return "?";
}

}  // namespace ags
