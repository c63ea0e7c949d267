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
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ags/nn.hpp"

namespace ags::submodular {

enum class Kind : std::uint8_t {
  facility_location = 0,  // data: symmetric nonnegative kernel
  max_coverage = 1,       // data: nonnegative features, one row per element
  feature_based = 2,      // data: nonnegative features, concave sqrt per column
  graph_cut = 3,          // data: symmetric nonnegative kernel
};

Kind parse_kind(std::string_view name);
std::string_view to_string(Kind kind);

/// Whether the kind is monotone (all marginal gains >= 0).
bool is_monotone(Kind kind);

/// f(S) evaluated from scratch. Elements index rows of `data`.
double evaluate(Kind kind, const nn::Matrix& data, std::span<const std::size_t> set,
                double lambda = 2.0);

// Marginal gains f(S + v) - f(S), evaluated from scratch.
double facility_location_gain(const nn::Matrix& kernel, std::span<const std::size_t> set,
                              std::size_t v);
double max_coverage_gain(const nn::Matrix& features, std::span<const std::size_t> set,
                         std::size_t v);
double feature_based_gain(const nn::Matrix& features, std::span<const std::size_t> set,
                          std::size_t v);
double graph_cut_gain(const nn::Matrix& kernel, std::span<const std::size_t> set,
                      std::size_t v, double lambda = 2.0);

/// Incremental objective over ground set {0, ..., size() - 1}.
///
/// Gains are computed from running per-element state in a form whose
/// floating-point value never increases as the set grows, so cached gains
/// are valid upper bounds for lazy evaluation.
class Objective {
 public:
  Objective(Kind kind, nn::Matrix data, double lambda = 2.0);

  Kind kind() const { return kind_; }
  std::size_t size() const { return static_cast<std::size_t>(data_.rows()); }
  const nn::Matrix& data() const { return data_; }

  void reset();
  double gain(std::size_t v) const;
  void add(std::size_t v);
  /// f of the current set.
  double value() const { return value_; }
  const std::vector<std::size_t>& selected() const { return selected_; }

 private:
  Kind kind_;
  nn::Matrix data_;
  double lambda_;
  std::vector<double> state_;     // per column (coverage, sqrt) or per element
  std::vector<double> row_sum_;   // graph cut only
  std::vector<std::size_t> selected_;
  double value_ = 0.0;
};

struct GreedyResult {
  std::vector<std::size_t> order;  // selection order, excluding `initial`
  std::vector<double> gains;       // marginal gain at selection time
  std::size_t evaluations = 0;     // gain evaluations performed
};

/// Orders every element not in `initial` by greedy marginal gain, ties by
/// ascending index, starting from the set `initial`. Produces the same order
/// as naive greedy while re-evaluating only stale heap tops.
GreedyResult lazy_greedy(Objective& fn, std::span<const std::size_t> initial = {});

}  // namespace ags::submodular
