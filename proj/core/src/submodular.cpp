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

#include "ags/submodular.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "ags/common.hpp"

namespace ags::submodular {

namespace {

void check_data(Kind kind, const nn::Matrix& data) {
  AGS_CHECK(data.rows() > 0, "submodular: empty ground set");
  AGS_CHECK(data.allFinite(), "submodular: non-finite data");
  if (kind == Kind::facility_location || kind == Kind::graph_cut) {
    AGS_CHECK(data.rows() == data.cols(), "submodular: kernel must be square");
    AGS_CHECK(data == data.transpose(), "submodular: kernel must be symmetric");
  }
  if (kind == Kind::max_coverage || kind == Kind::feature_based) {
    AGS_CHECK(data.minCoeff() >= 0.0,
              "submodular: negative feature under " + std::string(to_string(kind)));
  }
}

void check_index(const nn::Matrix& data, std::size_t v) {
  AGS_CHECK(v < static_cast<std::size_t>(data.rows()), "submodular: element out of range");
}

double sqrt_step(double c, double x) {
  // sqrt(c + x) - sqrt(c) without cancellation.
  const double den = std::sqrt(c + x) + std::sqrt(c);
  return den > 0.0 ? x / den : 0.0;
}

}  // namespace

Kind parse_kind(std::string_view name) {
  if (name == "facility" || name == "facility_location") return Kind::facility_location;
  if (name == "coverage" || name == "max_coverage") return Kind::max_coverage;
  if (name == "feature" || name == "feature_based") return Kind::feature_based;
  if (name == "graphcut" || name == "graph_cut") return Kind::graph_cut;
  throw Error("ags: unknown submodular function '" + std::string(name) + "'");
}

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::facility_location: return "facility";
    case Kind::max_coverage: return "coverage";
    case Kind::feature_based: return "feature";
    case Kind::graph_cut: return "graphcut";
  }
  return "?";
}

bool is_monotone(Kind kind) { return kind != Kind::graph_cut; }

double evaluate(Kind kind, const nn::Matrix& data, std::span<const std::size_t> set,
                double lambda) {
  check_data(kind, data);
  for (auto s : set) check_index(data, s);
  const auto n = data.rows();
  double f = 0.0;
  switch (kind) {
    case Kind::facility_location:
      if (set.empty()) return 0.0;
      for (Eigen::Index y = 0; y < n; ++y) {
        double best = 0.0;
        for (auto s : set) best = std::max(best, data(static_cast<Eigen::Index>(s), y));
        f += best;
      }
      return f;
    case Kind::max_coverage:
    case Kind::feature_based:
      for (Eigen::Index d = 0; d < data.cols(); ++d) {
        double c = 0.0;
        for (auto s : set) c += data(static_cast<Eigen::Index>(s), d);
        f += kind == Kind::max_coverage ? std::min(c, 1.0) : std::sqrt(c);
      }
      return f;
    case Kind::graph_cut:
      for (auto s : set) {
        f += lambda * data.row(static_cast<Eigen::Index>(s)).sum();
        for (auto t : set) f -= data(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
      }
      return f;
  }
  return f;
}

double facility_location_gain(const nn::Matrix& kernel, std::span<const std::size_t> set,
                              std::size_t v) {
  Objective fn(Kind::facility_location, kernel);
  for (auto s : set) fn.add(s);
  return fn.gain(v);
}

double max_coverage_gain(const nn::Matrix& features, std::span<const std::size_t> set,
                         std::size_t v) {
  Objective fn(Kind::max_coverage, features);
  for (auto s : set) fn.add(s);
  return fn.gain(v);
}

double feature_based_gain(const nn::Matrix& features, std::span<const std::size_t> set,
                          std::size_t v) {
  Objective fn(Kind::feature_based, features);
  for (auto s : set) fn.add(s);
  return fn.gain(v);
}

double graph_cut_gain(const nn::Matrix& kernel, std::span<const std::size_t> set,
                      std::size_t v, double lambda) {
  Objective fn(Kind::graph_cut, kernel, lambda);
  for (auto s : set) fn.add(s);
  return fn.gain(v);
}

Objective::Objective(Kind kind, nn::Matrix data, double lambda)
    : kind_(kind), data_(std::move(data)), lambda_(lambda) {
  check_data(kind_, data_);
  AGS_CHECK(std::isfinite(lambda_), "submodular: lambda must be finite");
  if (kind_ == Kind::graph_cut) {
    row_sum_.resize(size());
    for (std::size_t i = 0; i < size(); ++i) {
      row_sum_[i] = data_.col(static_cast<Eigen::Index>(i)).sum();
    }
  }
  reset();
}

void Objective::reset() {
  const auto width = kind_ == Kind::max_coverage || kind_ == Kind::feature_based
                         ? static_cast<std::size_t>(data_.cols())
                         : size();
  state_.assign(width, 0.0);
  selected_.clear();
  value_ = 0.0;
}

double Objective::gain(std::size_t v) const {
  check_index(data_, v);
  const auto iv = static_cast<Eigen::Index>(v);
  double g = 0.0;
  switch (kind_) {
    case Kind::facility_location: {
      // The kernel is symmetric, so read the contiguous column.
      const double* col = data_.col(iv).data();
      for (std::size_t y = 0; y < state_.size(); ++y) {
        g += std::max(0.0, col[y] - state_[y]);
      }
      return g;
    }
    case Kind::max_coverage:
      for (std::size_t d = 0; d < state_.size(); ++d) {
        const double c = state_[d];
        if (c < 1.0) g += std::min(data_(iv, static_cast<Eigen::Index>(d)), 1.0 - c);
      }
      return g;
    case Kind::feature_based:
      for (std::size_t d = 0; d < state_.size(); ++d) {
        g += sqrt_step(state_[d], data_(iv, static_cast<Eigen::Index>(d)));
      }
      return g;
    case Kind::graph_cut:
      return lambda_ * row_sum_[v] - 2.0 * state_[v] - data_(iv, iv);
  }
  return g;
}

void Objective::add(std::size_t v) {
  const double g = gain(v);
  const auto iv = static_cast<Eigen::Index>(v);
  switch (kind_) {
    case Kind::facility_location: {
      const double* col = data_.col(iv).data();
      for (std::size_t y = 0; y < state_.size(); ++y) state_[y] = std::max(state_[y], col[y]);
      break;
    }
    case Kind::max_coverage:
    case Kind::feature_based:
      for (std::size_t d = 0; d < state_.size(); ++d) {
        state_[d] += data_(iv, static_cast<Eigen::Index>(d));
      }
      break;
    case Kind::graph_cut: {
      const double* col = data_.col(iv).data();
      for (std::size_t y = 0; y < state_.size(); ++y) state_[y] += col[y];
      break;
    }
  }
  value_ += g;
  selected_.push_back(v);
}

GreedyResult lazy_greedy(Objective& fn, std::span<const std::size_t> initial) {
  const std::size_t n = fn.size();
  AGS_CHECK(n > 0, "submodular: empty ground set");
  fn.reset();
  std::vector<std::uint8_t> taken(n, 0);
  for (auto s : initial) {
    AGS_CHECK(s < n, "submodular: initial element outside ground set");
    if (!taken[s]) {
      taken[s] = 1;
      fn.add(s);
    }
  }

  struct Entry {
    double key;
    std::size_t id;
  };
  // Max-heap on key, then min on id.
  auto lower = [](const Entry& a, const Entry& b) {
    return a.key < b.key || (a.key == b.key && a.id > b.id);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);

  GreedyResult out;
  for (std::size_t v = 0; v < n; ++v) {
    if (taken[v]) continue;
    heap.push({fn.gain(v), v});
    ++out.evaluations;
  }
  // Keys are upper bounds on current gains. A popped element with a fresh
  // gain that still beats the next key is the naive-greedy choice.
  std::vector<std::size_t> fresh_at(n, 0);
  std::size_t round = 0;
  while (!heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    if (fresh_at[top.id] != round) {
      top.key = fn.gain(top.id);
      fresh_at[top.id] = round;
      ++out.evaluations;
      if (!heap.empty() && lower(top, heap.top())) {
        heap.push(top);
        continue;
      }
    }
    fn.add(top.id);
    out.order.push_back(top.id);
    out.gains.push_back(top.key);
    ++round;
  }
  return out;
}

}  // namespace ags::submodular
