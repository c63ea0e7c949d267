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

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace ags {

/// Seeded 64-bit generator. Child streams are derived from the key the
/// generator was created with, never from its current state, so
/// `split(a, b)` yields the same stream no matter how many draws the parent
/// has made or which thread asks.
///
/// Conversions to real and bounded integers are done here rather than with
/// <random> distributions, whose outputs differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : key_(mix(seed)), engine_(key_) {}

  // Keys are chained before the engine is seeded; seeding dominates the
  // cost of a split.
  Rng split(std::uint64_t a) const { return Rng(KeyTag{}, child(key_, a)); }
  Rng split(std::uint64_t a, std::uint64_t b) const {
    return Rng(KeyTag{}, child(child(key_, a), b));
  }
  Rng split(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return Rng(KeyTag{}, child(child(child(key_, a), b), c));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe to take the logarithm of.
  double uniform_pos() { return 1.0 - uniform(); }

  /// Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Standard exponential variate.
  double exponential() { return -std::log(uniform_pos()); }

  /// Standard normal (Box-Muller, one value per call).
  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      std::swap(first[i - 1], first[below(i)]);
    }
  }

  std::uint64_t key() const { return key_; }

 private:
  struct KeyTag {};
  Rng(KeyTag, std::uint64_t key) : key_(key), engine_(key) {}

  static std::uint64_t child(std::uint64_t key, std::uint64_t a) {
    return mix(key ^ mix(a + 1));
  }

  // splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace ags
