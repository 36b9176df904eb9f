// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace namerec {

// std::uniform_*_distribution is implementation-defined, so the derived
// draws are done here on top of the (fully specified) mt19937_64 engine.
// Every seeded result in the library is reproducible across standard
// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_unit();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_index(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace namerec
