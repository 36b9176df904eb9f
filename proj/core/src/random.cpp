// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "namerec/random.hpp"

#include <stdexcept>

namespace namerec {

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("Rng::uniform_index: bound must be positive");
  }
  // Reject the low slice that would bias r % bound.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) {
      return r % bound;
    }
  }
}

double Rng::uniform_unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace namerec
