// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace namerec {

/// 64-bit FNV-1a. Stable across platforms, used to fingerprint configs and
/// artifacts.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Lowercase 16-digit hex rendering of a 64-bit hash.
std::string to_hex(std::uint64_t value);

}  // namespace namerec
