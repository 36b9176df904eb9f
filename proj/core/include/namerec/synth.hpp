// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "namerec/corpus.hpp"

namespace namerec::eval {

struct SynthConfig {
  std::size_t families = 10;
  std::size_t methods_per_family = 20;
  std::size_t callee_pool_size = 15;
  std::uint64_t seed = 1;
  std::size_t min_callees = 3;
  std::size_t max_callees = 6;
  std::size_t methods_per_file = 4;
};

struct SyntheticCorpus {
  std::vector<corpus::SourceUnit> units;
  /// Records the extractor is expected to reproduce, in unit order.
  std::vector<corpus::MethodRecord> planned;
  std::vector<std::vector<std::string>> family_methods;
  std::vector<std::vector<std::string>> family_pools;
  std::map<std::string, std::size_t> family_of;  // methods and pool names
};

/// Java-looking corpus in which family i's methods share one verb and one
/// noun and call only names from a pool private to family i.
/// Throws EvalError when families < 2 or the pool is smaller than
/// max_callees.
SyntheticCorpus generate_synthetic_corpus(const SynthConfig& config);

/// Writes every unit below `root`, creating directories as needed.
void write_corpus(const std::vector<corpus::SourceUnit>& units,
                  const std::filesystem::path& root);

}  // namespace namerec::eval
