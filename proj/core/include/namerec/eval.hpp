// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "namerec/corpus.hpp"
#include "namerec/embed.hpp"
#include "namerec/lexicon.hpp"

namespace namerec::eval {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Category : std::size_t { getter_setter = 0, hint_present = 1, hint_absent = 2 };
enum class Task { verb, noun };

inline constexpr std::array<Category, 3> kCategories{
    Category::getter_setter, Category::hint_present, Category::hint_absent};

std::string_view to_string(Category category);
std::string_view to_string(Task task);

/// Seeded shuffle of [0, unit_count) dealt round-robin into k folds.
/// Each inner vector is sorted. Throws EvalError if unit_count < k or k < 2.
std::vector<std::vector<std::size_t>> split_folds(std::size_t unit_count,
                                                  std::size_t k,
                                                  std::uint64_t seed);

/// Words a query exposes: the union of split_identifier over the callees.
std::set<std::string> query_words(std::span<const std::string> callees);

/// getter_setter when the verb part is exactly "get" or "set"; otherwise
/// hint_present when the callee words contain the target verb (verb task)
/// or any target noun (noun task); otherwise hint_absent.
Category categorize(const corpus::MethodRecord& method, Task task,
                    const lexicon::Lexicon& lexicon);

struct Tally {
  std::size_t correct = 0;
  std::size_t total = 0;

  double ratio() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
  Tally& operator+=(const Tally& other) {
    correct += other.correct;
    total += other.total;
    return *this;
  }
  friend bool operator==(const Tally&, const Tally&) = default;
};

struct TaskTally {
  std::array<Tally, 3> by_category{};

  Tally& operator[](Category c) { return by_category[static_cast<std::size_t>(c)]; }
  const Tally& operator[](Category c) const {
    return by_category[static_cast<std::size_t>(c)];
  }
  /// hint_present + hint_absent.
  Tally non_getter_setter() const;
  Tally all() const;
  TaskTally& operator+=(const TaskTally& other);
  friend bool operator==(const TaskTally&, const TaskTally&) = default;
};

struct Exclusions {
  std::size_t no_callees = 0;        // empty callee set
  std::size_t no_known_callees = 0;  // every callee missing from the table
  std::size_t no_verb = 0;           // scored for nouns only
  std::size_t no_noun = 0;           // scored for verbs only

  Exclusions& operator+=(const Exclusions& other);
  friend bool operator==(const Exclusions&, const Exclusions&) = default;
};

struct FoldReport {
  std::size_t fold = 0;
  std::size_t train_units = 0;
  std::size_t test_units = 0;
  std::size_t test_methods = 0;
  TaskTally verb;
  TaskTally noun;
  Exclusions exclusions;
  std::map<std::string, Tally> per_verb;  // verb task outcome by target verb

  friend bool operator==(const FoldReport&, const FoldReport&) = default;
};

/// Scores every test method against `table`. A method is verb-correct when
/// some top-k candidate has the same verb part, noun-correct when some
/// candidate shares a noun.
FoldReport evaluate(const embed::EmbeddingTable& table,
                    std::span<const corpus::MethodRecord> test_methods,
                    const lexicon::Lexicon& lexicon, std::size_t k = 10,
                    unsigned threads = 1);

struct EvalConfig {
  embed::TrainConfig train;
  std::size_t folds = 5;
  std::uint64_t fold_seed = 7;
  std::size_t top_k = 10;
  unsigned threads = 1;
};

struct EvaluationReport {
  EvalConfig config;
  std::uint64_t lexicon_fingerprint = 0;
  std::size_t units = 0;
  corpus::CleanseStats cleansing;
  std::vector<FoldReport> folds;

  TaskTally verb_total() const;
  TaskTally noun_total() const;
  Exclusions exclusions_total() const;
  std::size_t test_methods_total() const;
  std::map<std::string, Tally> per_verb_total() const;
};

struct CrossValidation {
  EvaluationReport report;
  std::vector<embed::EmbeddingTable> fold_tables;
};

/// Extract, cleanse, split by file, then per fold: build the call graph of
/// the training folds, train, and score the held-out methods.
CrossValidation cross_validate(std::vector<corpus::SourceUnit> units,
                               const EvalConfig& config,
                               const lexicon::Lexicon& lexicon);

/// Canonical JSON of the configuration (stable key order).
std::string config_json(const EvalConfig& config,
                        std::uint64_t lexicon_fingerprint);

/// JSON report with keys config, config_hash, folds, categories, tasks,
/// exclusions, cleansing. Deterministic byte output.
std::string report_json(const EvaluationReport& report);
/// Plain-text table laid out like the usual per-fold correctness table.
std::string report_text(const EvaluationReport& report);
/// verb,correct,total,ratio in verb order.
std::string per_verb_csv(const EvaluationReport& report);

}  // namespace namerec::eval
