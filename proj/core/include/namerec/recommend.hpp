// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "namerec/embed.hpp"

namespace namerec::recommend {

class RecommendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Candidate {
  std::string name;
  double score = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Candidates by descending cosine score, ties by ascending name.
struct RecommendationList {
  std::vector<Candidate> entries;
  std::size_t k = 0;
  std::vector<std::string> skipped_callees;

  friend bool operator==(const RecommendationList&,
                         const RecommendationList&) = default;
};

struct QueryEmbedding {
  std::vector<double> vector;
  std::vector<std::string> skipped;  // callees missing from the table, sorted
};

/// Mean of the table vectors of the known callees. Unknown callees are
/// reported, not imputed. Throws RecommendError("no known callees").
QueryEmbedding query_embedding(const embed::EmbeddingTable& table,
                               std::span<const std::string> callee_names);

/// Throws RecommendError on a zero-norm input or a length mismatch.
double cosine(std::span<const double> a, std::span<const double> b);

/// Exhaustive linear scan over the table. Zero-norm rows are never returned.
RecommendationList top_k(const embed::EmbeddingTable& table,
                         std::span<const double> query, std::size_t k,
                         const std::set<std::string>& exclude = {});

/// Caches row norms so repeated queries against one table skip that work.
/// The table must outlive the recommender.
class Recommender {
 public:
  explicit Recommender(const embed::EmbeddingTable& table);

  const embed::EmbeddingTable& table() const { return *table_; }

  RecommendationList top_k(std::span<const double> query, std::size_t k,
                           const std::set<std::string>& exclude = {}) const;

  /// query_embedding followed by top_k; skipped callees are carried over.
  RecommendationList recommend(std::span<const std::string> callee_names,
                               std::size_t k,
                               const std::set<std::string>& exclude = {}) const;

 private:
  const embed::EmbeddingTable* table_;
  std::vector<double> inverse_norms_;  // 0 for zero rows
};

/// Accepts either {"callees": [...]} or a raw method body / method snippet,
/// which is run through the lexical extractor. Returns the sorted callee set.
std::vector<std::string> parse_query(std::string_view input);

/// {"candidates":[{"name":..,"score":..}...],"skipped":[...]}
std::string to_json(const RecommendationList& list);

}  // namespace namerec::recommend
