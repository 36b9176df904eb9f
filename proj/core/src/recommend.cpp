// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "namerec/recommend.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "namerec/corpus.hpp"

namespace namerec::recommend {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

QueryEmbedding query_embedding(const embed::EmbeddingTable& table,
                               std::span<const std::string> callee_names) {
  std::vector<std::string> names(callee_names.begin(), callee_names.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  QueryEmbedding q;
  q.vector.assign(table.dim(), 0.0);
  std::size_t known = 0;
  for (const auto& name : names) {
    const auto row = table.find(name);
    if (!row) {
      q.skipped.push_back(name);
      continue;
    }
    const auto v = table.row(*row);
    for (std::size_t d = 0; d < v.size(); ++d) q.vector[d] += v[d];
    ++known;
  }
  if (known == 0) throw RecommendError("no known callees");
  const double inv = 1.0 / static_cast<double>(known);
  for (double& x : q.vector) x *= inv;
  return q;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw RecommendError("cosine: length mismatch");
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) throw RecommendError("cosine: zero-norm vector");
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

Recommender::Recommender(const embed::EmbeddingTable& table)
    : table_(&table), inverse_norms_(table.size(), 0.0) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto v = table.row(i);
    const double n = std::sqrt(dot(v, v));
    inverse_norms_[i] = n > 0.0 ? 1.0 / n : 0.0;
  }
}

RecommendationList Recommender::top_k(std::span<const double> query, std::size_t k,
                                      const std::set<std::string>& exclude) const {
  const auto& table = *table_;
  RecommendationList list;
  list.k = k;
  if (table.empty() || k == 0) return list;
  if (query.size() != table.dim()) throw RecommendError("query length does not match table dimension");
  const double qn = std::sqrt(dot(query, query));
  if (qn == 0.0) throw RecommendError("zero-norm query");

  std::vector<bool> skip(table.size(), false);
  for (const auto& name : exclude) {
    if (auto row = table.find(name)) skip[*row] = true;
  }

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(table.size());
  const double inv_q = 1.0 / qn;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (skip[i] || inverse_norms_[i] == 0.0) continue;
    const double s = dot(query, table.row(i)) * inv_q * inverse_norms_[i];
    scored.emplace_back(std::clamp(s, -1.0, 1.0), i);
  }
  const std::size_t take = std::min(k, scored.size());
  // Names are stored sorted, so a lower row index is the lexicographically
  // smaller name.
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                    scored.end(), [](const auto& a, const auto& b) {
                      return a.first != b.first ? a.first > b.first : a.second < b.second;
                    });
  list.entries.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    list.entries.push_back({table.names()[scored[i].second], scored[i].first});
  }
  return list;
}

RecommendationList Recommender::recommend(std::span<const std::string> callee_names,
                                          std::size_t k,
                                          const std::set<std::string>& exclude) const {
  QueryEmbedding q = query_embedding(*table_, callee_names);
  RecommendationList list = top_k(q.vector, k, exclude);
  list.skipped_callees = std::move(q.skipped);
  return list;
}

RecommendationList top_k(const embed::EmbeddingTable& table, std::span<const double> query,
                         std::size_t k, const std::set<std::string>& exclude) {
  return Recommender(table).top_k(query, k, exclude);
}

std::vector<std::string> parse_query(std::string_view input) {
  const auto first = input.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && input[first] == '{') {
    const auto j = nlohmann::json::parse(input, nullptr, /*allow_exceptions=*/false);
    if (j.is_object() && j.contains("callees")) {
      if (!j["callees"].is_array()) throw RecommendError("\"callees\" must be an array of names");
      std::vector<std::string> names;
      for (const auto& item : j["callees"]) {
        if (!item.is_string()) throw RecommendError("\"callees\" must be an array of names");
        names.push_back(item.get<std::string>());
      }
      std::sort(names.begin(), names.end());
      names.erase(std::unique(names.begin(), names.end()), names.end());
      return names;
    }
  }

  // A snippet: either whole method definitions or a bare body.
  auto callees_of = [](std::string text) {
    const auto extraction = corpus::extract_methods({"<query>", "", std::move(text)});
    std::set<std::string> names;
    for (const auto& r : extraction.records) names.insert(r.callees.begin(), r.callees.end());
    return std::pair{extraction.records.size(), names};
  };
  const std::string snippet(input);
  auto [defs, names] = callees_of("class Query__ {\n" + snippet + "\n}\n");
  if (defs == 0) {
    names = callees_of("class Query__ { void query__() {\n" + snippet + "\n} }\n").second;
  }
  return {names.begin(), names.end()};
}

std::string to_json(const RecommendationList& list) {
  nlohmann::ordered_json j;
  j["candidates"] = nlohmann::ordered_json::array();
  for (const auto& c : list.entries) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["score"] = c.score;
    j["candidates"].push_back(std::move(e));
  }
  j["skipped"] = list.skipped_callees;
  return j.dump();
}

}  // namespace namerec::recommend
