// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "namerec/eval.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <optional>
#include <thread>

#include "namerec/acg.hpp"
#include "namerec/random.hpp"
#include "namerec/recommend.hpp"

namespace namerec::eval {

std::string_view to_string(Category category) {
  switch (category) {
    case Category::getter_setter: return "getter_setter";
    case Category::hint_present: return "hint_present";
    case Category::hint_absent: return "hint_absent";
  }
  return "?";
}

std::string_view to_string(Task task) { return task == Task::verb ? "verb" : "noun"; }

std::vector<std::vector<std::size_t>> split_folds(std::size_t unit_count, std::size_t k,
                                                  std::uint64_t seed) {
  if (k < 2) throw EvalError("fold count must be at least 2");
  if (unit_count < k) {
    throw EvalError("cannot split " + std::to_string(unit_count) + " files into " +
                    std::to_string(k) + " folds");
  }
  std::vector<std::size_t> order(unit_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span(order));

  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t i = 0; i < order.size(); ++i) folds[i % k].push_back(order[i]);
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

std::set<std::string> query_words(std::span<const std::string> callees) {
  std::set<std::string> words;
  for (const auto& c : callees) {
    for (auto& w : lexicon::split_identifier(c)) words.insert(std::move(w));
  }
  return words;
}

Category categorize(const corpus::MethodRecord& method, Task task,
                    const lexicon::Lexicon& lexicon) {
  const auto verb = lexicon.verb_of(method.name);
  if (verb && (*verb == "get" || *verb == "set")) return Category::getter_setter;

  const auto words = query_words(method.callees);
  if (task == Task::verb) {
    return verb && words.contains(*verb) ? Category::hint_present : Category::hint_absent;
  }
  for (const auto& noun : lexicon.nouns_of(method.name)) {
    if (words.contains(noun)) return Category::hint_present;
  }
  return Category::hint_absent;
}

Tally TaskTally::non_getter_setter() const {
  Tally t = (*this)[Category::hint_present];
  t += (*this)[Category::hint_absent];
  return t;
}

Tally TaskTally::all() const {
  Tally t = non_getter_setter();
  t += (*this)[Category::getter_setter];
  return t;
}

TaskTally& TaskTally::operator+=(const TaskTally& other) {
  for (std::size_t i = 0; i < by_category.size(); ++i) by_category[i] += other.by_category[i];
  return *this;
}

Exclusions& Exclusions::operator+=(const Exclusions& other) {
  no_callees += other.no_callees;
  no_known_callees += other.no_known_callees;
  no_verb += other.no_verb;
  no_noun += other.no_noun;
  return *this;
}

namespace {

enum class Status { no_callees, no_known_callees, scored };

struct Scored {
  Category category;
  bool correct;
};

struct Outcome {
  Status status = Status::no_callees;
  std::optional<std::string> verb;
  std::optional<Scored> verb_result;
  std::optional<Scored> noun_result;
};

Outcome score_method(const corpus::MethodRecord& m, const recommend::Recommender& rec,
                     const lexicon::Lexicon& lexicon, std::size_t k) {
  Outcome out;
  if (m.callees.empty()) return out;
  const auto& table = rec.table();
  const bool any_known = std::any_of(m.callees.begin(), m.callees.end(),
                                     [&](const std::string& c) { return table.find(c).has_value(); });
  if (!any_known) {
    out.status = Status::no_known_callees;
    return out;
  }
  out.status = Status::scored;
  const auto list = rec.recommend(m.callees, k);

  std::set<std::string> candidate_verbs;
  std::set<std::string> candidate_nouns;
  for (const auto& c : list.entries) {
    if (auto v = lexicon.verb_of(c.name)) candidate_verbs.insert(std::move(*v));
    candidate_nouns.merge(lexicon.nouns_of(c.name));
  }

  out.verb = lexicon.verb_of(m.name);
  if (out.verb) {
    out.verb_result = Scored{categorize(m, Task::verb, lexicon), candidate_verbs.contains(*out.verb)};
  }
  const auto nouns = lexicon.nouns_of(m.name);
  if (!nouns.empty()) {
    const bool hit = std::any_of(nouns.begin(), nouns.end(),
                                 [&](const std::string& n) { return candidate_nouns.contains(n); });
    out.noun_result = Scored{categorize(m, Task::noun, lexicon), hit};
  }
  return out;
}

}  // namespace

FoldReport evaluate(const embed::EmbeddingTable& table,
                    std::span<const corpus::MethodRecord> test_methods,
                    const lexicon::Lexicon& lexicon, std::size_t k, unsigned threads) {
  const recommend::Recommender rec(table);
  std::vector<Outcome> outcomes(test_methods.size());

  if (threads <= 1 || test_methods.size() < 2) {
    for (std::size_t i = 0; i < test_methods.size(); ++i) {
      outcomes[i] = score_method(test_methods[i], rec, lexicon, k);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < test_methods.size(); i = next++) {
          outcomes[i] = score_method(test_methods[i], rec, lexicon, k);
        }
      });
    }
  }

  FoldReport report;
  report.test_methods = test_methods.size();
  for (const auto& o : outcomes) {
    if (o.status == Status::no_callees) {
      ++report.exclusions.no_callees;
      continue;
    }
    if (o.status == Status::no_known_callees) {
      ++report.exclusions.no_known_callees;
      continue;
    }
    if (o.verb_result) {
      Tally& t = report.verb[o.verb_result->category];
      ++t.total;
      Tally& pv = report.per_verb[*o.verb];
      ++pv.total;
      if (o.verb_result->correct) {
        ++t.correct;
        ++pv.correct;
      }
    } else {
      ++report.exclusions.no_verb;
    }
    if (o.noun_result) {
      Tally& t = report.noun[o.noun_result->category];
      ++t.total;
      if (o.noun_result->correct) ++t.correct;
    } else {
      ++report.exclusions.no_noun;
    }
  }
  return report;
}

TaskTally EvaluationReport::verb_total() const {
  TaskTally t;
  for (const auto& f : folds) t += f.verb;
  return t;
}

TaskTally EvaluationReport::noun_total() const {
  TaskTally t;
  for (const auto& f : folds) t += f.noun;
  return t;
}

Exclusions EvaluationReport::exclusions_total() const {
  Exclusions e;
  for (const auto& f : folds) e += f.exclusions;
  return e;
}

std::size_t EvaluationReport::test_methods_total() const {
  std::size_t n = 0;
  for (const auto& f : folds) n += f.test_methods;
  return n;
}

std::map<std::string, Tally> EvaluationReport::per_verb_total() const {
  std::map<std::string, Tally> out;
  for (const auto& f : folds) {
    for (const auto& [verb, t] : f.per_verb) out[verb] += t;
  }
  return out;
}

CrossValidation cross_validate(std::vector<corpus::SourceUnit> units, const EvalConfig& config,
                               const lexicon::Lexicon& lexicon) {
  CrossValidation cv;
  EvaluationReport& report = cv.report;
  report.config = config;
  report.lexicon_fingerprint = lexicon.fingerprint();
  report.units = units.size();

  auto cleansed = corpus::cleanse(corpus::extract_all(std::move(units), config.threads));
  report.cleansing = cleansed.dropped;
  const auto& kept = cleansed.kept;
  const auto folds = split_folds(kept.size(), config.folds, config.fold_seed);

  std::vector<std::size_t> fold_of(kept.size());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (std::size_t u : folds[f]) fold_of[u] = f;
  }

  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<corpus::MethodRecord> train_records;
    std::vector<corpus::MethodRecord> test_records;
    for (std::size_t u = 0; u < kept.size(); ++u) {
      auto& target = fold_of[u] == f ? test_records : train_records;
      target.insert(target.end(), kept[u].records.begin(), kept[u].records.end());
    }

    const acg::CallGraph graph = acg::build_acg(train_records);
    embed::EmbeddingTable table =
        graph.empty() ? embed::EmbeddingTable(config.train.dim, {})
                      : embed::train(graph, config.train).table;

    FoldReport fr = evaluate(table, test_records, lexicon, config.top_k, config.threads);
    fr.fold = f + 1;
    fr.test_units = folds[f].size();
    fr.train_units = kept.size() - folds[f].size();
    report.folds.push_back(std::move(fr));
    cv.fold_tables.push_back(std::move(table));
  }
  return cv;
}

}  // namespace namerec::eval
