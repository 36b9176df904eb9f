// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include <gtest/gtest.h>

#include <set>

#include "json.hpp"
#include "namerec/eval.hpp"
#include "namerec/hash.hpp"
#include "namerec/synth.hpp"
#include "test_support.hpp"

namespace namerec::eval {
namespace {

using corpus::MethodRecord;
using embed::EmbeddingTable;
using Names = std::vector<std::string>;

const lexicon::Lexicon& lex() { return lexicon::Lexicon::builtin(); }

MethodRecord method(std::string name, Names callees) {
  return {std::move(name), "p", "p/A.java", std::move(callees)};
}

EmbeddingTable table_of(const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  Names names;
  for (const auto& [n, v] : rows) names.push_back(n);
  EmbeddingTable t(rows.front().second.size(), names);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].second.begin(), rows[i].second.end(), t.row(i).begin());
  }
  return t;
}

// ---- split_folds ----------------------------------------------------------

TEST(SplitFolds, BalancedAndSeeded) {
  const auto folds = split_folds(10, 5, 7);
  ASSERT_EQ(folds.size(), 5u);
  for (const auto& f : folds) EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(split_folds(10, 5, 7), folds);
  EXPECT_NE(split_folds(10, 5, 8), folds);
}

TEST(SplitFolds, Errors) {
  EXPECT_THROW(split_folds(3, 5, 1), EvalError);
  EXPECT_THROW(split_folds(10, 1, 1), EvalError);
}

TEST(SplitFoldsProperty, PartitionLaw) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.uniform_index(6);
    const std::size_t n = k + rng.uniform_index(50);
    const auto folds = split_folds(n, k, rng.next());
    std::vector<int> seen(n, 0);
    std::size_t smallest = n, largest = 0;
    for (const auto& f : folds) {
      EXPECT_TRUE(std::is_sorted(f.begin(), f.end()));
      for (auto u : f) ++seen[u];
      smallest = std::min(smallest, f.size());
      largest = std::max(largest, f.size());
    }
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    EXPECT_LE(largest - smallest, 1u);
  }
}

// ---- categorize -------------------------------------------------------------

TEST(Categorize, Examples) {
  EXPECT_EQ(categorize(method("getName", {"read"}), Task::verb, lex()), Category::getter_setter);
  EXPECT_EQ(categorize(method("setName", {"read"}), Task::noun, lex()), Category::getter_setter);
  EXPECT_EQ(categorize(method("parseHeader", {"parseToken"}), Task::verb, lex()),
            Category::hint_present);
  EXPECT_EQ(categorize(method("flushCache", {"write", "clear"}), Task::verb, lex()),
            Category::hint_absent);
  // "is" is not a getter prefix for this purpose.
  EXPECT_EQ(categorize(method("isEmpty", {"size"}), Task::verb, lex()), Category::hint_absent);
}

TEST(Categorize, NounTaskLooksForNameNounsInCalleeWords) {
  EXPECT_EQ(categorize(method("loadConfig", {"readConfigFile"}), Task::noun, lex()),
            Category::hint_present);
  EXPECT_EQ(categorize(method("loadConfig", {"readFile"}), Task::noun, lex()),
            Category::hint_absent);
  EXPECT_EQ(categorize(method("loadConfig", {"CONFIG_PATH"}), Task::noun, lex()),
            Category::hint_present);
}

TEST(QueryWords, UnionOfSplitCallees) {
  const Names callees{"readHTTPHeader", "close", "read"};
  EXPECT_EQ(query_words(callees), (std::set<std::string>{"close", "header", "http", "read"}));
}

// ---- evaluate ---------------------------------------------------------------

TEST(Evaluate, VerbHitFromASharedVerb) {
  const auto t = table_of({{"loadAll", {0, 1}}, {"open", {1, 0}}, {"saveAll", {1, 0.1}}});
  const std::vector<MethodRecord> test{method("saveFile", {"open"})};
  const auto r = evaluate(t, test, lex(), 2);
  EXPECT_EQ(r.verb[Category::hint_absent], (Tally{1, 1}));
  EXPECT_EQ(r.noun[Category::hint_absent], (Tally{0, 1}));
  EXPECT_EQ(r.per_verb.at("save"), (Tally{1, 1}));
  // With k = 1 only "open" is returned.
  EXPECT_EQ(evaluate(t, test, lex(), 1).verb[Category::hint_absent], (Tally{0, 1}));
}

TEST(Evaluate, WrongVerbAndNoun) {
  const auto t = table_of({{"read", {1, 0}}, {"setValue", {1, 0}}});
  const std::vector<MethodRecord> test{method("getName", {"read"})};
  const auto r = evaluate(t, test, lex(), 10);
  EXPECT_EQ(r.verb[Category::getter_setter], (Tally{0, 1}));
  EXPECT_EQ(r.noun[Category::getter_setter], (Tally{0, 1}));
}

TEST(Evaluate, ExclusionsAreCounted) {
  const auto t = table_of({{"open", {1, 0}}, {"saveFile", {1, 0}}});
  const std::vector<MethodRecord> test{
      method("run", {}),                 // no callees
      method("parseAll", {"mystery"}),   // nothing known
      method("file", {"open"}),          // no verb: noun task only
      method("save", {"open"}),          // no noun: verb task only
  };
  const auto r = evaluate(t, test, lex(), 10);
  EXPECT_EQ(r.exclusions, (Exclusions{1, 1, 1, 1}));
  EXPECT_EQ(r.verb.all().total, 1u);
  EXPECT_EQ(r.noun.all().total, 1u);
  EXPECT_EQ(r.verb.all().correct, 1u);  // saveFile carries "save"
  EXPECT_EQ(r.noun.all().correct, 1u);  // and "file"
  EXPECT_EQ(r.test_methods, 4u);
}

struct RandomCase {
  EmbeddingTable table;
  std::vector<MethodRecord> methods;
};

RandomCase random_case(Rng& rng) {
  static const char* kVerbs[] = {"get", "set", "load", "save", "parse", "close", "open"};
  static const char* kNouns[] = {"File", "Name", "Config", "Buffer", "Token", ""};
  std::set<std::string> names;
  while (names.size() < 25) {
    names.insert(std::string(kVerbs[rng.uniform_index(7)]) + kNouns[rng.uniform_index(6)] +
                 (rng.uniform_index(2) ? "" : "X" + std::to_string(rng.uniform_index(9))));
  }
  RandomCase c{EmbeddingTable(3, {names.begin(), names.end()}), {}};
  for (double& x : c.table.values()) x = 2 * rng.uniform_unit() - 1;
  const Names pool(names.begin(), names.end());
  for (int i = 0; i < 30; ++i) {
    Names callees;
    const auto n = rng.uniform_index(4);
    for (std::uint64_t j = 0; j < n; ++j) {
      callees.push_back(rng.uniform_index(5) == 0 ? "unknownCall" : pool[rng.uniform_index(pool.size())]);
    }
    std::sort(callees.begin(), callees.end());
    callees.erase(std::unique(callees.begin(), callees.end()), callees.end());
    std::string name = std::string(kVerbs[rng.uniform_index(7)]) + kNouns[rng.uniform_index(6)];
    if (rng.uniform_index(6) == 0) name = "xyz";  // neither verb nor useful noun split
    c.methods.push_back(method(name, callees));
  }
  return c;
}

TEST(EvaluateProperty, EveryMethodIsAccountedForOncePerTask) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_case(rng);
    const auto r = evaluate(c.table, c.methods, lex(), 10);
    const auto& e = r.exclusions;
    EXPECT_EQ(r.verb.all().total + e.no_verb + e.no_callees + e.no_known_callees, c.methods.size());
    EXPECT_EQ(r.noun.all().total + e.no_noun + e.no_callees + e.no_known_callees, c.methods.size());
    for (Category cat : kCategories) {
      EXPECT_LE(r.verb[cat].correct, r.verb[cat].total);
      EXPECT_LE(r.noun[cat].correct, r.noun[cat].total);
    }
  }
}

TEST(EvaluateProperty, LargerKNeverLosesACorrectAnswer) {
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_case(rng);
    FoldReport previous;
    for (std::size_t k = 1; k <= 26; ++k) {
      const auto r = evaluate(c.table, c.methods, lex(), k);
      if (k > 1) {
        for (Category cat : kCategories) {
          EXPECT_GE(r.verb[cat].correct, previous.verb[cat].correct);
          EXPECT_GE(r.noun[cat].correct, previous.noun[cat].correct);
          EXPECT_EQ(r.verb[cat].total, previous.verb[cat].total);
        }
      }
      previous = r;
    }
  }
}

TEST(EvaluateProperty, ThreadedScoringMatchesSequential) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_case(rng);
    EXPECT_EQ(evaluate(c.table, c.methods, lex(), 5, 1), evaluate(c.table, c.methods, lex(), 5, 4));
  }
}

// ---- cross validation and reports -------------------------------------------

EvalConfig quick_config() {
  EvalConfig c;
  c.train.dim = 8;
  c.train.loops = 60;
  c.train.batch_size = 50;
  c.folds = 3;
  return c;
}

std::vector<corpus::SourceUnit> small_synthetic() {
  SynthConfig s;
  s.families = 4;
  s.methods_per_family = 6;
  s.callee_pool_size = 8;
  s.methods_per_file = 2;
  return generate_synthetic_corpus(s).units;
}

TEST(CrossValidate, ReportArithmetic) {
  const auto cv = cross_validate(small_synthetic(), quick_config(), lex());
  const auto& r = cv.report;
  ASSERT_EQ(r.folds.size(), 3u);
  ASSERT_EQ(cv.fold_tables.size(), 3u);
  std::size_t test_units = 0;
  TaskTally verb, noun;
  for (const auto& f : r.folds) {
    test_units += f.test_units;
    EXPECT_EQ(f.train_units + f.test_units, r.units);
    verb += f.verb;
    noun += f.noun;
  }
  EXPECT_EQ(test_units, r.units);
  EXPECT_EQ(verb, r.verb_total());
  EXPECT_EQ(noun, r.noun_total());
  EXPECT_EQ(r.test_methods_total(), 24u);
}

TEST(CrossValidate, DroppedFilesAreReported) {
  auto units = small_synthetic();
  units.push_back({"t/T.java", "app.test", "package app.test; class T { void a() { b(); } }"});
  units.push_back({"s/S.java", "s", "package s; class S { void get0() {} void get1() {} void get2() {} }"});
  const auto r = cross_validate(units, quick_config(), lex()).report;
  EXPECT_EQ(r.cleansing, (corpus::CleanseStats{1, 1}));
  EXPECT_EQ(r.units, units.size());
}

TEST(ReportJson, KeysDeterminismAndHash) {
  const auto cv = cross_validate(small_synthetic(), quick_config(), lex());
  const auto text = report_json(cv.report);
  EXPECT_EQ(text, report_json(cross_validate(small_synthetic(), quick_config(), lex()).report));
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"config", "config_hash", "folds", "categories", "tasks", "exclusions", "cleansing"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["config_hash"], to_hex(fnv1a64(config_json(quick_config(), lex().fingerprint()))));
  EXPECT_EQ(j["folds"].size(), 3u);
  const double ratio = j["tasks"]["verb"]["all"]["ratio"];
  EXPECT_GE(ratio, 0.0);
  EXPECT_LE(ratio, 1.0);
}

TEST(ReportText, RowsForEveryFold) {
  const auto cv = cross_validate(small_synthetic(), quick_config(), lex());
  const auto text = report_text(cv.report);
  for (const char* needle : {"part1", "part2", "part3", "Total", "getter/setter", "%"}) {
    EXPECT_NE(text.find(needle), std::string::npos) << needle;
  }
}

TEST(PerVerbCsv, Format) {
  EvaluationReport r;
  FoldReport f;
  f.per_verb["load"] = {1, 4};
  f.per_verb["save"] = {2, 2};
  r.folds = {f, f};
  EXPECT_EQ(per_verb_csv(r), "verb,correct,total,ratio\nload,2,8,0.250000\nsave,4,4,1.000000\n");
}

}  // namespace
}  // namespace namerec::eval
