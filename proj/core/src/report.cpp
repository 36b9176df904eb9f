// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "namerec/eval.hpp"
#include "namerec/hash.hpp"

namespace namerec::eval {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_object(const EvalConfig& c, std::uint64_t lexicon_fingerprint) {
  ordered_json j;
  j["dim"] = c.train.dim;
  j["loops"] = c.train.loops;
  j["batch_size"] = c.train.batch_size;
  j["negatives"] = c.train.negatives;
  j["lr0"] = c.train.lr0;
  j["lr_decay"] = c.train.lr_decay;
  j["decay"] = c.train.decay == embed::DecaySchedule::per_epoch ? "per_epoch" : "per_step";
  j["alpha"] = c.train.alpha;
  j["seed"] = c.train.seed;
  j["average_shared_rows"] = c.train.average_shared_rows;
  j["folds"] = c.folds;
  j["fold_seed"] = c.fold_seed;
  j["top_k"] = c.top_k;
  j["lexicon"] = to_hex(lexicon_fingerprint);
  return j;
}

ordered_json tally_json(const Tally& t) {
  ordered_json j;
  j["correct"] = t.correct;
  j["total"] = t.total;
  j["ratio"] = t.ratio();
  return j;
}

ordered_json task_json(const TaskTally& t) {
  ordered_json j;
  for (Category c : kCategories) j[std::string(to_string(c))] = tally_json(t[c]);
  j["non_getter_setter"] = tally_json(t.non_getter_setter());
  j["all"] = tally_json(t.all());
  return j;
}

ordered_json exclusions_json(const Exclusions& e) {
  ordered_json j;
  j["no_callees"] = e.no_callees;
  j["no_known_callees"] = e.no_known_callees;
  j["no_verb"] = e.no_verb;
  j["no_noun"] = e.no_noun;
  return j;
}

std::string cell(const Tally& t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%6.2f%% (%zu / %zu)", 100.0 * t.ratio(), t.correct, t.total);
  return buf;
}

void task_table(std::ostringstream& out, const EvaluationReport& report, Task task) {
  const char* word = task == Task::verb ? "verb" : "noun";
  char line[256];
  out << "Top-" << report.config.top_k << " " << word << " correctness\n";
  std::snprintf(line, sizeof(line), "%-8s | %-24s | %-28s | %-28s\n", "", "getter/setter",
                (std::string(word) + " in callee words").c_str(),
                (std::string(word) + " not in callee words").c_str());
  out << line;
  auto row = [&](const std::string& label, const TaskTally& t) {
    std::snprintf(line, sizeof(line), "%-8s | %-24s | %-28s | %-28s\n", label.c_str(),
                  cell(t[Category::getter_setter]).c_str(), cell(t[Category::hint_present]).c_str(),
                  cell(t[Category::hint_absent]).c_str());
    out << line;
  };
  for (const auto& f : report.folds) {
    row("part" + std::to_string(f.fold), task == Task::verb ? f.verb : f.noun);
  }
  const TaskTally total = task == Task::verb ? report.verb_total() : report.noun_total();
  row("Total", total);
  std::snprintf(line, sizeof(line), "%-8s | %-24s | %-59s\n", "", "",
                ("except getter/setter: " + cell(total.non_getter_setter())).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "%-8s | %-86s\n", "", ("all: " + cell(total.all())).c_str());
  out << line;
}

}  // namespace

std::string config_json(const EvalConfig& config, std::uint64_t lexicon_fingerprint) {
  return config_object(config, lexicon_fingerprint).dump();
}

std::string report_json(const EvaluationReport& report) {
  ordered_json j;
  const std::string config = config_json(report.config, report.lexicon_fingerprint);
  j["config"] = ordered_json::parse(config);
  j["config_hash"] = to_hex(fnv1a64(config));
  j["units"] = report.units;
  j["cleansing"] = {{"test_package", report.cleansing.test_package},
                    {"serial_numbered", report.cleansing.serial_numbered}};
  j["categories"] = ordered_json::array();
  for (Category c : kCategories) j["categories"].push_back(std::string(to_string(c)));

  j["folds"] = ordered_json::array();
  for (const auto& f : report.folds) {
    ordered_json fj;
    fj["fold"] = f.fold;
    fj["train_units"] = f.train_units;
    fj["test_units"] = f.test_units;
    fj["test_methods"] = f.test_methods;
    fj["tasks"]["verb"] = task_json(f.verb);
    fj["tasks"]["noun"] = task_json(f.noun);
    fj["exclusions"] = exclusions_json(f.exclusions);
    j["folds"].push_back(std::move(fj));
  }
  j["test_methods"] = report.test_methods_total();
  j["tasks"]["verb"] = task_json(report.verb_total());
  j["tasks"]["noun"] = task_json(report.noun_total());
  j["exclusions"] = exclusions_json(report.exclusions_total());
  return j.dump(2) + "\n";
}

std::string report_text(const EvaluationReport& report) {
  std::ostringstream out;
  task_table(out, report, Task::verb);
  out << '\n';
  task_table(out, report, Task::noun);
  const Exclusions e = report.exclusions_total();
  out << "\nmethods evaluated: " << report.test_methods_total()
      << "  excluded: no callees " << e.no_callees << ", no known callees "
      << e.no_known_callees << ", no verb " << e.no_verb << ", no noun " << e.no_noun << '\n';
  out << "files: " << report.units << "  dropped: test package "
      << report.cleansing.test_package << ", serially numbered "
      << report.cleansing.serial_numbered << '\n';
  return out.str();
}

std::string per_verb_csv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "verb,correct,total,ratio\n";
  char ratio[32];
  for (const auto& [verb, t] : report.per_verb_total()) {
    std::snprintf(ratio, sizeof(ratio), "%.6f", t.ratio());
    out << verb << ',' << t.correct << ',' << t.total << ',' << ratio << '\n';
  }
  return out.str();
}

}  // namespace namerec::eval
