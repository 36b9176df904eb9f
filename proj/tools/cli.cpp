// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "namerec/acg.hpp"
#include "namerec/corpus.hpp"
#include "namerec/embed.hpp"
#include "namerec/eval.hpp"
#include "namerec/hash.hpp"
#include "namerec/lexicon.hpp"
#include "namerec/recommend.hpp"
#include "namerec/synth.hpp"

namespace namerec::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

class MissingInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every knob of every stage. Each stage reads the subset it needs.
struct PipelineConfig {
  embed::TrainConfig train;
  std::string decay = "per-epoch";

  std::string corpus = ".";
  std::vector<std::string> extensions{".java"};
  bool cleanse = true;
  unsigned threads = 1;

  std::string records = "records.jsonl";
  std::string graph = "graph.tsv";
  std::string embeddings = "embeddings.txt";
  std::string trace = "loss.csv";
  std::string out;
  std::string lexicon;

  std::size_t top_k = 10;
  std::vector<std::string> query_callees;
  std::string query;
  std::string query_file;
  std::vector<std::string> exclude;

  std::size_t folds = 5;
  std::uint64_t seed = 7;
  std::string text_out;
  std::string per_verb_out;
  std::string embeddings_dir;

  eval::SynthConfig synth;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void require_exists(const fs::path& path) {
  if (!fs::exists(path)) throw MissingInput("input not found: " + path.string());
}

fs::path meta_path(const fs::path& artifact) {
  return fs::path(artifact.string() + ".meta.json");
}

struct Input {
  fs::path path;
  std::string content;
};

// Reads an upstream artifact. When it carries a metadata sidecar, the
// sidecar must name the expected producing stage and match the bytes.
Input read_artifact(const fs::path& path, std::string_view expected_stage) {
  require_exists(path);
  Input in{path, read_text(path)};
  const fs::path meta = meta_path(path);
  if (!fs::exists(meta)) return in;

  const auto j = ordered_json::parse(read_text(meta), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw FormatMismatch("unreadable metadata sidecar " + meta.string());
  }
  const std::string stage = j.value("stage", "");
  if (stage != expected_stage) {
    throw FormatMismatch(path.string() + " was produced by '" + stage + "', expected '" +
                         std::string(expected_stage) + "' output");
  }
  if (j.value("content_hash", "") != to_hex(fnv1a64(in.content))) {
    throw FormatMismatch(path.string() + " does not match its metadata (config hash " +
                         j.value("config_hash", "?") + "); regenerate it");
  }
  return in;
}

void write_artifact(const fs::path& path, std::string_view content, std::string_view stage,
                    const ordered_json& config, const std::vector<Input>& inputs) {
  write_text(path, content);
  ordered_json meta;
  meta["stage"] = stage;
  meta["config"] = config;
  meta["config_hash"] = to_hex(fnv1a64(config.dump()));
  meta["content_hash"] = to_hex(fnv1a64(content));
  meta["inputs"] = ordered_json::array();
  for (const auto& in : inputs) {
    meta["inputs"].push_back(
        {{"path", in.path.generic_string()}, {"content_hash", to_hex(fnv1a64(in.content))}});
  }
  write_text(meta_path(path), meta.dump(2) + "\n");
}

lexicon::Lexicon load_lexicon(const PipelineConfig& c) {
  if (c.lexicon.empty()) return lexicon::Lexicon::builtin();
  require_exists(c.lexicon);
  return lexicon::Lexicon::load(c.lexicon);
}

embed::TrainConfig train_config(const PipelineConfig& c) {
  embed::TrainConfig t = c.train;
  t.decay = c.decay == "per-step" ? embed::DecaySchedule::per_step
                                  : embed::DecaySchedule::per_epoch;
  embed::validate(t);
  return t;
}

ordered_json train_json(const embed::TrainConfig& t) {
  ordered_json j;
  j["dim"] = t.dim;
  j["loops"] = t.loops;
  j["batch_size"] = t.batch_size;
  j["negatives"] = t.negatives;
  j["lr0"] = t.lr0;
  j["lr_decay"] = t.lr_decay;
  j["decay"] = t.decay == embed::DecaySchedule::per_epoch ? "per_epoch" : "per_step";
  j["alpha"] = t.alpha;
  j["seed"] = t.seed;
  j["average_shared_rows"] = t.average_shared_rows;
  j["trace_every"] = t.trace_every;
  return j;
}

int run_extract(const PipelineConfig& c, std::ostream& out, std::ostream& err) {
  require_exists(c.corpus);
  corpus::ScanOptions options;
  options.extensions = c.extensions;
  auto scan = corpus::scan_corpus(c.corpus, options);
  const std::size_t scanned = scan.units.size();
  auto extracted = corpus::extract_all(std::move(scan.units), c.threads);

  std::size_t diagnostics = 0;
  for (const auto& u : extracted) {
    for (const auto& d : u.diagnostics) {
      err << u.unit.path << ':' << d.line << ": " << d.message << '\n';
      ++diagnostics;
    }
  }
  corpus::CleanseStats dropped;
  if (c.cleanse) {
    auto result = corpus::cleanse(std::move(extracted));
    extracted = std::move(result.kept);
    dropped = result.dropped;
  }
  const auto records = corpus::all_records(extracted);

  std::ostringstream jsonl;
  corpus::write_records_jsonl(jsonl, records);
  ordered_json config;
  config["extensions"] = c.extensions;
  config["cleanse"] = c.cleanse;
  write_artifact(c.out.empty() ? c.records : c.out, jsonl.str(), "extract", config, {});

  out << "files " << scanned << " (skipped " << scan.skipped_files << ", dropped test-package "
      << dropped.test_package << ", serial " << dropped.serial_numbered << "), methods "
      << records.size() << ", diagnostics " << diagnostics << '\n';
  return kOk;
}

int run_graph(const PipelineConfig& c, std::ostream& out) {
  Input in = read_artifact(c.records, "extract");
  std::istringstream stream(in.content);
  const auto records = corpus::read_records_jsonl(stream);
  const auto graph = acg::build_acg(records);

  std::ostringstream text;
  acg::write_graph(text, graph);
  write_artifact(c.out.empty() ? c.graph : c.out, text.str(), "graph", ordered_json::object(),
                 {in});
  out << "nodes " << graph.node_count() << ", edges " << graph.edge_count() << '\n';
  return kOk;
}

int run_train(const PipelineConfig& c, std::ostream& out) {
  const embed::TrainConfig t = train_config(c);
  Input in = read_artifact(c.graph, "graph");
  std::istringstream stream(in.content);
  const auto graph = acg::read_graph(stream);

  const auto result = embed::train(graph, t);
  std::ostringstream table;
  embed::save_embeddings(table, result.table);
  std::ostringstream trace;
  embed::write_trace_csv(trace, result.trace);

  const ordered_json config = train_json(t);
  write_artifact(c.out.empty() ? c.embeddings : c.out, table.str(), "train", config, {in});
  if (!c.trace.empty()) write_artifact(c.trace, trace.str(), "train-trace", config, {in});
  out << "trained " << result.table.size() << " names, loss " << result.trace.front().loss
      << " -> " << result.trace.back().loss << '\n';
  return kOk;
}

int run_recommend(const PipelineConfig& c, std::ostream& out) {
  if (c.top_k < 1) throw CLI::ValidationError("--top", "must be at least 1");
  Input in = read_artifact(c.embeddings, "train");
  std::istringstream stream(in.content);
  const auto table = embed::load_embeddings(stream);

  std::vector<std::string> callees;
  if (!c.query_callees.empty()) {
    callees = c.query_callees;
  } else if (!c.query.empty()) {
    callees = recommend::parse_query(c.query);
  } else if (!c.query_file.empty()) {
    require_exists(c.query_file);
    callees = recommend::parse_query(read_text(c.query_file));
  } else {
    std::string stdin_text((std::istreambuf_iterator<char>(std::cin)), {});
    callees = recommend::parse_query(stdin_text);
  }

  const recommend::Recommender rec(table);
  const std::set<std::string> exclude(c.exclude.begin(), c.exclude.end());
  const auto list = rec.recommend(callees, c.top_k, exclude);
  const std::string json = recommend::to_json(list) + "\n";
  if (c.out.empty()) {
    out << json;
  } else {
    write_text(c.out, json);
  }
  return kOk;
}

int run_evaluate(const PipelineConfig& c, std::ostream& out) {
  require_exists(c.corpus);
  const auto lex = load_lexicon(c);
  eval::EvalConfig ec;
  ec.train = train_config(c);
  ec.train.seed = c.seed;
  ec.folds = c.folds;
  ec.fold_seed = c.seed;
  ec.top_k = c.top_k;
  ec.threads = c.threads;

  corpus::ScanOptions options;
  options.extensions = c.extensions;
  auto scan = corpus::scan_corpus(c.corpus, options);
  const auto cv = eval::cross_validate(std::move(scan.units), ec, lex);

  const ordered_json config = ordered_json::parse(eval::config_json(ec, lex.fingerprint()));
  const std::string report_path = c.out.empty() ? "report.json" : c.out;
  write_artifact(report_path, eval::report_json(cv.report), "evaluate", config, {});
  if (!c.text_out.empty()) write_text(c.text_out, eval::report_text(cv.report));
  if (!c.per_verb_out.empty()) write_text(c.per_verb_out, eval::per_verb_csv(cv.report));
  if (!c.embeddings_dir.empty()) {
    for (std::size_t f = 0; f < cv.fold_tables.size(); ++f) {
      std::ostringstream table;
      embed::save_embeddings(table, cv.fold_tables[f]);
      write_artifact(fs::path(c.embeddings_dir) / ("fold" + std::to_string(f + 1) + ".emb"),
                     table.str(), "train", train_json(ec.train), {});
    }
  }
  out << eval::report_text(cv.report);
  return kOk;
}

int run_synth(const PipelineConfig& c, std::ostream& out) {
  const auto corpus = eval::generate_synthetic_corpus(c.synth);
  const fs::path root = c.out.empty() ? fs::path("synthetic-corpus") : fs::path(c.out);
  eval::write_corpus(corpus.units, root);
  out << "wrote " << corpus.units.size() << " files, " << corpus.planned.size()
      << " methods to " << root.generic_string() << '\n';
  return kOk;
}

void add_train_flags(CLI::App& app, PipelineConfig& c) {
  app.add_option("--dim", c.train.dim, "Embedding dimension")->check(CLI::PositiveNumber);
  app.add_option("--loops", c.train.loops, "Minibatch SGD steps");
  app.add_option("--batch", c.train.batch_size, "Methods per minibatch")->check(CLI::PositiveNumber);
  app.add_option("--negatives", c.train.negatives, "Negative samples per batch method");
  app.add_option("--lr", c.train.lr0, "Initial learning rate");
  app.add_option("--lr-decay", c.train.lr_decay, "Multiplicative learning-rate decay");
  app.add_option("--decay", c.decay, "When the decay applies")
      ->check(CLI::IsMember({"per-epoch", "per-step"}));
  app.add_option("--alpha", c.train.alpha, "Weight of the callee-mean term");
  app.add_flag("--average-shared-rows,!--no-average-shared-rows", c.train.average_shared_rows,
               "Average a row's batch gradient over the terms that touch it");
  app.add_option("--trace-every", c.train.trace_every, "Record the full loss every N steps");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  PipelineConfig c;
  CLI::App app{"Method-name recommendation from call-graph embeddings", "namerec"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  auto* extract = app.add_subcommand("extract", "Corpus -> method records (JSON Lines)");
  extract->add_option("--corpus", c.corpus, "Corpus root directory")->envname("NAMEREC_CORPUS");
  extract->add_option("--ext", c.extensions, "Source file extensions");
  extract->add_flag("--cleanse,!--no-cleanse", c.cleanse, "Drop test-package and serially numbered files");
  extract->add_option("--threads", c.threads, "Extraction threads");
  extract->add_option("--out", c.records, "Records output path")->envname("NAMEREC_RECORDS");

  auto* graph = app.add_subcommand("graph", "Method records -> aggregated call graph");
  graph->add_option("--records", c.records, "Records input (JSON Lines)")->envname("NAMEREC_RECORDS");
  graph->add_option("--out", c.graph, "Graph output path")->envname("NAMEREC_GRAPH");

  auto* train = app.add_subcommand("train", "Call graph -> embedding table");
  train->add_option("--graph", c.graph, "Graph input")->envname("NAMEREC_GRAPH");
  train->add_option("--out", c.embeddings, "Embedding output path")->envname("NAMEREC_EMBEDDINGS");
  train->add_option("--trace", c.trace, "Loss trace CSV path (empty to skip)");
  train->add_option("--seed", c.train.seed, "Random seed");
  add_train_flags(*train, c);

  auto* rec = app.add_subcommand("recommend", "Embedding table + query -> candidate names (JSON)");
  rec->add_option("--embeddings", c.embeddings, "Embedding table")->envname("NAMEREC_EMBEDDINGS");
  rec->add_option("--top", c.top_k, "Number of candidates");
  rec->add_option("--query-callees", c.query_callees, "Comma-separated callee names")->delimiter(',');
  rec->add_option("--query", c.query, "Inline query: {\"callees\":[...]} or a method body");
  rec->add_option("--query-file", c.query_file, "File holding the query (JSON or source)");
  rec->add_option("--exclude", c.exclude, "Names never to return")->delimiter(',');
  rec->add_option("--out", c.out, "Write the JSON here instead of stdout");

  auto* evaluate = app.add_subcommand("evaluate", "Cross-validated top-k correctness report");
  evaluate->add_option("--corpus", c.corpus, "Corpus root directory")->envname("NAMEREC_CORPUS");
  evaluate->add_option("--ext", c.extensions, "Source file extensions");
  evaluate->add_option("--folds", c.folds, "Cross-validation folds");
  evaluate->add_option("--seed", c.seed, "Seed for the fold split and training");
  evaluate->add_option("--top", c.top_k, "Candidates considered per method");
  evaluate->add_option("--lexicon", c.lexicon, "Verb lexicon file (empty: built-in)")
      ->envname("NAMEREC_LEXICON");
  evaluate->add_option("--threads", c.threads, "Worker threads for extraction and scoring");
  evaluate->add_option("--out", c.out, "Report JSON path (default report.json)");
  evaluate->add_option("--text", c.text_out, "Plain-text table path");
  evaluate->add_option("--per-verb", c.per_verb_out, "Per-verb correctness CSV path");
  evaluate->add_option("--embeddings-dir", c.embeddings_dir, "Directory for per-fold tables");
  add_train_flags(*evaluate, c);

  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus with planted families");
  synth->add_option("--out", c.out, "Output directory (default synthetic-corpus)");
  synth->add_option("--families", c.synth.families, "Method families");
  synth->add_option("--methods", c.synth.methods_per_family, "Methods per family");
  synth->add_option("--pool", c.synth.callee_pool_size, "Private callee names per family");
  synth->add_option("--min-callees", c.synth.min_callees, "Fewest callees per method");
  synth->add_option("--max-callees", c.synth.max_callees, "Most callees per method");
  synth->add_option("--per-file", c.synth.methods_per_file, "Methods per source file");
  synth->add_option("--seed", c.synth.seed, "Random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*extract) return run_extract(c, out, err);
    if (*graph) return run_graph(c, out);
    if (*train) return run_train(c, out);
    if (*rec) return run_recommend(c, out);
    if (*evaluate) return run_evaluate(c, out);
    if (*synth) return run_synth(c, out);
  } catch (const MissingInput& e) {
    err << "error: " << e.what() << '\n';
    return kMissingInput;
  } catch (const FormatMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kFormatMismatch;
  } catch (const embed::FormatError& e) {
    err << "error: embedding file: " << e.what() << '\n';
    return kFormatMismatch;
  } catch (const embed::TrainingError& e) {
    err << "error: training: " << e.what() << '\n';
    return kTrainingFailed;
  } catch (const embed::EmbeddingError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const acg::GraphError& e) {
    err << "error: " << e.what() << '\n';
    return kFormatMismatch;
  } catch (const corpus::CorpusError& e) {
    err << "error: " << e.what() << '\n';
    return kFormatMismatch;
  } catch (const lexicon::LexiconError& e) {
    err << "error: " << e.what() << '\n';
    return kFormatMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace namerec::cli
