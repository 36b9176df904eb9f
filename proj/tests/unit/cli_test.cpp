// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace namerec::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string p(const std::filesystem::path& path) { return path.string(); }

class CliPipeline : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(run_cli({"synth", "--out", p(dir_ / "corpus"), "--families", "4", "--methods", "8",
                       "--pool", "8"})
                  .code,
              kOk);
  }
  Result extract() {
    return run_cli({"extract", "--corpus", p(dir_ / "corpus"), "--out", p(dir_ / "rec.jsonl")});
  }
  Result graph() {
    return run_cli({"graph", "--records", p(dir_ / "rec.jsonl"), "--out", p(dir_ / "g.tsv")});
  }
  Result train() {
    return run_cli({"train", "--graph", p(dir_ / "g.tsv"), "--out", p(dir_ / "e.txt"), "--trace",
                    p(dir_ / "loss.csv"), "--dim", "8", "--loops", "100", "--batch", "20"});
  }
  testing::TempDir dir_;
};

TEST_F(CliPipeline, StagesChainThroughFiles) {
  const auto e = extract();
  ASSERT_EQ(e.code, kOk) << e.err;
  EXPECT_NE(e.out.find("methods 32"), std::string::npos) << e.out;
  ASSERT_EQ(graph().code, kOk);
  const auto t = train();
  ASSERT_EQ(t.code, kOk) << t.err;
  EXPECT_EQ(testing::read_file(dir_ / "loss.csv").rfind("step,loss,learning_rate\n", 0), 0u);

  const auto r = run_cli({"recommend", "--embeddings", p(dir_ / "e.txt"), "--top", "10",
                          "--query-callees", "readAlphaBuffer,checkAlphaBuffer,nosuchname"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(j["candidates"].size(), 10u);
  EXPECT_GT(j["candidates"].size(), 0u);
  EXPECT_EQ(j["skipped"], nlohmann::json::array({"nosuchname"}));
}

TEST_F(CliPipeline, EveryArtifactCarriesItsConfig) {
  ASSERT_EQ(extract().code, kOk);
  ASSERT_EQ(graph().code, kOk);
  ASSERT_EQ(train().code, kOk);
  for (const char* artifact : {"rec.jsonl", "g.tsv", "e.txt", "loss.csv"}) {
    const auto meta = nlohmann::json::parse(
        testing::read_file(dir_ / (std::string(artifact) + ".meta.json")));
    EXPECT_EQ(meta["config_hash"].get<std::string>().size(), 16u) << artifact;
    EXPECT_TRUE(meta.contains("stage"));
  }
  const auto meta = nlohmann::json::parse(testing::read_file(dir_ / "e.txt.meta.json"));
  EXPECT_EQ(meta["config"]["dim"], 8);
  EXPECT_EQ(meta["config"]["loops"], 100);
  EXPECT_EQ(meta["config"]["lr0"], 0.75);
}

TEST_F(CliPipeline, WrongStageInputIsAFormatMismatch) {
  ASSERT_EQ(extract().code, kOk);
  const auto r = run_cli({"train", "--graph", p(dir_ / "rec.jsonl"), "--out", p(dir_ / "e.txt")});
  EXPECT_EQ(r.code, kFormatMismatch);
  EXPECT_NE(r.err.find("extract"), std::string::npos) << r.err;
}

TEST_F(CliPipeline, EditedArtifactIsRejected) {
  ASSERT_EQ(extract().code, kOk);
  ASSERT_EQ(graph().code, kOk);
  testing::write_file(dir_ / "g.tsv", testing::read_file(dir_ / "g.tsv") + "#leaf extra\n");
  EXPECT_EQ(train().code, kFormatMismatch);
}

TEST_F(CliPipeline, ArtifactsWithoutSidecarAreAccepted) {
  testing::write_file(dir_ / "g.tsv", "#nodes 3 #edges 2\na\tb\na\tc\n");
  EXPECT_EQ(train().code, kOk);
}

TEST_F(CliPipeline, MalformedInputsHaveFormatCode) {
  testing::write_file(dir_ / "g.tsv", "#nodes 3 #edges 2\nnot an edge\n");
  EXPECT_EQ(train().code, kFormatMismatch);
  testing::write_file(dir_ / "e.txt", "2 2\na 1 2\n");
  EXPECT_EQ(run_cli({"recommend", "--embeddings", p(dir_ / "e.txt"), "--query-callees", "a"}).code,
            kFormatMismatch);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, kUsage);
  EXPECT_EQ(run_cli({"train", "--no-such-flag"}).code, kUsage);
  EXPECT_EQ(run_cli({"train", "--dim", "abc"}).code, kUsage);
  EXPECT_EQ(run_cli({"train", "--decay", "hourly"}).code, kUsage);
}

TEST(Cli, InvalidHyperparametersAreUsageErrors) {
  testing::TempDir dir;
  testing::write_file(dir / "g.tsv", "#nodes 2 #edges 1\na\tb\n");
  EXPECT_EQ(run_cli({"train", "--graph", p(dir / "g.tsv"), "--alpha", "1.5"}).code, kUsage);
}

TEST(Cli, MissingInputsHaveTheirOwnCode) {
  testing::TempDir dir;
  EXPECT_EQ(run_cli({"graph", "--records", p(dir / "none.jsonl")}).code, kMissingInput);
  EXPECT_EQ(run_cli({"train", "--graph", p(dir / "none.tsv")}).code, kMissingInput);
  EXPECT_EQ(run_cli({"recommend", "--embeddings", p(dir / "none.txt"), "--query-callees", "a"}).code,
            kMissingInput);
  EXPECT_EQ(run_cli({"extract", "--corpus", p(dir / "nowhere")}).code, kMissingInput);
  EXPECT_EQ(run_cli({"evaluate", "--corpus", p(dir / "nowhere")}).code, kMissingInput);
}

TEST(Cli, DivergentTrainingHasItsOwnCode) {
  testing::TempDir dir;
  std::string g = "#nodes 41 #edges 40\n";
  for (int i = 0; i < 40; ++i) g += "m" + std::to_string(100 + i) + "\thub\n";
  testing::write_file(dir / "g.tsv", g);
  const auto r = run_cli({"train", "--graph", p(dir / "g.tsv"), "--out", p(dir / "e.txt"),
                          "--lr", "50", "--no-average-shared-rows", "--batch", "41", "--dim", "4"});
  EXPECT_EQ(r.code, kTrainingFailed);
  EXPECT_NE(r.err.find("step"), std::string::npos);
}

TEST(Cli, RecommendReadsQueryFromFileInlineAndStdinForms) {
  testing::TempDir dir;
  testing::write_file(dir / "e.txt", "3 2\nclose 0 1\nopen 1 0\nwrite 1 1\n");
  testing::write_file(dir / "q.java", "void saveFile() { open(); buf.write(x); }");
  const auto from_file = run_cli({"recommend", "--embeddings", p(dir / "e.txt"), "--query-file",
                                  p(dir / "q.java"), "--top", "2"});
  ASSERT_EQ(from_file.code, kOk) << from_file.err;
  const auto inline_json = run_cli({"recommend", "--embeddings", p(dir / "e.txt"), "--query",
                                    R"({"callees":["open","write"]})", "--top", "2"});
  EXPECT_EQ(from_file.out, inline_json.out);
  const auto j = nlohmann::json::parse(from_file.out);
  EXPECT_EQ(j["candidates"][0]["name"], "write");
  const auto excluded = run_cli({"recommend", "--embeddings", p(dir / "e.txt"), "--query-callees",
                                 "open", "--exclude", "open,write"});
  EXPECT_EQ(nlohmann::json::parse(excluded.out)["candidates"][0]["name"], "close");
  EXPECT_EQ(run_cli({"recommend", "--embeddings", p(dir / "e.txt"), "--query-callees", "ghost"}).code,
            kFailure);
}

TEST(Cli, HelpListsEveryFlagWithItsDefault) {
  const auto train = run_cli({"train", "--help"});
  EXPECT_EQ(train.code, kOk);
  for (const char* needle : {"--dim", "100", "--loops", "5000", "--batch", "200", "--negatives",
                             "10", "--lr", "0.75", "--lr-decay", "0.04", "--alpha", "0.5",
                             "--decay", "per-epoch", "--seed", "--trace-every", "--graph",
                             "graph.tsv", "--out", "embeddings.txt"}) {
    EXPECT_NE(train.out.find(needle), std::string::npos) << needle << "\n" << train.out;
  }
  const auto eval = run_cli({"evaluate", "--help"});
  for (const char* needle : {"--folds", "5", "--seed", "7", "--top", "10", "--lexicon", "--threads"}) {
    EXPECT_NE(eval.out.find(needle), std::string::npos) << needle;
  }
  const auto rec = run_cli({"recommend", "--help"});
  for (const char* needle : {"--top", "--query-callees", "--query-file", "--exclude"}) {
    EXPECT_NE(rec.out.find(needle), std::string::npos) << needle;
  }
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
}

TEST(Cli, EvaluateIsByteDeterministic) {
  testing::TempDir dir;
  ASSERT_EQ(run_cli({"synth", "--out", p(dir / "c"), "--families", "3", "--methods", "10"}).code, kOk);
  auto evaluate = [&](const std::string& tag) {
    return run_cli({"evaluate", "--corpus", p(dir / "c"), "--folds", "3", "--seed", "7", "--dim",
                    "8", "--loops", "50", "--out", p(dir / (tag + ".json")), "--text",
                    p(dir / (tag + ".txt")), "--per-verb", p(dir / (tag + ".csv")),
                    "--embeddings-dir", p(dir / tag)});
  };
  const auto a = evaluate("a");
  ASSERT_EQ(a.code, kOk) << a.err;
  ASSERT_EQ(evaluate("b").code, kOk);
  for (const char* ext : {".json", ".txt", ".csv"}) {
    EXPECT_EQ(testing::read_file(dir / (std::string("a") + ext)),
              testing::read_file(dir / (std::string("b") + ext)))
        << ext;
  }
  for (int f = 1; f <= 3; ++f) {
    const std::string name = "fold" + std::to_string(f) + ".emb";
    EXPECT_EQ(testing::read_file(dir / "a" / name), testing::read_file(dir / "b" / name));
  }
}

TEST(Cli, EnvironmentOverridesPaths) {
  testing::TempDir dir;
  testing::write_file(dir / "g.tsv", "#nodes 2 #edges 1\na\tb\n");
  ::setenv("NAMEREC_GRAPH", p(dir / "g.tsv").c_str(), 1);
  ::setenv("NAMEREC_EMBEDDINGS", p(dir / "env.txt").c_str(), 1);
  const auto r = run_cli({"train", "--dim", "2", "--loops", "5", "--trace", ""});
  ::unsetenv("NAMEREC_GRAPH");
  ::unsetenv("NAMEREC_EMBEDDINGS");
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "env.txt"));
}

}  // namespace
}  // namespace namerec::cli
