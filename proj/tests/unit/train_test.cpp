// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "namerec/embed.hpp"
#include "test_support.hpp"

namespace namerec::embed {
namespace {

using acg::CallGraph;

// Ten methods in two call clusters plus a shared utility.
CallGraph toy_graph() {
  return CallGraph::from_edges(
      {}, {{"saveFile", "open"}, {"saveFile", "write"}, {"saveFile", "close"},
           {"loadFile", "open"}, {"loadFile", "read"}, {"loadFile", "close"},
           {"render", "draw"}, {"render", "flush"}, {"draw", "log"}, {"flush", "log"}});
}

TrainConfig small_config() {
  TrainConfig c;
  c.dim = 4;
  c.loops = 200;
  c.batch_size = 4;
  c.negatives = 2;
  c.seed = 3;
  c.trace_every = 50;
  return c;
}

double mean_norm_deviation(const EmbeddingTable& t) {
  double sum = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double nn = 0;
    for (double x : t.row(i)) nn += x * x;
    sum += std::abs(std::sqrt(nn) - 1.0);
  }
  return sum / static_cast<double>(t.size());
}

TEST(Train, ZeroLoopsReturnsTheInitialTable) {
  const auto g = toy_graph();
  auto c = small_config();
  c.loops = 0;
  const auto r = train(g, c);
  EXPECT_EQ(r.table, init_embeddings(g, c.dim, c.seed));
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].step, 0u);
}

TEST(Train, LossDecreasesOnToyGraph) {
  const auto g = toy_graph();
  ASSERT_EQ(g.node_count(), 10u);
  const auto r = train(g, small_config());
  EXPECT_LT(r.trace.back().loss, r.trace.front().loss);
  EXPECT_LT(mean_norm_deviation(r.table), 0.2);
}

TEST(Train, DeterministicForAConfig) {
  const auto g = toy_graph();
  const auto a = train(g, small_config());
  const auto b = train(g, small_config());
  EXPECT_EQ(a.table, b.table);
  auto other = small_config();
  other.seed = 4;
  EXPECT_NE(train(g, other).table, a.table);
}

TEST(Train, TraceSpacingAndLearningRateSchedule) {
  const auto g = toy_graph();
  auto c = small_config();
  c.loops = 120;
  const auto r = train(g, c);
  std::vector<std::size_t> steps;
  for (const auto& p : r.trace) steps.push_back(p.step);
  EXPECT_EQ(steps, (std::vector<std::size_t>{0, 50, 100, 120}));
  // Batches of 4 over 10 nodes: by step 50, 200 draws = 20 epochs, and the
  // decay fires at the start of epochs 2..20.
  EXPECT_DOUBLE_EQ(r.trace[0].learning_rate, 0.75);
  EXPECT_NEAR(r.trace[1].learning_rate, 0.75 * std::pow(0.96, 19), 1e-12);

  c.decay = DecaySchedule::per_step;
  const auto s = train(g, c);
  EXPECT_NEAR(s.trace[1].learning_rate, 0.75 * std::pow(0.96, 50), 1e-12);
}

TEST(Train, BatchLargerThanGraphIsClamped) {
  const auto g = toy_graph();
  auto c = small_config();
  c.batch_size = 1000;
  const auto r = train(g, c);
  EXPECT_LT(r.trace.back().loss, r.trace.front().loss);
}

TEST(Train, RejectsInvalidConfigs) {
  const auto g = toy_graph();
  auto bad = [&](auto mutate) {
    auto c = small_config();
    mutate(c);
    EXPECT_THROW(train(g, c), EmbeddingError);
  };
  bad([](TrainConfig& c) { c.dim = 0; });
  bad([](TrainConfig& c) { c.batch_size = 0; });
  bad([](TrainConfig& c) { c.alpha = 0.0; });
  bad([](TrainConfig& c) { c.alpha = 1.0; });
  bad([](TrainConfig& c) { c.lr_decay = 1.0; });
  bad([](TrainConfig& c) { c.lr0 = -1.0; });
  EXPECT_THROW(train(CallGraph{}, small_config()), EmbeddingError);
}

TEST(Train, DivergenceIsReportedWithTheStep) {
  // Without row averaging a large learning rate on a hub blows up.
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < 40; ++i) edges.emplace_back("m" + std::to_string(i), "hub");
  const auto g = CallGraph::from_edges({}, edges);
  auto c = small_config();
  c.batch_size = 41;
  c.lr0 = 50.0;
  c.average_shared_rows = false;
  c.loops = 1000;
  try {
    train(g, c);
    FAIL() << "expected divergence";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("at step"), std::string::npos);
  }
}

TEST(Train, DefaultHyperparametersStayFiniteOnAHub) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < 300; ++i) {
    edges.emplace_back("m" + std::to_string(i), "hub");
    edges.emplace_back("m" + std::to_string(i), "aux" + std::to_string(i % 7));
  }
  const auto g = CallGraph::from_edges({}, edges);
  TrainConfig c;
  c.dim = 16;
  c.loops = 300;
  const auto r = train(g, c);
  for (double x : r.table.values()) ASSERT_TRUE(std::isfinite(x));
  EXPECT_LT(r.trace.back().loss, r.trace.front().loss);
}

TEST(TraceCsv, Format) {
  std::ostringstream out;
  const std::vector<TracePoint> trace{{0, 2.5, 0.75}, {10, 1.25, 0.72}};
  write_trace_csv(out, trace);
  EXPECT_EQ(out.str(), "step,loss,learning_rate\n0,2.5,0.75\n10,1.25,0.72\n");
}

}  // namespace
}  // namespace namerec::embed
