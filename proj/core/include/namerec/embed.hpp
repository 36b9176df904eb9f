// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "namerec/acg.hpp"
#include "namerec/random.hpp"

namespace namerec::embed {

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by load_embeddings; the message starts with "line <n>: ".
class FormatError : public EmbeddingError {
 public:
  FormatError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class TrainingError : public EmbeddingError {
 public:
  using EmbeddingError::EmbeddingError;
};

/// Name -> vector association. Names are kept in lexicographic order and
/// rows are stored contiguously in that order.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  /// Zero-filled table. `names` must be strictly increasing.
  EmbeddingTable(std::size_t dim, std::vector<std::string> names);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  std::span<double> row(std::size_t index) {
    return {values_.data() + index * dim_, dim_};
  }
  std::span<const double> row(std::size_t index) const {
    return {values_.data() + index * dim_, dim_};
  }
  /// Throws EmbeddingError for names not in the table.
  std::span<const double> vector_of(std::string_view name) const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> names_;
  std::vector<double> values_;
};

enum class DecaySchedule { per_epoch, per_step };

struct TrainConfig {
  std::size_t dim = 100;
  std::size_t loops = 5000;       // minibatch steps
  std::size_t batch_size = 200;   // methods per step
  std::size_t negatives = 10;     // per batch method
  double lr0 = 0.75;
  double lr_decay = 0.04;         // multiplicative, see `decay`
  double alpha = 0.5;
  std::uint64_t seed = 1;
  DecaySchedule decay = DecaySchedule::per_epoch;
  // Divide each row's summed batch gradient by the number of loss terms
  // that touched it, so heavily shared callees take bounded steps.
  bool average_shared_rows = true;
  // Full-corpus loss is recorded every `trace_every` steps (0: start/end only).
  std::size_t trace_every = 100;
};

/// Throws EmbeddingError when a field is out of range.
void validate(const TrainConfig& config);

struct TracePoint {
  std::size_t step = 0;
  double loss = 0.0;
  double learning_rate = 0.0;
};

struct TrainResult {
  EmbeddingTable table;
  std::vector<TracePoint> trace;
};

/// Components uniform in [-1, 1) / sqrt(dim), drawn in name order.
EmbeddingTable init_embeddings(const acg::CallGraph& graph, std::size_t dim,
                               std::uint64_t seed);

/// alpha * sum over methods with callees of |v(m) - mean of v(callees)|^2
/// + (1 - alpha) * sum over all methods of (1 - |v(m)|)^2.
double loss(const EmbeddingTable& table, const acg::CallGraph& graph,
            double alpha);

/// Analytic dL/dv(name), including the coupling through every caller.
std::vector<double> gradient(const EmbeddingTable& table,
                             const acg::CallGraph& graph, double alpha,
                             std::string_view name);

/// dL/dv for every node, laid out like EmbeddingTable rows in graph order.
std::vector<double> full_gradient(const EmbeddingTable& table,
                                  const acg::CallGraph& graph, double alpha);

/// Up to k distinct nodes, uniformly without replacement, from the nodes
/// that are neither `node` nor one of its callees or callers.
std::vector<acg::NodeId> sample_negatives(const acg::CallGraph& graph,
                                          acg::NodeId node, std::size_t k,
                                          Rng& rng);
std::vector<std::string> sample_negatives(const acg::CallGraph& graph,
                                          std::string_view name,
                                          std::size_t k, Rng& rng);

/// v_m -= eta * (v_m . n) n with n = v_n / |v_n|. No-op for a zero v_n.
void negative_update(std::span<double> v_m, std::span<const double> v_n,
                     double eta);

/// Minibatch SGD on the loss above with negative sampling. Deterministic
/// for a given config. Throws TrainingError if the loss becomes non-finite.
TrainResult train(const acg::CallGraph& graph, const TrainConfig& config);

/// "<count> <dim>" header, then "name v1 ... v_dim" per row in name order.
/// Values use the shortest representation that round-trips exactly.
void save_embeddings(std::ostream& out, const EmbeddingTable& table);
void save_embeddings(const std::filesystem::path& path,
                     const EmbeddingTable& table);
EmbeddingTable load_embeddings(std::istream& in);
EmbeddingTable load_embeddings(const std::filesystem::path& path);

void write_trace_csv(std::ostream& out, std::span<const TracePoint> trace);

}  // namespace namerec::embed
