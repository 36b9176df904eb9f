// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "namerec/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <system_error>

namespace namerec::embed {

namespace {

constexpr double kNormEpsilon = 1e-8;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Row index in `table` of every graph node.
std::vector<std::size_t> rows_for(const EmbeddingTable& table, const acg::CallGraph& graph) {
  if (!graph.empty() && table.dim() == 0) {
    throw EmbeddingError("dimension mismatch: table has dimension 0");
  }
  std::vector<std::size_t> rows(graph.node_count());
  if (table.names() == graph.names()) {
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return rows;
  }
  for (acg::NodeId id = 0; id < graph.node_count(); ++id) {
    const auto row = table.find(graph.name(id));
    if (!row) throw EmbeddingError("table has no vector for node '" + graph.name(id) + "'");
    rows[id] = *row;
  }
  return rows;
}

// Mean of the callee rows of `node` into `out`.
void callee_mean(const EmbeddingTable& table, const std::vector<std::size_t>& rows,
                 std::span<const acg::NodeId> callees, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (acg::NodeId c : callees) {
    const auto v = table.row(rows[c]);
    for (std::size_t d = 0; d < out.size(); ++d) out[d] += v[d];
  }
  const double inv = 1.0 / static_cast<double>(callees.size());
  for (double& x : out) x *= inv;
}

void add_norm_gradient(std::span<const double> v, double alpha, std::span<double> grad) {
  const double n = norm(v);
  if (n < kNormEpsilon) return;
  const double coef = (1.0 - alpha) * -2.0 * (1.0 - n) / n;
  for (std::size_t d = 0; d < v.size(); ++d) grad[d] += coef * v[d];
}

std::string format_double(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace

FormatError::FormatError(std::size_t line, const std::string& what)
    : EmbeddingError("line " + std::to_string(line) + ": " + what), line_(line) {}

EmbeddingTable::EmbeddingTable(std::size_t dim, std::vector<std::string> names)
    : dim_(dim), names_(std::move(names)), values_(names_.size() * dim, 0.0) {
  for (std::size_t i = 1; i < names_.size(); ++i) {
    if (!(names_[i - 1] < names_[i])) {
      throw EmbeddingError("table names must be strictly increasing: '" + names_[i - 1] +
                           "' before '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> EmbeddingTable::find(std::string_view name) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::span<const double> EmbeddingTable::vector_of(std::string_view name) const {
  if (auto i = find(name)) return row(*i);
  throw EmbeddingError("no embedding for '" + std::string(name) + "'");
}

void validate(const TrainConfig& c) {
  if (c.dim < 1) throw EmbeddingError("dim must be at least 1");
  if (c.batch_size < 1) throw EmbeddingError("batch size must be at least 1");
  if (!(c.lr_decay > 0.0 && c.lr_decay < 1.0)) throw EmbeddingError("lr decay must be in (0, 1)");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw EmbeddingError("alpha must be in (0, 1)");
  if (!(c.lr0 > 0.0) || !std::isfinite(c.lr0)) throw EmbeddingError("learning rate must be positive");
}

EmbeddingTable init_embeddings(const acg::CallGraph& graph, std::size_t dim, std::uint64_t seed) {
  if (dim < 1) throw EmbeddingError("dim must be at least 1");
  EmbeddingTable table(dim, graph.names());
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (double& x : table.values()) x = (2.0 * rng.uniform_unit() - 1.0) * scale;
  return table;
}

double loss(const EmbeddingTable& table, const acg::CallGraph& graph, double alpha) {
  const auto rows = rows_for(table, graph);
  std::vector<double> mean(table.dim());
  double callee_term = 0.0;
  double norm_term = 0.0;
  for (acg::NodeId m = 0; m < graph.node_count(); ++m) {
    const auto v = table.row(rows[m]);
    const auto callees = graph.callee_ids(m);
    if (!callees.empty()) {
      callee_mean(table, rows, callees, mean);
      for (std::size_t d = 0; d < mean.size(); ++d) {
        const double r = v[d] - mean[d];
        callee_term += r * r;
      }
    }
    const double dev = 1.0 - norm(v);
    norm_term += dev * dev;
  }
  return alpha * callee_term + (1.0 - alpha) * norm_term;
}

std::vector<double> gradient(const EmbeddingTable& table, const acg::CallGraph& graph,
                             double alpha, std::string_view name) {
  const acg::NodeId m = graph.id_of(name);
  const auto rows = rows_for(table, graph);
  const std::size_t dim = table.dim();
  std::vector<double> grad(dim, 0.0);
  std::vector<double> mean(dim);
  const auto v = table.row(rows[m]);

  // Own term: pulls v(m) toward the mean of its callees.
  if (const auto callees = graph.callee_ids(m); !callees.empty()) {
    callee_mean(table, rows, callees, mean);
    for (std::size_t d = 0; d < dim; ++d) grad[d] += 2.0 * alpha * (v[d] - mean[d]);
  }
  // Each caller p's term depends on v(m) through the mean of C(p).
  for (acg::NodeId p : graph.caller_ids(m)) {
    const auto siblings = graph.callee_ids(p);
    callee_mean(table, rows, siblings, mean);
    const auto vp = table.row(rows[p]);
    const double coef = 2.0 * alpha / static_cast<double>(siblings.size());
    for (std::size_t d = 0; d < dim; ++d) grad[d] -= coef * (vp[d] - mean[d]);
  }
  add_norm_gradient(v, alpha, grad);
  return grad;
}

std::vector<double> full_gradient(const EmbeddingTable& table, const acg::CallGraph& graph,
                                  double alpha) {
  const auto rows = rows_for(table, graph);
  const std::size_t dim = table.dim();
  std::vector<double> grad(graph.node_count() * dim, 0.0);
  std::vector<double> mean(dim);
  auto g = [&](acg::NodeId id) { return std::span<double>(grad.data() + id * dim, dim); };

  for (acg::NodeId m = 0; m < graph.node_count(); ++m) {
    const auto v = table.row(rows[m]);
    const auto callees = graph.callee_ids(m);
    if (!callees.empty()) {
      callee_mean(table, rows, callees, mean);
      const double share = 1.0 / static_cast<double>(callees.size());
      auto gm = g(m);
      for (std::size_t d = 0; d < dim; ++d) {
        const double r = 2.0 * alpha * (v[d] - mean[d]);
        gm[d] += r;
        for (acg::NodeId c : callees) grad[c * dim + d] -= share * r;
      }
    }
    add_norm_gradient(v, alpha, g(m));
  }
  return grad;
}

std::vector<acg::NodeId> sample_negatives(const acg::CallGraph& graph, acg::NodeId node,
                                          std::size_t k, Rng& rng) {
  std::vector<acg::NodeId> excluded;
  const auto out = graph.callee_ids(node);
  const auto in = graph.caller_ids(node);
  excluded.reserve(out.size() + in.size() + 1);
  std::merge(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(excluded));
  excluded.insert(std::upper_bound(excluded.begin(), excluded.end(), node), node);
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());

  const std::size_t eligible = graph.node_count() - excluded.size();
  k = std::min(k, eligible);
  if (k == 0) return {};

  // Floyd's sampling over ranks [0, eligible), then rank -> node id by
  // stepping over the excluded ids.
  std::vector<std::size_t> ranks;
  ranks.reserve(k);
  for (std::size_t j = eligible - k; j < eligible; ++j) {
    const auto t = static_cast<std::size_t>(rng.uniform_index(j + 1));
    if (std::find(ranks.begin(), ranks.end(), t) == ranks.end()) {
      ranks.push_back(t);
    } else {
      ranks.push_back(j);
    }
  }
  std::vector<acg::NodeId> picked;
  picked.reserve(k);
  for (std::size_t r : ranks) {
    std::size_t id = r;
    for (acg::NodeId e : excluded) {
      if (e <= id) {
        ++id;
      } else {
        break;
      }
    }
    picked.push_back(static_cast<acg::NodeId>(id));
  }
  return picked;
}

std::vector<std::string> sample_negatives(const acg::CallGraph& graph, std::string_view name,
                                          std::size_t k, Rng& rng) {
  std::vector<std::string> out;
  for (acg::NodeId id : sample_negatives(graph, graph.id_of(name), k, rng)) {
    out.push_back(graph.name(id));
  }
  return out;
}

void negative_update(std::span<double> v_m, std::span<const double> v_n, double eta) {
  if (v_m.size() != v_n.size()) throw EmbeddingError("negative_update: dimension mismatch");
  const double nn = dot(v_n, v_n);
  if (nn == 0.0) return;
  const double coef = eta * dot(v_m, v_n) / nn;
  for (std::size_t d = 0; d < v_m.size(); ++d) v_m[d] -= coef * v_n[d];
}

TrainResult train(const acg::CallGraph& graph, const TrainConfig& config) {
  validate(config);
  if (graph.empty()) throw EmbeddingError("cannot train on an empty graph");

  TrainResult result;
  result.table = init_embeddings(graph, config.dim, config.seed);
  EmbeddingTable& table = result.table;
  const std::size_t n = graph.node_count();
  const std::size_t dim = config.dim;
  const double alpha = config.alpha;
  double lr = config.lr0;

  result.trace.push_back({0, loss(table, graph, alpha), lr});
  if (config.loops == 0) return result;

  Rng order_rng(splitmix64(config.seed ^ 0x6f72646572ULL));
  Rng negative_rng(splitmix64(config.seed ^ 0x6e65676174ULL));

  std::vector<acg::NodeId> order(n);
  std::iota(order.begin(), order.end(), acg::NodeId{0});
  order_rng.shuffle(std::span(order));
  std::size_t cursor = 0;

  const std::size_t batch_size = std::min(config.batch_size, n);
  std::vector<acg::NodeId> batch(batch_size);
  std::vector<double> grad(n * dim, 0.0);
  std::vector<std::uint32_t> hits(n, 0);
  std::vector<acg::NodeId> touched;
  std::vector<double> mean(dim);
  std::vector<double> residual(dim);

  auto touch = [&](acg::NodeId id) {
    if (hits[id]++ == 0) touched.push_back(id);
  };

  for (std::size_t step = 0; step < config.loops; ++step) {
    for (auto& slot : batch) {
      if (cursor == n) {
        order_rng.shuffle(std::span(order));
        cursor = 0;
        if (config.decay == DecaySchedule::per_epoch) lr *= 1.0 - config.lr_decay;
      }
      slot = order[cursor++];
    }

    double batch_loss = 0.0;
    for (acg::NodeId m : batch) {
      const auto v = table.row(m);
      auto gm = std::span<double>(grad.data() + m * dim, dim);
      touch(m);
      if (const auto callees = graph.callee_ids(m); !callees.empty()) {
        std::fill(mean.begin(), mean.end(), 0.0);
        for (acg::NodeId c : callees) {
          const auto vc = table.row(c);
          for (std::size_t d = 0; d < dim; ++d) mean[d] += vc[d];
        }
        const double share = 1.0 / static_cast<double>(callees.size());
        for (std::size_t d = 0; d < dim; ++d) {
          residual[d] = v[d] - mean[d] * share;
          batch_loss += alpha * residual[d] * residual[d];
          gm[d] += 2.0 * alpha * residual[d];
        }
        for (acg::NodeId c : callees) {
          touch(c);
          double* gc = grad.data() + c * dim;
          for (std::size_t d = 0; d < dim; ++d) gc[d] -= 2.0 * alpha * share * residual[d];
        }
      }
      const double dev = 1.0 - norm(v);
      batch_loss += (1.0 - alpha) * dev * dev;
      add_norm_gradient(v, alpha, gm);
    }
    if (!std::isfinite(batch_loss)) {
      throw TrainingError("non-finite loss at step " + std::to_string(step + 1));
    }

    for (acg::NodeId id : touched) {
      const double scale =
          config.average_shared_rows ? lr / static_cast<double>(hits[id]) : lr;
      auto row = table.row(id);
      double* g = grad.data() + id * dim;
      for (std::size_t d = 0; d < dim; ++d) {
        row[d] -= scale * g[d];
        g[d] = 0.0;
      }
      hits[id] = 0;
    }
    touched.clear();

    if (config.negatives > 0) {
      for (acg::NodeId m : batch) {
        for (acg::NodeId neg : sample_negatives(graph, m, config.negatives, negative_rng)) {
          negative_update(table.row(m), table.row(neg), lr);
        }
      }
    }

    if (config.decay == DecaySchedule::per_step) lr *= 1.0 - config.lr_decay;

    const bool last = step + 1 == config.loops;
    if (last || (config.trace_every > 0 && (step + 1) % config.trace_every == 0)) {
      const double l = loss(table, graph, alpha);
      if (!std::isfinite(l)) {
        throw TrainingError("non-finite loss at step " + std::to_string(step + 1));
      }
      result.trace.push_back({step + 1, l, lr});
    }
  }
  return result;
}

void save_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out << table.size() << ' ' << table.dim() << '\n';
  std::string line;
  for (std::size_t i = 0; i < table.size(); ++i) {
    line = table.names()[i];
    for (double x : table.row(i)) {
      line += ' ';
      line += format_double(x);
    }
    line += '\n';
    out << line;
  }
}

void save_embeddings(const std::filesystem::path& path, const EmbeddingTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EmbeddingError("cannot write embedding file: " + path.string());
  save_embeddings(out, table);
  if (!out) throw EmbeddingError("write failed: " + path.string());
}

EmbeddingTable load_embeddings(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(1, "missing '<count> <dim>' header");
  std::size_t count = 0;
  std::size_t dim = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> count >> dim) || (header >> extra)) {
      throw FormatError(1, "malformed header '" + line + "'");
    }
  }

  std::vector<std::string> names;
  std::vector<double> values;
  names.reserve(count);
  values.reserve(count * dim);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t line_no = i + 2;
    if (!std::getline(in, line)) {
      throw FormatError(line_no, "file ended; header promises " + std::to_string(count) +
                                     " entries, found " + std::to_string(i));
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const char* p = line.data();
    const char* end = line.data() + line.size();
    const char* name_end = std::find(p, end, ' ');
    if (name_end == p) throw FormatError(line_no, "missing name");
    names.emplace_back(p, name_end);
    if (i > 0 && !(names[i - 1] < names[i])) {
      throw FormatError(line_no, "names out of order: '" + names[i] + "' after '" +
                                     names[i - 1] + "'");
    }
    p = name_end;
    for (std::size_t d = 0; d < dim; ++d) {
      if (p == end || *p != ' ') {
        throw FormatError(line_no, "expected " + std::to_string(dim) + " values, got " +
                                       std::to_string(d));
      }
      ++p;
      double x = 0.0;
      const auto [next, ec] = std::from_chars(p, end, x);
      if (ec != std::errc() || !std::isfinite(x)) {
        throw FormatError(line_no, "bad value at column " + std::to_string(d + 1));
      }
      values.push_back(x);
      p = next;
    }
    if (p != end) throw FormatError(line_no, "trailing data after " + std::to_string(dim) + " values");
  }
  std::size_t line_no = count + 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw FormatError(line_no, "unexpected data after " + std::to_string(count) + " entries");
    }
  }

  EmbeddingTable table(dim, std::move(names));
  std::copy(values.begin(), values.end(), table.values().begin());
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EmbeddingError("cannot open embedding file: " + path.string());
  return load_embeddings(in);
}

void write_trace_csv(std::ostream& out, std::span<const TracePoint> trace) {
  out << "step,loss,learning_rate\n";
  for (const auto& p : trace) {
    out << p.step << ',' << format_double(p.loss) << ',' << format_double(p.learning_rate) << '\n';
  }
}

}  // namespace namerec::embed
