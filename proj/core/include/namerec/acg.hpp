// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "namerec/corpus.hpp"

namespace namerec::acg {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using NodeId = std::uint32_t;

/// Aggregated call graph: one node per method name, one edge per distinct
/// (caller name, callee name) pair. Nodes are numbered in lexicographic
/// name order and both adjacency directions are kept sorted.
class CallGraph {
 public:
  CallGraph() = default;

  /// Builds the graph from explicit node and edge sets. Edge endpoints are
  /// added to the node set.
  static CallGraph from_edges(
      std::vector<std::string> nodes,
      std::vector<std::pair<std::string, std::string>> edges);

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  bool empty() const { return names_.empty(); }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(NodeId id) const { return names_.at(id); }
  std::optional<NodeId> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }
  /// Throws GraphError("unknown node: ...") when absent.
  NodeId id_of(std::string_view name) const;

  std::span<const NodeId> callee_ids(NodeId id) const { return out_.at(id); }
  std::span<const NodeId> caller_ids(NodeId id) const { return in_.at(id); }

  std::vector<std::string> callees(std::string_view name) const;
  std::vector<std::string> callers(std::string_view name) const;

  /// All edges as name pairs, sorted by (caller, callee).
  std::vector<std::pair<std::string, std::string>> edges() const;

  friend bool operator==(const CallGraph&, const CallGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::size_t edge_count_ = 0;
};

/// Nodes are all definition names plus all callee names; same-named
/// definitions merge into one node.
CallGraph build_acg(std::span<const corpus::MethodRecord> records);

/// Text format:
///   #nodes <N> #edges <E>
///   caller<TAB>callee          (one per edge, sorted)
///   #leaf <name>               (nodes without any edge)
void write_graph(std::ostream& out, const CallGraph& graph);
/// Throws GraphError naming the line on malformed input.
CallGraph read_graph(std::istream& in);

}  // namespace namerec::acg
