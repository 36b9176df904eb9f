// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "namerec/acg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace namerec::acg {

CallGraph CallGraph::from_edges(std::vector<std::string> nodes,
                                std::vector<std::pair<std::string, std::string>> edges) {
  for (const auto& [caller, callee] : edges) {
    nodes.push_back(caller);
    nodes.push_back(callee);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  CallGraph g;
  g.names_ = std::move(nodes);
  g.out_.resize(g.names_.size());
  g.in_.resize(g.names_.size());
  for (const auto& [caller, callee] : edges) {
    const NodeId from = g.id_of(caller);
    const NodeId to = g.id_of(callee);
    g.out_[from].push_back(to);
    g.in_[to].push_back(from);
  }
  auto normalize = [](std::vector<NodeId>& list) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  };
  for (auto& list : g.out_) {
    normalize(list);
    g.edge_count_ += list.size();
  }
  for (auto& list : g.in_) normalize(list);
  return g;
}

std::optional<NodeId> CallGraph::find(std::string_view name) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

NodeId CallGraph::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw GraphError("unknown node: " + std::string(name));
}

std::vector<std::string> CallGraph::callees(std::string_view name) const {
  std::vector<std::string> out;
  for (NodeId id : out_[id_of(name)]) out.push_back(names_[id]);
  return out;
}

std::vector<std::string> CallGraph::callers(std::string_view name) const {
  std::vector<std::string> out;
  for (NodeId id : in_[id_of(name)]) out.push_back(names_[id]);
  return out;
}

std::vector<std::pair<std::string, std::string>> CallGraph::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(edge_count_);
  for (NodeId from = 0; from < out_.size(); ++from) {
    for (NodeId to : out_[from]) out.emplace_back(names_[from], names_[to]);
  }
  return out;
}

CallGraph build_acg(std::span<const corpus::MethodRecord> records) {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& r : records) {
    nodes.push_back(r.name);
    for (const auto& c : r.callees) edges.emplace_back(r.name, c);
  }
  return CallGraph::from_edges(std::move(nodes), std::move(edges));
}

void write_graph(std::ostream& out, const CallGraph& graph) {
  out << "#nodes " << graph.node_count() << " #edges " << graph.edge_count() << '\n';
  for (const auto& [caller, callee] : graph.edges()) out << caller << '\t' << callee << '\n';
  for (NodeId id = 0; id < graph.node_count(); ++id) {
    if (graph.callee_ids(id).empty() && graph.caller_ids(id).empty()) {
      out << "#leaf " << graph.name(id) << '\n';
    }
  }
}

CallGraph read_graph(std::istream& in) {
  auto fail = [](std::size_t line, const std::string& what) -> GraphError {
    return GraphError("graph line " + std::to_string(line) + ": " + what);
  };

  std::string line;
  if (!std::getline(in, line)) throw fail(1, "missing '#nodes N #edges E' header");
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  {
    std::istringstream header(line);
    std::string nodes_tag, edges_tag;
    if (!(header >> nodes_tag >> node_count >> edges_tag >> edge_count) ||
        nodes_tag != "#nodes" || edges_tag != "#edges") {
      throw fail(1, "malformed header '" + line + "'");
    }
  }

  std::vector<std::string> leaves;
  std::vector<std::pair<std::string, std::string>> edges;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("#leaf ")) {
      leaves.push_back(line.substr(6));
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw fail(line_no, "expected 'caller<TAB>callee'");
    }
    edges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }

  CallGraph g = CallGraph::from_edges(std::move(leaves), std::move(edges));
  if (g.node_count() != node_count || g.edge_count() != edge_count) {
    throw fail(line_no, "header declares " + std::to_string(node_count) + " nodes and " +
                            std::to_string(edge_count) + " edges, file holds " +
                            std::to_string(g.node_count()) + " and " +
                            std::to_string(g.edge_count()));
  }
  return g;
}

}  // namespace namerec::acg
