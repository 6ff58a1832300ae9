#include "netfp/graph.hpp"

#include <algorithm>

#include "netfp/error.hpp"

namespace netfp {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

Graph::Graph(std::size_t node_count, std::span<const Edge> edges)
    : adjacency_(node_count) {
  build(std::vector<Edge>(edges.begin(), edges.end()));
}

Graph::Graph(std::size_t node_count,
             std::initializer_list<std::pair<NodeId, NodeId>> edges)
    : adjacency_(node_count) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (auto [a, b] : edges) list.push_back({a, b});
  build(std::move(list));
}

void Graph::build(std::vector<Edge> edges) {
  const auto n = adjacency_.size();
  for (auto& e : edges) {
    require(e.u < n && e.v < n, "edge endpoint out of range");
    require(e.u != e.v, "self-loop on node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(),
          "parallel edge in simple graph");
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t i = 0; i < n; ++i) adjacency_[i].reserve(deg[i]);
  for (const auto& e : edges) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  edges_ = std::move(edges);
}

std::size_t Graph::degree(NodeId i) const {
  require(i < adjacency_.size(), "node index out of range");
  return adjacency_[i].size();
}

std::span<const NodeId> Graph::neighbors(NodeId i) const {
  require(i < adjacency_.size(), "node index out of range");
  return adjacency_[i];
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a >= adjacency_.size() || b >= adjacency_.size()) return false;
  const auto& list = adjacency_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(adjacency_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = adjacency_[i].size();
  return out;
}

void Graph::set_node_labels(std::vector<std::string> labels) {
  require(labels.size() == adjacency_.size(), "label count must match node count");
  labels_ = std::move(labels);
}

Graph Graph::permuted(std::span<const NodeId> order) const {
  const auto n = adjacency_.size();
  require(order.size() == n, "permutation size mismatch");
  std::vector<NodeId> position(n, static_cast<NodeId>(n));
  for (std::size_t i = 0; i < n; ++i) {
    require(order[i] < n && position[order[i]] == n, "not a permutation");
    position[order[i]] = static_cast<NodeId>(i);
  }
  std::vector<Edge> mapped;
  mapped.reserve(edges_.size());
  for (const auto& e : edges_) mapped.push_back({position[e.u], position[e.v]});
  Graph out(n, mapped);
  if (labels_) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = (*labels_)[order[i]];
    out.labels_ = std::move(labels);
  }
  return out;
}

Graph drop_isolated(const Graph& g) {
  const auto n = g.node_count();
  std::vector<NodeId> remap(n, 0);
  std::vector<NodeId> kept;
  for (NodeId i = 0; i < n; ++i) {
    if (g.degree(i) > 0) {
      remap[i] = static_cast<NodeId>(kept.size());
      kept.push_back(i);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) edges.push_back({remap[e.u], remap[e.v]});
  Graph out(kept.size(), edges);
  if (g.node_labels()) {
    std::vector<std::string> labels;
    labels.reserve(kept.size());
    for (NodeId i : kept) labels.push_back((*g.node_labels())[i]);
    out.set_node_labels(std::move(labels));
  }
  return out;
}

}  // namespace netfp
