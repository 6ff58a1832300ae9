#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netfp {

using NodeId = std::uint32_t;

// Unordered node pair stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph on nodes [0, node_count). Immutable once built;
// adjacency lists and the edge list are kept sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  // Builds from arbitrary pairs. Self-loops and repeated pairs are rejected
  // with kInvalidArgument; use simplify() for lenient ingestion.
  Graph(std::size_t node_count, std::span<const Edge> edges);
  Graph(std::size_t node_count,
        std::initializer_list<std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::size_t degree(NodeId i) const;
  std::span<const NodeId> neighbors(NodeId i) const;
  bool has_edge(NodeId a, NodeId b) const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::vector<std::size_t> degrees() const;

  // Original identifiers, one per node, when the graph came from a file.
  const std::optional<std::vector<std::string>>& node_labels() const noexcept {
    return labels_;
  }
  void set_node_labels(std::vector<std::string> labels);

  // Node relabeling: node i of the result is node order[i] of this graph.
  Graph permuted(std::span<const NodeId> order) const;

  // Equality covers node count and edge set; labels are provenance only.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_.size() == b.adjacency_.size() && a.edges_ == b.edges_;
  }

 private:
  void build(std::vector<Edge> edges);

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<Edge> edges_;
  std::optional<std::vector<std::string>> labels_;
};

// Removes nodes with no incident edge, keeping the relative order of the rest.
Graph drop_isolated(const Graph& g);

}  // namespace netfp
