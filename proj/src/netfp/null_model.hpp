#pragma once

#include <cstdint>
#include <vector>

#include "netfp/graph.hpp"

namespace netfp::null_model {

struct EnsembleSpec {
  std::size_t ensemble_size = 100;
  std::size_t swaps_per_edge = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RewireStats {
  std::size_t attempted = 0;
  std::size_t accepted = 0;
};

// `swaps` attempted double-edge swaps. Each picks two distinct edges
// {a,b},{c,d} and proposes {a,d},{c,b} or {a,c},{b,d} on a fair coin;
// proposals creating a loop or a duplicate edge are rejected. The degree of
// every node is unchanged.
Graph rewire(const Graph& g, std::size_t swaps, std::uint64_t seed,
             RewireStats* stats = nullptr);

// Node order that depends only on the isomorphism class of g (for graphs
// whose colour-refinement ties are automorphism orbits, which covers twins
// and random graphs). order[i] is the node placed at canonical position i.
std::vector<NodeId> canonical_order(const Graph& g);

// Member `index` of the degree-preserving ensemble of g. Rewiring runs on the
// canonical relabeling of g, so isomorphic inputs get isomorphic members;
// the member is mapped back to g's node ids.
Graph ensemble_member(const Graph& g, const EnsembleSpec& spec, std::size_t index);

// Same as above with the canonical relabeling precomputed.
class Ensemble {
 public:
  Ensemble(const Graph& g, EnsembleSpec spec);

  std::size_t size() const noexcept { return spec_.ensemble_size; }
  Graph member(std::size_t index) const;

 private:
  EnsembleSpec spec_;
  Graph canonical_;
  std::vector<NodeId> position_;  // position_[v] = canonical index of node v
};

std::vector<Graph> ensemble(const Graph& g, const EnsembleSpec& spec,
                            unsigned threads = 1);

}  // namespace netfp::null_model
