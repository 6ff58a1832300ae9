#include "netfp/null_model.hpp"

#include <algorithm>
#include <numeric>

#include "netfp/error.hpp"
#include "netfp/parallel.hpp"
#include "netfp/rng.hpp"

namespace netfp::null_model {
namespace {

// Open-addressing set of edge keys with backward-shift deletion.
class EdgeSet {
 public:
  explicit EdgeSet(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < expected * 2 + 2) cap <<= 1;
    slots_.assign(cap, kEmpty);
    mask_ = cap - 1;
  }

  static std::uint64_t key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
  }

  bool contains(std::uint64_t k) const {
    for (std::size_t i = slot(k);; i = (i + 1) & mask_) {
      if (slots_[i] == kEmpty) return false;
      if (slots_[i] == k) return true;
    }
  }

  void insert(std::uint64_t k) {
    std::size_t i = slot(k);
    while (slots_[i] != kEmpty) i = (i + 1) & mask_;
    slots_[i] = k;
  }

  void erase(std::uint64_t k) {
    std::size_t i = slot(k);
    while (slots_[i] != k) i = (i + 1) & mask_;
    std::size_t hole = i;
    for (std::size_t j = (hole + 1) & mask_; slots_[j] != kEmpty; j = (j + 1) & mask_) {
      const std::size_t home = slot(slots_[j]);
      // Move j into the hole unless its home lies cyclically in (hole, j].
      const bool stays = hole <= j ? (hole < home && home <= j)
                                   : (hole < home || home <= j);
      if (!stays) {
        slots_[hole] = slots_[j];
        hole = j;
      }
    }
    slots_[hole] = kEmpty;
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

  std::size_t slot(std::uint64_t k) const { return mix64(k) & mask_; }

  std::vector<std::uint64_t> slots_;
  std::size_t mask_ = 0;
};

// Colour refinement to a fixpoint. colour values are dense ranks of sorted
// signatures, so they never depend on node ids.
void refine(const Graph& g, std::vector<std::uint32_t>& colour) {
  const auto n = g.node_count();
  std::vector<std::vector<std::uint32_t>> signature(n);
  std::vector<NodeId> order(n);
  std::size_t classes = 0;
  {
    auto sorted = colour;
    std::sort(sorted.begin(), sorted.end());
    classes = static_cast<std::size_t>(
        std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  }
  for (;;) {
    for (NodeId v = 0; v < n; ++v) {
      auto& sig = signature[v];
      sig.clear();
      sig.push_back(colour[v]);
      for (NodeId w : g.neighbors(v)) sig.push_back(colour[w]);
      std::sort(sig.begin() + 1, sig.end());
    }
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return signature[a] < signature[b];
    });
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && signature[order[i]] != signature[order[i - 1]]) ++next;
      colour[order[i]] = next;
    }
    const std::size_t now = n == 0 ? 0 : next + 1;
    if (now == classes) return;
    classes = now;
  }
}

bool same_open_neighbourhood(const Graph& g, NodeId a, NodeId b) {
  auto na = g.neighbors(a);
  auto nb = g.neighbors(b);
  return std::equal(na.begin(), na.end(), nb.begin(), nb.end());
}

bool same_closed_neighbourhood(const Graph& g, NodeId a, NodeId b) {
  if (!g.has_edge(a, b)) return false;
  auto na = g.neighbors(a);
  auto nb = g.neighbors(b);
  if (na.size() != nb.size()) return false;
  std::vector<NodeId> ca(na.begin(), na.end());
  std::vector<NodeId> cb(nb.begin(), nb.end());
  ca.insert(std::lower_bound(ca.begin(), ca.end(), a), a);
  cb.insert(std::lower_bound(cb.begin(), cb.end(), b), b);
  return ca == cb;
}

}  // namespace

void EnsembleSpec::validate() const {
  require(ensemble_size >= 2, "ensemble size must be at least 2");
  require(swaps_per_edge >= 1, "swaps per edge must be positive");
}

Graph rewire(const Graph& g, std::size_t swaps, std::uint64_t seed,
             RewireStats* stats) {
  RewireStats local;
  const auto m = g.edge_count();
  if (m < 2) {
    if (stats) *stats = local;
    return g;
  }
  std::vector<Edge> edges = g.edges();
  EdgeSet present(m);
  for (const auto& e : edges) present.insert(EdgeSet::key(e.u, e.v));
  Rng rng(seed);
  for (std::size_t s = 0; s < swaps; ++s) {
    ++local.attempted;
    const auto i = rng.below(m);
    auto j = rng.below(m - 1);
    if (j >= i) ++j;
    const NodeId a = edges[i].u, b = edges[i].v;
    NodeId c = edges[j].u, d = edges[j].v;
    if (rng.next() & 1) std::swap(c, d);
    // Proposal: {a,b},{c,d} -> {a,d},{c,b}.
    if (a == d || c == b) continue;
    const auto k1 = EdgeSet::key(a, d);
    const auto k2 = EdgeSet::key(c, b);
    if (k1 == k2 || present.contains(k1) || present.contains(k2)) continue;
    present.erase(EdgeSet::key(a, b));
    present.erase(EdgeSet::key(c, d));
    present.insert(k1);
    present.insert(k2);
    edges[i] = {std::min(a, d), std::max(a, d)};
    edges[j] = {std::min(c, b), std::max(c, b)};
    ++local.accepted;
  }
  if (stats) *stats = local;
  Graph out(g.node_count(), edges);
  if (g.node_labels()) out.set_node_labels(*g.node_labels());
  return out;
}

std::vector<NodeId> canonical_order(const Graph& g) {
  const auto n = g.node_count();
  std::vector<std::uint32_t> colour(n);
  for (NodeId v = 0; v < n; ++v) colour[v] = static_cast<std::uint32_t>(g.degree(v));
  refine(g, colour);
  for (;;) {
    // First non-singleton cell by colour value.
    std::vector<std::uint32_t> count(n + 1, 0);
    for (auto c : colour) ++count[c];
    std::uint32_t target = 0;
    bool found = false;
    for (std::uint32_t c = 0; c < count.size(); ++c) {
      if (count[c] > 1) {
        target = c;
        found = true;
        break;
      }
    }
    if (!found) break;
    std::vector<NodeId> cell;
    for (NodeId v = 0; v < n; ++v) {
      if (colour[v] == target) cell.push_back(v);
    }
    // Twins are interchangeable by an automorphism, so the whole cell may be
    // split at once; otherwise individualize a single node.
    const NodeId first = cell.front();
    bool twins = true;
    for (std::size_t i = 1; i < cell.size() && twins; ++i) {
      twins = same_open_neighbourhood(g, first, cell[i]) ||
              same_closed_neighbourhood(g, first, cell[i]);
    }
    // Open the cell into consecutive colours, shifting the colours above it.
    const auto width = static_cast<std::uint32_t>(twins ? cell.size() : 2);
    for (auto& c : colour) {
      if (c > target) c += width - 1;
    }
    if (twins) {
      for (std::size_t i = 0; i < cell.size(); ++i) {
        colour[cell[i]] = target + static_cast<std::uint32_t>(i);
      }
    } else {
      for (std::size_t i = 1; i < cell.size(); ++i) colour[cell[i]] = target + 1;
    }
    refine(g, colour);
  }
  std::vector<NodeId> order(n);
  for (NodeId v = 0; v < n; ++v) order[colour[v]] = v;
  return order;
}

Ensemble::Ensemble(const Graph& g, EnsembleSpec spec) : spec_(spec) {
  spec_.validate();
  const auto order = canonical_order(g);
  canonical_ = g.permuted(order);
  position_.assign(g.node_count(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    position_[order[i]] = static_cast<NodeId>(i);
  }
}

Graph Ensemble::member(std::size_t index) const {
  require(index < spec_.ensemble_size, "ensemble index out of range");
  const auto swaps = spec_.swaps_per_edge * canonical_.edge_count();
  Graph rewired = rewire(canonical_, swaps, derive_seed(spec_.seed, {index}));
  return rewired.permuted(position_);
}

Graph ensemble_member(const Graph& g, const EnsembleSpec& spec, std::size_t index) {
  return Ensemble(g, spec).member(index);
}

std::vector<Graph> ensemble(const Graph& g, const EnsembleSpec& spec,
                            unsigned threads) {
  Ensemble source(g, spec);
  std::vector<Graph> members(spec.ensemble_size);
  parallel_for(members.size(), threads,
               [&](std::size_t i) { members[i] = source.member(i); });
  return members;
}

}  // namespace netfp::null_model
