#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "netfp/graph.hpp"

namespace netfp::generators {

enum class Model { kErdosRenyi, kSmallWorld, kScaleFree, kForestFire };

Model parse_model(const std::string& name);  // er | ws | ba | ff
std::string model_name(Model model);          // short CLI name
std::string model_label(Model model);         // class label: ER, WS, BA, FF

// G(n, p): every pair independently with probability p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Ring lattice with k/2 neighbours per side, then each lattice edge has its
// far endpoint rewired with probability p to a uniform admissible node.
Graph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed);

// Preferential attachment onto a path of m0 seed nodes; each new node adds
// m edges to distinct nodes drawn proportionally to degree.
Graph barabasi_albert(std::size_t n, std::size_t m, std::size_t m0,
                      std::uint64_t seed);

// Forest fire growth: a uniformly chosen ambassadors, geometric burning
// along out-links (mean p_forward/(1-p_forward)) and in-links (mean
// p_backward/(1-p_backward)); the new node links to everything burned.
Graph forest_fire(std::size_t n, double p_forward, double p_backward,
                  std::size_t ambassadors, std::uint64_t seed);

// Parameter record as written on the command line, e.g. n=200:1000,k=8.
// Integer parameters may be a closed range lo:hi sampled uniformly per graph.
struct GeneratorSpec {
  Model model = Model::kErdosRenyi;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
};

// Keys given in params override the model defaults; missing keys keep them.
GeneratorSpec parse_spec(const std::string& model, const std::string& params,
                         std::uint64_t seed);

// Defaults used for the reference synthetic corpus.
std::string default_params(Model model);

// Parameters after ranges and derived values are fixed for one draw.
using ResolvedParams = std::map<std::string, double>;

struct Generated {
  Graph graph;
  ResolvedParams params;
  std::uint64_t seed = 0;
};

// Draw number `index` of a generator request; the graph seed is derived from
// (request seed, model, index).
Generated generate(const GeneratorSpec& spec, std::size_t index);

}  // namespace netfp::generators
