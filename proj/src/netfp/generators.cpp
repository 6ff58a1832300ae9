#include "netfp/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "netfp/error.hpp"
#include "netfp/rng.hpp"

namespace netfp::generators {
namespace {

void require_probability(double p, const char* name) {
  require(p >= 0.0 && p <= 1.0,
          std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

double parse_number(const std::string& key, const std::string& text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(),
          "parameter " + key + " is not a number: '" + text + "'");
  return value;
}

}  // namespace

Model parse_model(const std::string& name) {
  if (name == "er") return Model::kErdosRenyi;
  if (name == "ws") return Model::kSmallWorld;
  if (name == "ba") return Model::kScaleFree;
  if (name == "ff") return Model::kForestFire;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown model '" + name + "' (expected er, ws, ba or ff)");
}

std::string model_name(Model model) {
  switch (model) {
    case Model::kErdosRenyi: return "er";
    case Model::kSmallWorld: return "ws";
    case Model::kScaleFree: return "ba";
    case Model::kForestFire: return "ff";
  }
  return "?";
}

std::string model_label(Model model) {
  switch (model) {
    case Model::kErdosRenyi: return "ER";
    case Model::kSmallWorld: return "WS";
    case Model::kScaleFree: return "BA";
    case Model::kForestFire: return "FF";
  }
  return "?";
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  require_probability(p, "p");
  Rng rng(seed);
  std::vector<Edge> edges;
  if (p > 0.0) {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        if (rng.bernoulli(p)) edges.push_back({i, j});
      }
    }
  }
  return Graph(n, edges);
}

Graph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  require(k % 2 == 0, "k must be even");
  require(k > 0 && k < n, "k must satisfy 0 < k < n");
  require_probability(p, "p");
  Rng rng(seed);
  std::vector<std::unordered_set<NodeId>> adj(n);
  std::vector<Edge> ring;
  ring.reserve(n * k / 2);
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (NodeId i = 0; i < n; ++i) {
      const auto t = static_cast<NodeId>((i + j) % n);
      adj[i].insert(t);
      adj[t].insert(i);
      ring.push_back({i, t});
    }
  }
  for (auto& e : ring) {
    if (!rng.bernoulli(p)) continue;
    const NodeId u = e.u;
    if (adj[u].size() >= n - 1) continue;  // nowhere to go
    NodeId w;
    do {
      w = static_cast<NodeId>(rng.below(n));
    } while (w == u || adj[u].count(w));
    adj[u].erase(e.v);
    adj[e.v].erase(u);
    adj[u].insert(w);
    adj[w].insert(u);
    e.v = w;
  }
  std::vector<Edge> edges;
  edges.reserve(ring.size());
  for (const auto& e : ring) edges.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  return Graph(n, edges);
}

Graph barabasi_albert(std::size_t n, std::size_t m, std::size_t m0,
                      std::uint64_t seed) {
  require(m >= 1 && m <= m0 && m0 < n, "parameters must satisfy 1 <= m <= m0 < n");
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve((m0 - 1) + m * (n - m0));
  // Each edge contributes both endpoints, so a uniform draw from this list is
  // a draw proportional to degree.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (NodeId i = 1; i < m0; ++i) {
    edges.push_back({i - 1, i});
    endpoints.push_back(i - 1);
    endpoints.push_back(i);
  }
  std::vector<NodeId> targets;
  for (auto v = static_cast<NodeId>(m0); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId t = endpoints.empty()
                           ? static_cast<NodeId>(rng.below(v))
                           : endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
        targets.push_back(t);
      }
    }
    for (NodeId t : targets) {
      edges.push_back({t, v});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, edges);
}

Graph forest_fire(std::size_t n, double p_forward, double p_backward,
                  std::size_t ambassadors, std::uint64_t seed) {
  require(n >= 1, "n must be at least 1");
  require(ambassadors >= 1, "ambassador count must be at least 1");
  require_probability(p_forward, "p_forward");
  require_probability(p_backward, "p_backward");
  require(p_forward < 1.0 && p_backward < 1.0, "burn probabilities must be < 1");
  Rng rng(seed);
  // Growth-time orientation: out-links point from a node to those it cited.
  std::vector<std::vector<NodeId>> out(n);
  std::vector<std::vector<NodeId>> in(n);
  std::vector<Edge> edges;
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<NodeId> candidates;
  std::vector<NodeId> burned;
  std::deque<NodeId> frontier;

  auto burn_some = [&](const std::vector<NodeId>& pool, std::uint64_t count,
                       std::uint32_t mark) {
    candidates.clear();
    for (NodeId w : pool) {
      if (stamp[w] != mark) candidates.push_back(w);
    }
    const auto take = std::min<std::uint64_t>(count, candidates.size());
    for (std::uint64_t i = 0; i < take; ++i) {
      const auto j = i + rng.below(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
      const NodeId w = candidates[i];
      stamp[w] = mark;
      burned.push_back(w);
      frontier.push_back(w);
    }
  };

  for (NodeId v = 1; v < n; ++v) {
    const std::uint32_t mark = v;
    burned.clear();
    frontier.clear();
    const std::size_t amb = std::min<std::size_t>(ambassadors, v);
    for (std::size_t i = 0; i < amb; ++i) {
      NodeId a;
      do {
        a = static_cast<NodeId>(rng.below(v));
      } while (stamp[a] == mark);
      stamp[a] = mark;
      burned.push_back(a);
      frontier.push_back(a);
    }
    while (!frontier.empty()) {
      const NodeId w = frontier.front();
      frontier.pop_front();
      const auto forward = rng.geometric(p_forward);
      const auto backward = rng.geometric(p_backward);
      burn_some(out[w], forward, mark);
      burn_some(in[w], backward, mark);
    }
    for (NodeId w : burned) {
      out[v].push_back(w);
      in[w].push_back(v);
      edges.push_back({w, v});
    }
  }
  return Graph(n, edges);
}

GeneratorSpec parse_spec(const std::string& model, const std::string& params,
                         std::uint64_t seed) {
  GeneratorSpec spec;
  spec.model = parse_model(model);
  spec.seed = seed;
  std::map<std::string, std::string> given;
  auto parse_into = [](const std::string& text, std::map<std::string, std::string>& into) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string::npos) comma = text.size();
      const std::string item = text.substr(pos, comma - pos);
      pos = comma + 1;
      if (item.empty()) continue;
      const auto eq = item.find('=');
      require(eq != std::string::npos && eq > 0,
              "malformed parameter '" + item + "' (expected key=value)");
      into[item.substr(0, eq)] = item.substr(eq + 1);
    }
  };
  parse_into(default_params(spec.model), spec.params);
  parse_into(params, given);
  // An explicit edge probability replaces the default density target.
  if (spec.model == Model::kErdosRenyi && given.count("p") && !given.count("mean_degree")) {
    spec.params.erase("mean_degree");
  }
  for (auto& [key, value] : given) spec.params[key] = value;
  return spec;
}

std::string default_params(Model model) {
  switch (model) {
    case Model::kErdosRenyi: return "n=200:1000,mean_degree=8";
    case Model::kSmallWorld: return "n=200:1000,k=8,p=0.05";
    case Model::kScaleFree: return "n=200:1000,m=4,m0=4";
    case Model::kForestFire: return "n=200:1000,pf=0.37,pb=0.32,a=1";
  }
  return "";
}

Generated generate(const GeneratorSpec& spec, std::size_t index) {
  Generated out;
  out.seed = derive_seed(spec.seed, {static_cast<std::uint64_t>(spec.model), index});
  // Range resolution consumes its own stream so graph draws stay independent.
  Rng param_rng(derive_seed(out.seed, {0x706172616dULL}));

  std::map<std::string, double> values;
  for (const auto& [key, text] : spec.params) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      values[key] = parse_number(key, text);
      continue;
    }
    const double lo = parse_number(key, text.substr(0, colon));
    const double hi = parse_number(key, text.substr(colon + 1));
    require(lo <= hi && lo == std::floor(lo) && hi == std::floor(hi),
            "range for " + key + " must be integer lo:hi with lo <= hi");
    values[key] = lo + static_cast<double>(param_rng.below(
                           static_cast<std::uint64_t>(hi - lo) + 1));
  }

  auto take = [&](const std::string& key) -> double {
    auto it = values.find(key);
    require(it != values.end(), "missing parameter '" + key + "' for model " +
                                    model_name(spec.model));
    return it->second;
  };
  auto take_count = [&](const std::string& key) -> std::size_t {
    const double v = take(key);
    require(v >= 0 && v == std::floor(v), "parameter " + key + " must be a non-negative integer");
    return static_cast<std::size_t>(v);
  };
  auto check_known = [&](std::initializer_list<const char*> known) {
    for (const auto& [key, value] : values) {
      bool ok = false;
      for (const char* k : known) ok = ok || key == k;
      require(ok, "unknown parameter '" + key + "' for model " + model_name(spec.model));
    }
  };

  switch (spec.model) {
    case Model::kErdosRenyi: {
      check_known({"n", "p", "mean_degree"});
      const std::size_t n = take_count("n");
      if (!values.count("p")) {
        const double k = take("mean_degree");
        values["p"] = n > 1 ? std::min(1.0, k / static_cast<double>(n - 1)) : 0.0;
      }
      out.graph = erdos_renyi(n, values["p"], out.seed);
      break;
    }
    case Model::kSmallWorld:
      check_known({"n", "k", "p"});
      out.graph = watts_strogatz(take_count("n"), take_count("k"), take("p"), out.seed);
      break;
    case Model::kScaleFree:
      check_known({"n", "m", "m0"});
      out.graph = barabasi_albert(take_count("n"), take_count("m"), take_count("m0"),
                                  out.seed);
      break;
    case Model::kForestFire:
      check_known({"n", "pf", "pb", "a"});
      out.graph = forest_fire(take_count("n"), take("pf"), take("pb"), take_count("a"),
                              out.seed);
      break;
  }
  out.params = std::move(values);
  return out;
}

}  // namespace netfp::generators
