#include "netfp/netfp.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "netfp/commands.hpp"
#include "netfp/error.hpp"
#include "netfp/features.hpp"
#include "netfp/generators.hpp"
#include "netfp/gml.hpp"
#include "netfp/null_model.hpp"
#include "netfp/parallel.hpp"

struct netfp_graph {
  netfp::Graph graph;
};

namespace {

thread_local std::string last_error;

netfp_status status_for(netfp::ErrorKind kind) {
  switch (kind) {
    case netfp::ErrorKind::kInvalidArgument: return NETFP_ERR_INVALID_ARGUMENT;
    case netfp::ErrorKind::kParse: return NETFP_ERR_PARSE;
    case netfp::ErrorKind::kReference: return NETFP_ERR_REFERENCE;
    case netfp::ErrorKind::kIo: return NETFP_ERR_IO;
    case netfp::ErrorKind::kData: return NETFP_ERR_DATA;
  }
  return NETFP_ERR_INTERNAL;
}

template <typename Fn>
netfp_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return NETFP_OK;
  } catch (const netfp::Error& e) {
    last_error = e.what();
    return status_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("invalid JSON: ") + e.what();
    return NETFP_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NETFP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NETFP_ERR_INTERNAL;
  }
}

void check_out(const void* p, const char* name) {
  netfp::require(p != nullptr, std::string(name) + " must not be NULL");
}

const netfp::Graph& graph_of(const netfp_graph* g) {
  check_out(g, "graph");
  return g->graph;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void fill_report(const netfp::SimplifyReport& r, netfp_simplify_report* out) {
  if (!out) return;
  out->self_loops = r.self_loops;
  out->multi_edges = r.multi_edges;
  out->zero_weight = r.zero_weight;
}

}  // namespace

extern "C" {

const char* netfp_version(void) { return "1.0.0"; }

const char* netfp_status_name(netfp_status status) {
  switch (status) {
    case NETFP_OK: return "ok";
    case NETFP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NETFP_ERR_PARSE: return "parse error";
    case NETFP_ERR_REFERENCE: return "reference error";
    case NETFP_ERR_IO: return "i/o error";
    case NETFP_ERR_DATA: return "data error";
    case NETFP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* netfp_last_error(void) { return last_error.c_str(); }

void netfp_string_free(char* text) { std::free(text); }

netfp_status netfp_graph_from_edges(size_t node_count, const uint32_t* pairs,
                                    size_t edge_count, netfp_graph** out) {
  return guarded([&] {
    check_out(out, "out");
    *out = nullptr;
    if (edge_count > 0) check_out(pairs, "pairs");
    std::vector<netfp::Edge> edges(edge_count);
    for (size_t i = 0; i < edge_count; ++i) edges[i] = {pairs[2 * i], pairs[2 * i + 1]};
    *out = new netfp_graph{netfp::Graph(node_count, edges)};
  });
}

netfp_status netfp_graph_parse_gml(const char* text, size_t length, netfp_graph** out,
                                   netfp_simplify_report* report) {
  return guarded([&] {
    check_out(out, "out");
    *out = nullptr;
    if (length > 0) check_out(text, "text");
    netfp::SimplifyReport r;
    auto g = netfp::simplify(netfp::parse_gml(std::string_view(text ? text : "", length)), &r);
    fill_report(r, report);
    *out = new netfp_graph{std::move(g)};
  });
}

netfp_status netfp_graph_load_gml(const char* path, netfp_graph** out,
                                  netfp_simplify_report* report) {
  return guarded([&] {
    check_out(out, "out");
    check_out(path, "path");
    *out = nullptr;
    netfp::SimplifyReport r;
    auto g = netfp::load_gml_file(path, &r);
    fill_report(r, report);
    *out = new netfp_graph{std::move(g)};
  });
}

netfp_status netfp_graph_write_gml(const netfp_graph* graph, char** text, size_t* length) {
  return guarded([&] {
    check_out(text, "text");
    const std::string s = netfp::write_gml(graph_of(graph));
    *text = copy_string(s);
    if (length) *length = s.size();
  });
}

netfp_status netfp_graph_generate(const char* model, const char* params, uint64_t seed,
                                  size_t index, netfp_graph** out) {
  return guarded([&] {
    check_out(out, "out");
    check_out(model, "model");
    *out = nullptr;
    const auto m = netfp::generators::parse_model(model);
    const std::string p = params ? params : netfp::generators::default_params(m);
    auto made = netfp::generators::generate(netfp::generators::parse_spec(model, p, seed), index);
    *out = new netfp_graph{std::move(made.graph)};
  });
}

void netfp_graph_free(netfp_graph* graph) { delete graph; }

size_t netfp_graph_node_count(const netfp_graph* graph) {
  return graph ? graph->graph.node_count() : 0;
}

size_t netfp_graph_edge_count(const netfp_graph* graph) {
  return graph ? graph->graph.edge_count() : 0;
}

netfp_status netfp_graph_degree(const netfp_graph* graph, size_t node, size_t* degree) {
  return guarded([&] {
    check_out(degree, "degree");
    const auto& g = graph_of(graph);
    netfp::require(node < g.node_count(), "node index out of range");
    *degree = g.degree(static_cast<netfp::NodeId>(node));
  });
}

netfp_status netfp_graph_edges(const netfp_graph* graph, uint32_t* pairs, size_t capacity) {
  return guarded([&] {
    const auto& edges = graph_of(graph).edges();
    const size_t n = std::min(capacity, edges.size());
    if (n > 0) check_out(pairs, "pairs");
    for (size_t i = 0; i < n; ++i) {
      pairs[2 * i] = edges[i].u;
      pairs[2 * i + 1] = edges[i].v;
    }
  });
}

netfp_status netfp_graph_rewire(const netfp_graph* graph, size_t swaps, uint64_t seed,
                                netfp_graph** out) {
  return guarded([&] {
    check_out(out, "out");
    *out = nullptr;
    *out = new netfp_graph{netfp::null_model::rewire(graph_of(graph), swaps, seed)};
  });
}

netfp_status netfp_graph_clustering(const netfp_graph* graph, double* value) {
  return guarded([&] {
    check_out(value, "value");
    *value = netfp::features::clustering_coefficient(graph_of(graph));
  });
}

netfp_status netfp_graph_assortativity(const netfp_graph* graph, double* value, int* defined) {
  return guarded([&] {
    check_out(value, "value");
    check_out(defined, "defined");
    const auto r = netfp::features::degree_assortativity(graph_of(graph));
    *defined = r.has_value() ? 1 : 0;
    *value = r.value_or(0.0);
  });
}

netfp_status netfp_graph_motif_census(const netfp_graph* graph, int induced,
                                      uint64_t counts[NETFP_MOTIF_COUNT]) {
  return guarded([&] {
    check_out(counts, "counts");
    const auto c = netfp::features::motif_census(
        graph_of(graph), induced ? netfp::features::CensusMode::kInduced
                                 : netfp::features::CensusMode::kNonInduced);
    for (size_t i = 0; i < c.size(); ++i) counts[i] = c[i];
  });
}

void netfp_profile_options_init(netfp_profile_options* options) {
  if (!options) return;
  options->ensemble_size = 100;
  options->swaps_per_edge = 10;
  options->seed = 0;
  options->non_induced = 0;
  options->squared_norm = 0;
  options->threads = 1;
}

netfp_status netfp_graph_featurize(const netfp_graph* graph, const netfp_profile_options* options,
                                   netfp_feature_vector* out) {
  return guarded([&] {
    check_out(out, "out");
    netfp_profile_options opts;
    netfp_profile_options_init(&opts);
    if (options) opts = *options;
    netfp::null_model::EnsembleSpec spec;
    spec.ensemble_size = opts.ensemble_size;
    spec.swaps_per_edge = opts.swaps_per_edge;
    spec.seed = opts.seed;
    netfp::features::ProfileOptions po;
    po.census = opts.non_induced ? netfp::features::CensusMode::kNonInduced
                                 : netfp::features::CensusMode::kInduced;
    po.norm = opts.squared_norm ? netfp::features::ProfileNorm::kSquaredNorm
                                : netfp::features::ProfileNorm::kUnit;
    po.threads = opts.threads == 0 ? netfp::default_threads() : opts.threads;
    const auto fv = netfp::features::featurize(graph_of(graph), spec, po);
    out->clustering = fv.clustering;
    out->assortativity = fv.assortativity.value_or(0.0);
    out->assortativity_defined = fv.assortativity.has_value() ? 1 : 0;
    for (size_t i = 0; i < NETFP_MOTIF_COUNT; ++i) out->sp[i] = fv.sp[i];
  });
}

netfp_status netfp_run(const char* command, const char* config_json, char** summary) {
  return guarded([&] {
    check_out(command, "command");
    if (summary) *summary = nullptr;
    const auto config = config_json && *config_json ? nlohmann::json::parse(config_json)
                                                    : nlohmann::json::object();
    const auto result = netfp::commands::run(command, config);
    if (summary) *summary = copy_string(result.dump(2));
  });
}

}  // extern "C"
