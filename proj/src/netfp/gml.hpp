#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netfp/graph.hpp"

namespace netfp {

struct RawEntry {
  std::int64_t source = 0;
  std::int64_t target = 0;
  std::optional<double> weight;
};

// A GML graph exactly as written: declared node ids in file order, edge
// entries in file order with multiplicity, directionality flag.
struct RawGraphRecord {
  bool directed = false;
  std::vector<std::int64_t> node_ids;
  std::vector<std::string> node_labels;  // parallel to node_ids
  std::vector<RawEntry> entries;
};

struct SimplifyReport {
  std::size_t self_loops = 0;
  std::size_t multi_edges = 0;
  std::size_t zero_weight = 0;
};

// Accepts a single `graph [ ... ]` block. Unknown keys and nested blocks are
// skipped. Throws ParseError (with line) on malformed input and
// Error(kReference) for edges naming an undeclared node.
RawGraphRecord parse_gml(std::string_view text);

// Drops direction, zero-weight entries and self-loops, merges parallel
// entries, and compacts node ids to [0, n) in declaration order.
Graph simplify(const RawGraphRecord& record, SimplifyReport* report = nullptr);

// Canonical form: nodes ascending, edges in (min, max) order.
std::string write_gml(const Graph& g);

Graph load_gml_file(const std::filesystem::path& path,
                    SimplifyReport* report = nullptr);
void save_gml_file(const Graph& g, const std::filesystem::path& path);

}  // namespace netfp
