#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netfp/features.hpp"
#include "netfp/pipeline.hpp"
#include "netfp/sampling.hpp"

namespace netfp::io {

// Shortest text that parses back to the same double.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

using CsvRow = std::vector<std::string>;
std::string csv_escape(const std::string& field);
std::string csv_line(const CsvRow& row);
std::vector<CsvRow> parse_csv(const std::string& text);

// Square matrix with a header of class labels and the label as first column.
std::string matrix_csv(const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& m);
std::string matrix_csv(const std::vector<std::string>& labels,
                       const std::vector<std::vector<std::uint64_t>>& m);
std::pair<std::vector<std::string>, std::vector<std::vector<double>>> parse_matrix_csv(
    const std::string& text);

struct FeatureRow {
  std::string file;
  std::string label;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  features::FeatureVector features;
};

std::string feature_csv(const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> parse_feature_csv(const std::string& text);

// Classes sorted by name; undefined assortativity imputed to 0; provenance id
// is the row index.
sampling::LabeledDataset to_dataset(const std::vector<FeatureRow>& rows);

std::string network_gml(const pipeline::WeightedNetwork& net);
std::string network_dot(const pipeline::WeightedNetwork& net);

}  // namespace netfp::io
