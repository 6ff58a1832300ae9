#include "netfp/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "netfp/error.hpp"

namespace netfp::io {
namespace {

double parse_double(const std::string& text, std::size_t line, const char* column) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line, std::string("bad number in column ") + column + ": '" + text + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& text, std::size_t line, const char* column) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line, std::string("bad integer in column ") + column + ": '" + text + "'");
  }
  return value;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_line(const CsvRow& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(row[i]);
  }
  return out + "\n";
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
      ++line;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError(line, "unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string matrix_csv(const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& m) {
  CsvRow header{"class"};
  header.insert(header.end(), labels.begin(), labels.end());
  std::string out = csv_line(header);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    CsvRow row{labels[i]};
    for (double v : m[i]) row.push_back(format_double(v));
    out += csv_line(row);
  }
  return out;
}

std::string matrix_csv(const std::vector<std::string>& labels,
                       const std::vector<std::vector<std::uint64_t>>& m) {
  CsvRow header{"class"};
  header.insert(header.end(), labels.begin(), labels.end());
  std::string out = csv_line(header);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    CsvRow row{labels[i]};
    for (auto v : m[i]) row.push_back(std::to_string(v));
    out += csv_line(row);
  }
  return out;
}

std::pair<std::vector<std::string>, std::vector<std::vector<double>>> parse_matrix_csv(
    const std::string& text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw ParseError(1, "empty matrix file");
  std::vector<std::string> labels(rows[0].begin() + 1, rows[0].end());
  if (rows.size() != labels.size() + 1) {
    throw ParseError(rows.size(), "matrix is not square");
  }
  std::vector<std::vector<double>> m;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != labels.size() + 1 || rows[i][0] != labels[i - 1]) {
      throw ParseError(i + 1, "row label or width does not match the header");
    }
    std::vector<double> r;
    for (std::size_t j = 1; j < rows[i].size(); ++j) {
      r.push_back(parse_double(rows[i][j], i + 1, labels[j - 1].c_str()));
    }
    m.push_back(std::move(r));
  }
  return {std::move(labels), std::move(m)};
}

std::string feature_csv(const std::vector<FeatureRow>& rows) {
  CsvRow header{"file", "label", "n", "m"};
  for (const auto& name : features::feature_names()) {
    header.push_back(name == "clustering" || name == "assortativity"
                         ? name
                         : "sp" + name.substr(name.size() - 1));
  }
  std::string out = csv_line(header);
  for (const auto& r : rows) {
    CsvRow row{r.file, r.label, std::to_string(r.nodes), std::to_string(r.edges),
               format_double(r.features.clustering),
               r.features.assortativity ? format_double(*r.features.assortativity) : ""};
    for (double v : r.features.sp) row.push_back(format_double(v));
    out += csv_line(row);
  }
  return out;
}

std::vector<FeatureRow> parse_feature_csv(const std::string& text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw ParseError(1, "empty feature table");
  const CsvRow expected{"file", "label", "n", "m", "clustering", "assortativity",
                        "sp1", "sp2", "sp3", "sp4", "sp5", "sp6"};
  if (rows[0] != expected) throw ParseError(1, "unexpected feature table header");
  std::vector<FeatureRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::size_t line = i + 1;
    if (r.size() != expected.size()) throw ParseError(line, "wrong number of columns");
    FeatureRow row;
    row.file = r[0];
    row.label = r[1];
    row.nodes = parse_count(r[2], line, "n");
    row.edges = parse_count(r[3], line, "m");
    row.features.clustering = parse_double(r[4], line, "clustering");
    if (!r[5].empty()) row.features.assortativity = parse_double(r[5], line, "assortativity");
    for (std::size_t k = 0; k < features::kMotifCount; ++k) {
      row.features.sp[k] = parse_double(r[6 + k], line, expected[6 + k].c_str());
    }
    out.push_back(std::move(row));
  }
  return out;
}

sampling::LabeledDataset to_dataset(const std::vector<FeatureRow>& rows) {
  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) index.emplace(r.label, 0);
  sampling::LabeledDataset d;
  for (auto& [name, id] : index) {
    id = d.classes.size();
    d.classes.push_back(name);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto values = rows[i].features.to_array(0.0);
    sampling::Sample s;
    s.x.assign(values.begin(), values.end());
    s.label = index.at(rows[i].label);
    s.id = i;
    d.samples.push_back(std::move(s));
  }
  return d;
}

std::string network_gml(const pipeline::WeightedNetwork& net) {
  std::string out = "graph [\n";
  for (std::size_t i = 0; i < net.labels.size(); ++i) {
    std::string label;
    for (char c : net.labels[i]) label += c == '"' ? std::string("&quot;") : std::string(1, c);
    out += "  node [\n    id " + std::to_string(i) + "\n    label \"" + label + "\"\n  ]\n";
  }
  for (const auto& e : net.edges) {
    out += "  edge [\n    source " + std::to_string(e.a) + "\n    target " +
           std::to_string(e.b) + "\n    weight " + format_double(e.weight) + "\n  ]\n";
  }
  return out + "]\n";
}

std::string network_dot(const pipeline::WeightedNetwork& net) {
  std::string out = "graph similarity {\n";
  for (std::size_t i = 0; i < net.labels.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=" + dot_quote(net.labels[i]) + "];\n";
  }
  for (const auto& e : net.edges) {
    out += "  n" + std::to_string(e.a) + " -- n" + std::to_string(e.b) +
           " [weight=" + format_double(e.weight) + "];\n";
  }
  return out + "}\n";
}

}  // namespace netfp::io
