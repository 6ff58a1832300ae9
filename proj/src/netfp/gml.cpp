#include "netfp/gml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "netfp/error.hpp"

namespace netfp {
namespace {

enum class TokenType { kKey, kInt, kReal, kString, kOpen, kClose, kEnd };

struct Token {
  TokenType type = TokenType::kEnd;
  std::string_view text;
  std::size_t line = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    if (pos_ >= text_.size()) return tok;
    const char c = text_[pos_];
    const std::size_t start = pos_;
    if (c == '[') {
      ++pos_;
      tok.type = TokenType::kOpen;
    } else if (c == ']') {
      ++pos_;
      tok.type = TokenType::kClose;
    } else if (c == '"') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
      }
      if (pos_ >= text_.size()) throw ParseError(tok.line, "unterminated string");
      tok.type = TokenType::kString;
      tok.text = text_.substr(start + 1, pos_ - start - 1);
      ++pos_;
      return tok;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      tok.type = TokenType::kKey;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
               c == '+' || c == '.') {
      bool real = false;
      ++pos_;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          ++pos_;
        } else if (d == '.' || d == 'e' || d == 'E' ||
                   ((d == '-' || d == '+') &&
                    (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))) {
          real = true;
          ++pos_;
        } else {
          break;
        }
      }
      tok.type = (real || c == '.') ? TokenType::kReal : TokenType::kInt;
    } else {
      throw ParseError(line_, std::string("unexpected character '") + c + "'");
    }
    tok.text = text_.substr(start, pos_ - start);
    return tok;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::optional<std::int64_t> to_int(const Token& tok) {
  if (tok.type != TokenType::kInt) return std::nullopt;
  std::string_view s = tok.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<double> to_real(const Token& tok) {
  if (tok.type != TokenType::kInt && tok.type != TokenType::kReal) {
    return std::nullopt;
  }
  std::string_view s = tok.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string decode_string(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '&') {
      if (raw.substr(i, 6) == "&quot;") {
        out += '"';
        i += 5;
        continue;
      }
      if (raw.substr(i, 5) == "&amp;") {
        out += '&';
        i += 4;
        continue;
      }
    }
    out += raw[i];
  }
  return out;
}

std::string encode_string(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    if (c == '"') {
      out += "&quot;";
    } else if (c == '&') {
      out += "&amp;";
    } else {
      out += c;
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  RawGraphRecord parse_document() {
    bool found = false;
    RawGraphRecord record;
    while (cur_.type != TokenType::kEnd) {
      const Token key = expect_key();
      if (key.text == "graph" && !found) {
        if (cur_.type != TokenType::kOpen) {
          throw ParseError(cur_.line, "expected '[' after graph");
        }
        advance();
        parse_graph(record);
        found = true;
      } else {
        skip_value();
      }
    }
    if (!found) throw ParseError(cur_.line, "no graph block");
    return record;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  Token expect_key() {
    if (cur_.type != TokenType::kKey) {
      throw ParseError(cur_.line, cur_.type == TokenType::kClose
                                      ? "unbalanced ']'"
                                      : "expected a key");
    }
    Token key = cur_;
    advance();
    return key;
  }

  // Consumes a scalar or a bracketed block.
  void skip_value() {
    if (cur_.type == TokenType::kOpen) {
      const std::size_t open_line = cur_.line;
      advance();
      while (cur_.type != TokenType::kClose) {
        if (cur_.type == TokenType::kEnd) {
          throw ParseError(open_line, "unbalanced '[': block never closed");
        }
        expect_key();
        skip_value();
      }
      advance();
      return;
    }
    expect_scalar();
  }

  Token expect_scalar() {
    if (cur_.type == TokenType::kInt || cur_.type == TokenType::kReal ||
        cur_.type == TokenType::kString) {
      Token t = cur_;
      advance();
      return t;
    }
    if (cur_.type == TokenType::kEnd) throw ParseError(cur_.line, "unexpected end of input");
    throw ParseError(cur_.line, "expected a value");
  }

  void parse_graph(RawGraphRecord& record) {
    const std::size_t open_line = cur_.line;
    struct PendingEdge {
      RawEntry entry;
      std::size_t line;
    };
    std::vector<PendingEdge> edges;
    while (cur_.type != TokenType::kClose) {
      if (cur_.type == TokenType::kEnd) {
        throw ParseError(open_line, "unbalanced '[': graph block never closed");
      }
      const Token key = expect_key();
      if (key.text == "directed" && cur_.type != TokenType::kOpen) {
        const Token value = expect_scalar();
        const auto flag = to_int(value);
        record.directed = flag.has_value() && *flag != 0;
      } else if (key.text == "node" && cur_.type == TokenType::kOpen) {
        parse_node(record, key.line);
      } else if (key.text == "edge" && cur_.type == TokenType::kOpen) {
        PendingEdge pending{parse_edge(key.line), key.line};
        edges.push_back(pending);
      } else {
        skip_value();
      }
    }
    advance();

    std::unordered_set<std::int64_t> declared(record.node_ids.begin(),
                                              record.node_ids.end());
    record.entries.reserve(edges.size());
    for (const auto& p : edges) {
      for (std::int64_t id : {p.entry.source, p.entry.target}) {
        if (!declared.count(id)) {
          throw Error(ErrorKind::kReference,
                      "line " + std::to_string(p.line) +
                          ": edge references undeclared node id " +
                          std::to_string(id));
        }
      }
      record.entries.push_back(p.entry);
    }
  }

  void parse_node(RawGraphRecord& record, std::size_t line) {
    advance();  // '['
    std::optional<std::int64_t> id;
    std::optional<std::string> label;
    while (cur_.type != TokenType::kClose) {
      if (cur_.type == TokenType::kEnd) {
        throw ParseError(line, "unbalanced '[': node block never closed");
      }
      const Token key = expect_key();
      if (key.text == "id" && cur_.type != TokenType::kOpen) {
        const Token value = expect_scalar();
        id = to_int(value);
        if (!id) throw ParseError(value.line, "node id must be an integer");
      } else if (key.text == "label" && cur_.type == TokenType::kString) {
        label = decode_string(expect_scalar().text);
      } else {
        skip_value();
      }
    }
    advance();
    if (!id) throw ParseError(line, "node without id");
    if (!seen_.insert(*id).second) return;  // repeated declaration
    record.node_ids.push_back(*id);
    record.node_labels.push_back(label ? *label : std::to_string(*id));
  }

  RawEntry parse_edge(std::size_t line) {
    advance();  // '['
    std::optional<std::int64_t> source;
    std::optional<std::int64_t> target;
    RawEntry entry;
    while (cur_.type != TokenType::kClose) {
      if (cur_.type == TokenType::kEnd) {
        throw ParseError(line, "unbalanced '[': edge block never closed");
      }
      const Token key = expect_key();
      if ((key.text == "source" || key.text == "target") &&
          cur_.type != TokenType::kOpen) {
        const Token value = expect_scalar();
        const auto v = to_int(value);
        if (!v) throw ParseError(value.line, std::string(key.text) + " must be an integer");
        (key.text == "source" ? source : target) = v;
      } else if ((key.text == "weight" || key.text == "value") &&
                 (cur_.type == TokenType::kInt || cur_.type == TokenType::kReal)) {
        entry.weight = to_real(expect_scalar());
      } else {
        skip_value();
      }
    }
    advance();
    if (!source) throw ParseError(line, "edge without source");
    if (!target) throw ParseError(line, "edge without target");
    entry.source = *source;
    entry.target = *target;
    return entry;
  }

  Lexer lexer_;
  Token cur_;
  std::unordered_set<std::int64_t> seen_;
};

}  // namespace

RawGraphRecord parse_gml(std::string_view text) {
  return Parser(text).parse_document();
}

Graph simplify(const RawGraphRecord& record, SimplifyReport* report) {
  SimplifyReport counts;
  std::unordered_map<std::int64_t, NodeId> index;
  index.reserve(record.node_ids.size());
  for (std::int64_t id : record.node_ids) {
    index.emplace(id, static_cast<NodeId>(index.size()));
  }
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> present;
  for (const auto& entry : record.entries) {
    if (entry.weight && *entry.weight == 0.0) {
      ++counts.zero_weight;
      continue;
    }
    auto su = index.find(entry.source);
    auto tv = index.find(entry.target);
    require(su != index.end() && tv != index.end(),
            "entry references undeclared node");
    NodeId a = su->second;
    NodeId b = tv->second;
    if (a == b) {
      ++counts.self_loops;
      continue;
    }
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (std::uint64_t{a} << 32) | b;
    if (!present.insert(key).second) {
      ++counts.multi_edges;
      continue;
    }
    edges.push_back({a, b});
  }
  Graph g(record.node_ids.size(), edges);
  if (!record.node_labels.empty()) g.set_node_labels(record.node_labels);
  if (report) *report = counts;
  return g;
}

std::string write_gml(const Graph& g) {
  std::string out = "graph [\n";
  const auto& labels = g.node_labels();
  for (NodeId i = 0; i < g.node_count(); ++i) {
    out += "  node [\n    id " + std::to_string(i) + "\n";
    if (labels) out += "    label \"" + encode_string((*labels)[i]) + "\"\n";
    out += "  ]\n";
  }
  for (const auto& e : g.edges()) {
    out += "  edge [\n    source " + std::to_string(e.u) + "\n    target " +
           std::to_string(e.v) + "\n  ]\n";
  }
  out += "]\n";
  return out;
}

Graph load_gml_file(const std::filesystem::path& path, SimplifyReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return simplify(parse_gml(buffer.str()), report);
  } catch (const ParseError& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void save_gml_file(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << write_gml(g);
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace netfp
