#include "netfp/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>

#include "netfp/error.hpp"
#include "netfp/features.hpp"
#include "netfp/generators.hpp"
#include "netfp/gml.hpp"
#include "netfp/io.hpp"
#include "netfp/learner.hpp"
#include "netfp/null_model.hpp"
#include "netfp/parallel.hpp"
#include "netfp/pipeline.hpp"
#include "netfp/rng.hpp"

namespace netfp::commands {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kCorpusFormat = "netfp-corpus/1";
constexpr const char* kSeedScheme =
    "splitmix64 chain over (master seed, task keys); see rng.hpp derive_seed";

// Reads config[key] if present, otherwise the default, and records the
// resolved value so the manifest reproduces the run.
class Config {
 public:
  explicit Config(const json& raw) : raw_(raw.is_null() ? json::object() : raw) {
    require(raw_.is_object(), "configuration must be a JSON object");
  }

  template <typename T>
  T get(const std::string& key, const T& fallback) {
    T value = fallback;
    if (raw_.contains(key) && !raw_[key].is_null()) {
      try {
        value = raw_[key].get<T>();
      } catch (const json::exception&) {
        throw Error(ErrorKind::kInvalidArgument, "configuration key '" + key + "' has the wrong type");
      }
    }
    resolved_[key] = value;
    return value;
  }

  template <typename T>
  T need(const std::string& key) {
    require(raw_.contains(key) && !raw_[key].is_null(), "missing required setting '" + key + "'");
    return get<T>(key, T{});
  }

  unsigned threads() {
    const auto t = raw_.value("threads", 0u);
    return t == 0 ? default_threads() : t;
  }

  // Unknown keys are reported rather than silently ignored.
  void finish() const {
    for (const auto& [key, value] : raw_.items()) {
      require(key == "threads" || resolved_.contains(key), "unknown setting '" + key + "'");
    }
  }

  const json& resolved() const { return resolved_; }

 private:
  json raw_;
  json resolved_ = json::object();
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

learn::ForestConfig forest_config(Config& c) {
  learn::ForestConfig f;
  f.trees = c.get<std::size_t>("trees", 100);
  f.features_per_split = c.get<std::size_t>("features_per_split", 0);
  f.max_depth = c.get<std::size_t>("max_depth", 0);
  f.min_leaf = c.get<std::size_t>("min_leaf", 1);
  return f;
}

null_model::EnsembleSpec ensemble_spec(Config& c, std::uint64_t seed) {
  null_model::EnsembleSpec spec;
  spec.ensemble_size = c.get<std::size_t>("ensemble_size", 100);
  spec.swaps_per_edge = c.get<std::size_t>("swaps_per_edge", 10);
  spec.seed = seed;
  spec.validate();
  return spec;
}

features::ProfileOptions profile_options(Config& c) {
  features::ProfileOptions o;
  const auto census = c.get<std::string>("census", "induced");
  require(census == "induced" || census == "non-induced",
          "census must be 'induced' or 'non-induced'");
  o.census = census == "induced" ? features::CensusMode::kInduced
                                 : features::CensusMode::kNonInduced;
  const auto norm = c.get<std::string>("sp_norm", "unit");
  require(norm == "unit" || norm == "squared", "sp_norm must be 'unit' or 'squared'");
  o.norm = norm == "unit" ? features::ProfileNorm::kUnit : features::ProfileNorm::kSquaredNorm;
  return o;
}

// ---- corpus generation -----------------------------------------------------

struct CorpusRequest {
  generators::GeneratorSpec spec;
  std::size_t count = 0;
  std::string label;
};

json generate_corpus(const std::vector<CorpusRequest>& requests, const fs::path& out,
                     unsigned threads) {
  fs::create_directories(out);
  json entries = json::array();
  for (const auto& req : requests) {
    std::vector<generators::Generated> made(req.count);
    parallel_for(req.count, threads,
                 [&](std::size_t i) { made[i] = generators::generate(req.spec, i); });
    for (std::size_t i = 0; i < req.count; ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "%s_%04zu.gml",
                    generators::model_name(req.spec.model).c_str(), i);
      save_gml_file(made[i].graph, out / name);
      json params = json::object();
      for (const auto& [k, v] : made[i].params) params[k] = v;
      entries.push_back({{"file", name},
                         {"label", req.label},
                         {"model", generators::model_name(req.spec.model)},
                         {"params", params},
                         {"seed", made[i].seed},
                         {"n", made[i].graph.node_count()},
                         {"m", made[i].graph.edge_count()}});
    }
  }
  return entries;
}

// Merges new entries into DIR/manifest.json, replacing entries for the same file.
json write_corpus_manifest(const fs::path& dir, const json& entries, const json& config) {
  const fs::path path = dir / "manifest.json";
  json manifest = {{"format", kCorpusFormat}, {"runs", json::array()}, {"graphs", json::array()}};
  if (fs::exists(path)) {
    try {
      auto existing = json::parse(io::read_text_file(path));
      if (existing.value("format", "") == kCorpusFormat) manifest = existing;
    } catch (const json::exception&) {
    }
  }
  std::map<std::string, json> by_file;
  for (const auto& g : manifest["graphs"]) by_file[g.at("file").get<std::string>()] = g;
  for (const auto& g : entries) by_file[g.at("file").get<std::string>()] = g;
  manifest["graphs"] = json::array();
  for (auto& [file, g] : by_file) manifest["graphs"].push_back(g);
  auto& runs = manifest["runs"];
  if (std::find(runs.begin(), runs.end(), config) == runs.end()) runs.push_back(config);
  io::write_text_file(path, dump(manifest));
  return manifest;
}

json cmd_gen(const json& raw) {
  Config c(raw);
  CorpusRequest req;
  const auto model = c.need<std::string>("model");
  const auto parsed_model = generators::parse_model(model);
  const auto params = c.get<std::string>("params", generators::default_params(parsed_model));
  const auto seed = c.get<std::uint64_t>("seed", 0);
  req.spec = generators::parse_spec(model, params, seed);
  req.count = c.get<std::size_t>("count", 1);
  req.label = c.get<std::string>("label", generators::model_label(parsed_model));
  const fs::path out = c.need<std::string>("out");
  const unsigned threads = c.threads();
  c.finish();
  const auto entries = generate_corpus({req}, out, threads);
  const json config = {{"command", "gen"}, {"settings", c.resolved()}};
  write_corpus_manifest(out, entries, config);
  return {{"graphs", entries.size()}, {"manifest", (out / "manifest.json").string()}};
}

// ---- featurization ---------------------------------------------------------

json cmd_featurize(const json& raw) {
  Config c(raw);
  const fs::path in = c.need<std::string>("in");
  const auto manifest_path = c.get<std::string>("manifest", "");
  const fs::path out = c.need<std::string>("out");
  const auto seed = c.get<std::uint64_t>("seed", 0);
  const auto spec = ensemble_spec(c, seed);
  auto options = profile_options(c);
  const bool drop = c.get<bool>("drop_isolated", false);
  const unsigned threads = c.threads();
  c.finish();

  struct Item {
    std::string file;
    std::string label;
  };
  std::vector<Item> items;
  if (!manifest_path.empty()) {
    json manifest;
    try {
      manifest = json::parse(io::read_text_file(manifest_path));
      for (const auto& g : manifest.at("graphs")) {
        items.push_back({g.at("file").get<std::string>(), g.value("label", "unlabeled")});
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParse, manifest_path + ": malformed manifest: " + e.what());
    }
  } else {
    if (!fs::is_directory(in)) throw Error(ErrorKind::kIo, "cannot read directory " + in.string());
    for (const auto& entry : fs::directory_iterator(in)) {
      if (entry.path().extension() == ".gml") {
        items.push_back({entry.path().filename().string(), "unlabeled"});
      }
    }
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.file < b.file; });
  }

  std::vector<io::FeatureRow> rows(items.size());
  options.threads = items.size() == 1 ? threads : 1;
  parallel_for(items.size(), items.size() == 1 ? 1 : threads, [&](std::size_t i) {
    Graph g = load_gml_file(in / items[i].file);
    if (drop) g = drop_isolated(g);
    auto graph_spec = spec;
    graph_spec.seed = derive_seed(seed, {hash_string(items[i].file)});
    rows[i].file = items[i].file;
    rows[i].label = items[i].label;
    rows[i].nodes = g.node_count();
    rows[i].edges = g.edge_count();
    rows[i].features = features::featurize(g, graph_spec, options);
  });
  io::write_text_file(out, io::feature_csv(rows));
  fs::path sidecar = out;
  sidecar.replace_extension(".json");
  const json meta = {{"command", "featurize"},
                     {"settings", c.resolved()},
                     {"ensemble",
                      {{"ensemble_size", spec.ensemble_size},
                       {"swaps_per_edge", spec.swaps_per_edge},
                       {"master_seed", seed},
                       {"member_seed", "derive_seed(derive_seed(master_seed, fnv1a(file)), member)"}}},
                     {"std_estimator", "sample (n - 1)"},
                     {"zero_spread_clamp", features::kZeroSpreadClamp},
                     {"graphs", rows.size()}};
  io::write_text_file(sidecar, dump(meta));
  return {{"graphs", rows.size()}, {"features", out.string()}, {"sidecar", sidecar.string()}};
}

// ---- learning protocols ----------------------------------------------------

sampling::LabeledDataset load_dataset(const fs::path& path) {
  return io::to_dataset(io::parse_feature_csv(io::read_text_file(path)));
}

json class_counts_json(const sampling::LabeledDataset& d) {
  json out = json::object();
  const auto counts = d.class_counts();
  for (std::size_t i = 0; i < d.classes.size(); ++i) out[d.classes[i]] = counts[i];
  return out;
}

json cmd_importance(const json& raw) {
  Config c(raw);
  const fs::path features_path = c.need<std::string>("features");
  const auto target = c.need<std::string>("target");
  pipeline::ProtocolConfig cfg;
  cfg.runs = c.get<std::size_t>("runs", 1000);
  cfg.min_class_size = c.get<std::size_t>("min_class_size", pipeline::kMinClassSize);
  cfg.forest = forest_config(c);
  const auto seed = c.get<std::uint64_t>("seed", 0);
  const fs::path out = c.need<std::string>("out");
  cfg.threads = c.threads();
  c.finish();

  const auto data = load_dataset(features_path);
  std::vector<std::string> names(features::feature_names().begin(),
                                 features::feature_names().end());
  const auto hist = pipeline::run_binary_importance(data, target, names, cfg, seed);

  io::CsvRow header{"feature"};
  for (std::size_t r = 0; r < names.size(); ++r) header.push_back("rank_" + std::to_string(r + 1));
  std::string csv = io::csv_line(header);
  for (std::size_t f = 0; f < names.size(); ++f) {
    io::CsvRow row{names[f]};
    for (auto v : hist.counts[f]) row.push_back(std::to_string(v));
    csv += io::csv_line(row);
  }
  fs::create_directories(out);
  io::write_text_file(out / "rank_histogram.csv", csv);
  const json manifest = {{"command", "importance"},
                         {"settings", c.resolved()},
                         {"seed_scheme", kSeedScheme},
                         {"class_counts", class_counts_json(data)},
                         {"target", target},
                         {"runs", hist.runs},
                         {"mean_auc", hist.mean_auc},
                         {"run_auc", hist.run_auc}};
  io::write_text_file(out / "run_manifest.json", dump(manifest));
  return {{"mean_auc", hist.mean_auc}, {"out", out.string()}};
}

json classify_into(const sampling::LabeledDataset& data, const pipeline::ProtocolConfig& cfg,
                   std::uint64_t seed, const fs::path& out, const json& settings) {
  const auto agg = pipeline::run_multiclass_confusion(data, cfg, seed);
  fs::create_directories(out);
  io::write_text_file(out / "confusion_mean.csv", io::matrix_csv(agg.classes, agg.mean_counts));
  io::write_text_file(out / "confusion_norm.csv", io::matrix_csv(agg.classes, agg.row_normalized));
  io::write_text_file(out / "similarity.csv", io::matrix_csv(agg.classes, agg.similarity));
  const auto net = pipeline::build_similarity_network(agg);
  io::write_text_file(out / "similarity.gml", io::network_gml(net));
  io::write_text_file(out / "similarity.dot", io::network_dot(net));
  json empty_rows = json::array();
  for (std::size_t i = 0; i < agg.classes.size(); ++i) {
    if (agg.empty_rows[i]) empty_rows.push_back(agg.classes[i]);
  }
  json class_auc = json::object();
  for (std::size_t i = 0; i < agg.classes.size(); ++i) class_auc[agg.classes[i]] = agg.class_auc[i];
  const json manifest = {{"command", "classify"},
                         {"settings", settings},
                         {"seed_scheme", kSeedScheme},
                         {"class_counts", class_counts_json(data)},
                         {"classes", agg.classes},
                         {"dropped_classes", agg.dropped},
                         {"empty_rows", empty_rows},
                         {"runs", agg.runs},
                         {"macro_auc", agg.macro_auc},
                         {"class_auc", class_auc}};
  io::write_text_file(out / "run_manifest.json", dump(manifest));
  json diag = json::object();
  for (std::size_t i = 0; i < agg.classes.size(); ++i) diag[agg.classes[i]] = agg.row_normalized[i][i];
  return {{"out", out.string()}, {"macro_auc", agg.macro_auc}, {"diagonal", diag}};
}

pipeline::ProtocolConfig protocol_config(Config& c) {
  pipeline::ProtocolConfig cfg;
  cfg.runs = c.get<std::size_t>("runs", 1000);
  cfg.min_class_size = c.get<std::size_t>("min_class_size", pipeline::kMinClassSize);
  cfg.smote_k = c.get<std::size_t>("smote_k", 3);
  cfg.forest = forest_config(c);
  return cfg;
}

json cmd_classify(const json& raw) {
  Config c(raw);
  const fs::path features_path = c.need<std::string>("features");
  auto cfg = protocol_config(c);
  cfg.regime = sampling::parse_regime(c.get<std::string>("sampling", "none"));
  const auto seed = c.get<std::uint64_t>("seed", 0);
  const fs::path out = c.need<std::string>("out");
  cfg.threads = c.threads();
  c.finish();
  return classify_into(load_dataset(features_path), cfg, seed, out, c.resolved());
}

// ---- communities -----------------------------------------------------------

json communities_into(const std::vector<std::string>& inputs, const fs::path& out,
                      const json& settings) {
  require(!inputs.empty(), "communities needs at least one input");
  std::vector<pipeline::Partition> partitions;
  json list = json::array();
  for (const auto& input : inputs) {
    fs::path path = input;
    if (fs::is_directory(path)) path /= "similarity.csv";
    auto [labels, sim] = io::parse_matrix_csv(io::read_text_file(path));
    const auto net = pipeline::network_from_similarity(labels, sim);
    auto p = pipeline::detect_communities(net);
    json groups = json::array();
    for (std::size_t g = 0; g < p.community_count(); ++g) {
      json members = json::array();
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (p.community[i] == g) members.push_back(labels[i]);
      }
      groups.push_back(members);
    }
    list.push_back({{"source", input},
                    {"labels", p.labels},
                    {"community", p.community},
                    {"communities", groups},
                    {"modularity", p.modularity}});
    partitions.push_back(std::move(p));
  }
  const auto overlap = pipeline::community_overlap(partitions);
  fs::create_directories(out);
  io::write_text_file(out / "communities.json",
                      dump({{"command", "communities"}, {"settings", settings}, {"partitions", list}}));
  io::write_text_file(out / "overlap.csv", io::matrix_csv(partitions.front().labels, overlap));
  return {{"partitions", partitions.size()}, {"out", out.string()}};
}

json cmd_communities(const json& raw) {
  Config c(raw);
  const auto inputs = c.need<std::vector<std::string>>("inputs");
  const fs::path out = c.need<std::string>("out");
  c.finish();
  return communities_into(inputs, out, c.resolved());
}

// ---- everything --------------------------------------------------------------

json cmd_all(const json& raw) {
  Config c(raw);
  const fs::path out = c.need<std::string>("out");
  const auto seed = c.get<std::uint64_t>("seed", 0);
  const auto count = c.get<std::size_t>("count", 60);
  const auto models = c.get<std::vector<std::string>>("models", {"er", "ws", "ba", "ff"});
  auto params = c.get<std::map<std::string, std::string>>("params", {});
  const auto spec = ensemble_spec(c, seed);
  const auto options = profile_options(c);
  auto cfg = protocol_config(c);
  const auto regimes =
      c.get<std::vector<std::string>>("regimes", {"none", "over", "under", "smote"});
  const unsigned threads = c.threads();
  cfg.threads = threads;
  c.finish();
  const json settings = c.resolved();

  std::vector<CorpusRequest> requests;
  for (const auto& model : models) {
    const auto m = generators::parse_model(model);
    const std::string p = params.count(model) ? params[model] : generators::default_params(m);
    requests.push_back({generators::parse_spec(model, p, seed), count, generators::model_label(m)});
  }
  const fs::path corpus = out / "corpus";
  const auto entries = generate_corpus(requests, corpus, threads);
  write_corpus_manifest(corpus, entries, {{"command", "all"}, {"settings", settings}});

  json fcfg = {{"in", corpus.string()},
               {"manifest", (corpus / "manifest.json").string()},
               {"out", (out / "features.csv").string()},
               {"seed", seed},
               {"ensemble_size", spec.ensemble_size},
               {"swaps_per_edge", spec.swaps_per_edge},
               {"census", options.census == features::CensusMode::kInduced ? "induced" : "non-induced"},
               {"sp_norm", options.norm == features::ProfileNorm::kUnit ? "unit" : "squared"},
               {"threads", threads}};
  cmd_featurize(fcfg);

  const auto data = load_dataset(out / "features.csv");
  json results = json::object();
  std::vector<std::string> dirs;
  for (const auto& name : regimes) {
    auto run_cfg = cfg;
    run_cfg.regime = sampling::parse_regime(name);
    const fs::path dir = out / "classify" / name;
    json s = settings;
    s["sampling"] = name;
    results[name] = classify_into(data, run_cfg, seed, dir, s);
    dirs.push_back(dir.string());
  }
  communities_into(dirs, out / "communities", settings);
  const json manifest = {{"command", "all"},
                         {"settings", settings},
                         {"seed_scheme", kSeedScheme},
                         {"class_counts", class_counts_json(data)},
                         {"results", results}};
  io::write_text_file(out / "run_manifest.json", dump(manifest));
  return manifest;
}

}  // namespace

nlohmann::json run(const std::string& command, const nlohmann::json& config) {
  if (command == "gen") return cmd_gen(config);
  if (command == "featurize") return cmd_featurize(config);
  if (command == "importance") return cmd_importance(config);
  if (command == "classify") return cmd_classify(config);
  if (command == "communities") return cmd_communities(config);
  if (command == "all") return cmd_all(config);
  throw Error(ErrorKind::kInvalidArgument, "unknown command '" + command + "'");
}

}  // namespace netfp::commands
