// netfp command-line front end. Flags are collected into a JSON settings
// object and handed to netfp_run through the C interface.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netfp/netfp.h"

namespace {

using nlohmann::json;

// Registers an option that writes its value to settings[key] only when given.
template <typename T>
CLI::Option* flag_to(CLI::App* app, const std::string& name, json& settings,
                     const std::string& key, const std::string& help) {
  return app->add_option_function<T>(
      name, [&settings, key](const T& v) { settings[key] = v; }, help);
}

void add_threads(CLI::App* app, json& s) {
  flag_to<unsigned>(app, "--threads", s, "threads", "worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
}

void add_seed(CLI::App* app, json& s) {
  flag_to<std::uint64_t>(app, "--seed", s, "seed", "master seed (default 0)");
}

void add_ensemble(CLI::App* app, json& s) {
  flag_to<std::size_t>(app, "--ensemble-size", s, "ensemble_size", "null-model samples (default 100)");
  flag_to<std::size_t>(app, "--swaps-per-edge", s, "swaps_per_edge", "edge swaps per edge (default 10)");
  flag_to<std::string>(app, "--census", s, "census", "induced | non-induced")
      ->check(CLI::IsMember({"induced", "non-induced"}));
  flag_to<std::string>(app, "--sp-norm", s, "sp_norm", "unit | squared")
      ->check(CLI::IsMember({"unit", "squared"}));
}

void add_protocol(CLI::App* app, json& s) {
  flag_to<std::size_t>(app, "--runs", s, "runs", "repetitions of the protocol (default 1000)");
  flag_to<std::size_t>(app, "--min-class-size", s, "min_class_size",
                       "drop classes with fewer instances (default 7)");
  flag_to<std::size_t>(app, "--trees", s, "trees", "trees per forest (default 100)");
  flag_to<std::size_t>(app, "--features-per-split", s, "features_per_split",
                       "features tried per split (default ceil(sqrt(arity)))");
  flag_to<std::size_t>(app, "--max-depth", s, "max_depth", "tree depth limit, 0 = none");
  flag_to<std::size_t>(app, "--min-leaf", s, "min_leaf", "minimum samples per leaf (default 1)");
}

void add_sampling(CLI::App* app, json& s) {
  flag_to<std::string>(app, "--sampling", s, "sampling", "none | over | under | smote")
      ->check(CLI::IsMember({"none", "over", "under", "smote"}));
  flag_to<std::size_t>(app, "--smote-k", s, "smote_k", "SMOTE neighbours (default 3)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netfp: structural fingerprints and classification of networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", netfp_version());

  std::map<std::string, json> settings;
  auto sub = [&](const std::string& name, const std::string& help) {
    settings[name] = json::object();
    return app.add_subcommand(name, help);
  };

  auto* gen = sub("gen", "generate a synthetic corpus of GML graphs");
  {
    json& s = settings["gen"];
    flag_to<std::string>(gen, "--model", s, "model", "er | ws | ba | ff")->required()
        ->check(CLI::IsMember({"er", "ws", "ba", "ff"}));
    flag_to<std::string>(gen, "--params", s, "params", "k=v,... (ranges as lo:hi)");
    flag_to<std::size_t>(gen, "--count", s, "count", "number of graphs (default 1)");
    flag_to<std::string>(gen, "--label", s, "label", "class label (default: model name)");
    flag_to<std::string>(gen, "--out", s, "out", "output directory")->required();
    add_seed(gen, s);
    add_threads(gen, s);
  }

  auto* feat = sub("featurize", "compute feature vectors for a corpus");
  {
    json& s = settings["featurize"];
    flag_to<std::string>(feat, "--in", s, "in", "directory of GML files")->required();
    flag_to<std::string>(feat, "--manifest", s, "manifest", "corpus manifest with labels");
    flag_to<std::string>(feat, "--out", s, "out", "output CSV")->required();
    feat->add_flag_callback("--drop-isolated", [&s] { s["drop_isolated"] = true; },
                            "remove degree-0 nodes before featurizing");
    add_ensemble(feat, s);
    add_seed(feat, s);
    add_threads(feat, s);
  }

  auto* imp = sub("importance", "one-vs-rest feature importance study");
  {
    json& s = settings["importance"];
    flag_to<std::string>(imp, "--features", s, "features", "feature CSV")->required();
    flag_to<std::string>(imp, "--target", s, "target", "class studied against the rest")->required();
    flag_to<std::string>(imp, "--out", s, "out", "output directory")->required();
    add_protocol(imp, s);
    add_seed(imp, s);
    add_threads(imp, s);
  }

  auto* cls = sub("classify", "multiclass confusion study");
  {
    json& s = settings["classify"];
    flag_to<std::string>(cls, "--features", s, "features", "feature CSV")->required();
    flag_to<std::string>(cls, "--out", s, "out", "output directory")->required();
    add_sampling(cls, s);
    add_protocol(cls, s);
    add_seed(cls, s);
    add_threads(cls, s);
  }

  auto* com = sub("communities", "communities of classes from similarity matrices");
  {
    json& s = settings["communities"];
    com->add_option_function<std::vector<std::string>>(
           "--in", [&s](const std::vector<std::string>& v) { s["inputs"] = v; },
           "classify output directories or similarity CSV files")
        ->required();
    flag_to<std::string>(com, "--out", s, "out", "output directory")->required();
  }

  auto* all = sub("all", "generate, featurize, classify and detect communities end to end");
  {
    json& s = settings["all"];
    flag_to<std::string>(all, "--out", s, "out", "output directory")->required();
    flag_to<std::size_t>(all, "--count", s, "count", "graphs per model (default 60)");
    all->add_option_function<std::vector<std::string>>(
           "--models", [&s](const std::vector<std::string>& v) { s["models"] = v; },
           "models in the corpus (default er,ws,ba,ff)")
        ->delimiter(',')
        ->check(CLI::IsMember({"er", "ws", "ba", "ff"}));
    all->add_option_function<std::vector<std::string>>(
           "--params",
           [&s](const std::vector<std::string>& v) {
             for (const auto& item : v) {
               const auto colon = item.find(':');
               if (colon == std::string::npos || colon == 0) {
                 throw CLI::ValidationError("--params", "expected MODEL:k=v,..., got '" + item + "'");
               }
               s["params"][item.substr(0, colon)] = item.substr(colon + 1);
             }
           },
           "per-model parameters as MODEL:k=v,... (repeatable)");
    all->add_option_function<std::vector<std::string>>(
           "--regimes", [&s](const std::vector<std::string>& v) { s["regimes"] = v; },
           "sampling regimes (default none,over,under,smote)")
        ->delimiter(',')
        ->check(CLI::IsMember({"none", "over", "under", "smote"}));
    flag_to<std::size_t>(all, "--smote-k", s, "smote_k", "SMOTE neighbours (default 3)");
    add_ensemble(all, s);
    add_protocol(all, s);
    add_seed(all, s);
    add_threads(all, s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "netfp: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    std::cerr << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  char* summary = nullptr;
  const netfp_status status =
      netfp_run(command.c_str(), settings[command].dump().c_str(), &summary);
  if (status != NETFP_OK) {
    std::cerr << "netfp " << command << ": " << netfp_status_name(status) << ": "
              << netfp_last_error() << "\n";
    return 1;
  }
  std::cout << summary << "\n";
  netfp_string_free(summary);
  return 0;
}
