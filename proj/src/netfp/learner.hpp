#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "netfp/sampling.hpp"

namespace netfp::learn {

using sampling::LabeledDataset;

// 1 - sum f_i^2. Fractions must be non-negative and sum to 1.
double gini(std::span<const double> fractions);

struct ForestConfig {
  std::size_t trees = 100;
  std::size_t features_per_split = 0;  // 0: ceil(sqrt(arity))
  std::size_t max_depth = 0;           // 0: unlimited
  std::size_t min_leaf = 1;
  bool bootstrap = true;
  unsigned threads = 1;

  std::size_t split_features(std::size_t arity) const;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::vector<std::uint32_t> votes;  // leaf: training count per class
  std::size_t majority = 0;          // leaf: argmax votes, lowest label on ties

  bool is_leaf() const { return feature < 0; }
};

// Flat binary tree; node 0 is the root. x goes left iff x[feature] <= threshold.
class Tree {
 public:
  Tree() = default;
  explicit Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const TreeNode& leaf_for(std::span<const double> x) const;
  std::size_t predict(std::span<const double> x) const { return leaf_for(x).majority; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t depth() const;

 private:
  std::vector<TreeNode> nodes_;
};

struct TreeTrainResult {
  Tree tree;
  // Count-weighted impurity decrease per feature, divided by the root count.
  std::vector<double> importance;
  // Smallest decrease among accepted splits (checked to be non-negative).
  double min_split_decrease = 0.0;
};

// Trains on `rows` (a multiset of sample indices, e.g. a bootstrap draw).
TreeTrainResult train_tree(const LabeledDataset& data, std::span<const std::size_t> rows,
                           const ForestConfig& cfg, std::uint64_t seed);
TreeTrainResult train_tree(const LabeledDataset& data, const ForestConfig& cfg,
                           std::uint64_t seed);

struct Prediction {
  std::size_t label = 0;
  std::vector<double> scores;  // vote fraction per class
};

struct ForestModel {
  std::vector<std::string> classes;
  std::size_t arity = 0;
  std::vector<Tree> trees;
  std::vector<double> importance;  // normalized to sum 1 when any is positive
  ForestConfig config;
  std::uint64_t seed = 0;

  Prediction predict(std::span<const double> x) const;
  // Feature ids by descending importance, ties by id.
  std::vector<std::size_t> importance_ranking() const;
};

// n draws with replacement from [0, n); the sample tree `tree_seed` trains on.
std::vector<std::size_t> bootstrap_rows(std::size_t n, std::uint64_t tree_seed);

ForestModel train_forest(const LabeledDataset& data, const ForestConfig& cfg,
                         std::uint64_t seed);

// Mann-Whitney AUC; ties count one half. nullopt unless both classes present.
std::optional<double> auc(std::span<const double> scores, std::span<const bool> positive);

// Per class: shuffled, round-half-up(fraction * count) to train, clamped so
// both sides keep at least one point. Classes with one point are an error.
std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& d,
                                                           double train_fraction,
                                                           std::uint64_t seed);

nlohmann::json to_json(const ForestModel& model);
ForestModel forest_from_json(const nlohmann::json& doc);

}  // namespace netfp::learn
