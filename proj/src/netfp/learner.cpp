#include "netfp/learner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netfp/error.hpp"
#include "netfp/parallel.hpp"
#include "netfp/rng.hpp"

namespace netfp::learn {
namespace {

constexpr const char* kModelFormat = "netfp-forest/1";

std::size_t argmax_lowest(std::span<const std::uint32_t> counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return best;
}

struct Split {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double score = 0.0;  // sum_left c^2 / n_left + sum_right c^2 / n_right
};

class TreeBuilder {
 public:
  TreeBuilder(const LabeledDataset& data, const ForestConfig& cfg, std::uint64_t seed)
      : data_(data),
        cfg_(cfg),
        rng_(seed),
        classes_(data.classes.size()),
        arity_(data.arity()),
        importance_(arity_, 0.0) {}

  TreeTrainResult build(std::span<const std::size_t> rows) {
    require(!rows.empty(), "cannot train a tree on no rows");
    std::vector<std::size_t> work(rows.begin(), rows.end());
    root_count_ = static_cast<double>(work.size());
    nodes_.emplace_back();
    grow(0, work, 0, work.size(), 0);
    TreeTrainResult out;
    out.tree = Tree(std::move(nodes_));
    out.importance = std::move(importance_);
    out.min_split_decrease = min_decrease_;
    return out;
  }

 private:
  void grow(std::uint32_t node, std::vector<std::size_t>& rows, std::size_t begin,
            std::size_t end, std::size_t depth) {
    std::vector<std::uint32_t> counts(classes_, 0);
    for (std::size_t i = begin; i < end; ++i) ++counts[data_.samples[rows[i]].label];
    const std::size_t n = end - begin;
    const bool pure =
        std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
    const bool depth_capped = cfg_.max_depth > 0 && depth >= cfg_.max_depth;
    Split split;
    if (!pure && !depth_capped && n >= 2 * cfg_.min_leaf) {
      split = best_split(rows, begin, end, counts);
    }
    if (!split.found) {
      make_leaf(node, std::move(counts));
      return;
    }
    double parent_sq = 0.0;
    for (auto c : counts) parent_sq += static_cast<double>(c) * c;
    const double decrease = split.score - parent_sq / static_cast<double>(n);
    min_decrease_ = std::min(min_decrease_, decrease);
    importance_[split.feature] += decrease / root_count_;

    auto middle = std::partition(rows.begin() + begin, rows.begin() + end, [&](std::size_t r) {
      return data_.samples[r].x[split.feature] <= split.threshold;
    });
    const auto mid = static_cast<std::size_t>(middle - rows.begin());
    const auto left = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    const auto right = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    nodes_[node].feature = static_cast<int>(split.feature);
    nodes_[node].threshold = split.threshold;
    nodes_[node].left = left;
    nodes_[node].right = right;
    grow(left, rows, begin, mid, depth + 1);
    grow(right, rows, mid, end, depth + 1);
  }

  void make_leaf(std::uint32_t node, std::vector<std::uint32_t> counts) {
    nodes_[node].feature = -1;
    nodes_[node].majority = argmax_lowest(counts);
    nodes_[node].votes = std::move(counts);
  }

  // Drawn features come first in draw order; equal-score splits on different
  // features go to the one drawn first, so exact duplicate columns share the
  // credit. The undrawn remainder follows in id order.
  std::vector<std::size_t> candidate_features() {
    std::vector<std::size_t> all(arity_);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const std::size_t take = cfg_.split_features(arity_);
    for (std::size_t i = 0; i < take; ++i) {
      std::swap(all[i], all[i + rng_.below(arity_ - i)]);
    }
    std::sort(all.begin() + static_cast<std::ptrdiff_t>(take), all.end());
    drawn_ = take;
    return all;
  }

  Split best_split(const std::vector<std::size_t>& rows, std::size_t begin, std::size_t end,
                   const std::vector<std::uint32_t>& counts) {
    const auto order = candidate_features();
    Split best;
    for (std::size_t f = 0; f < drawn_; ++f) scan_feature(order[f], rows, begin, end, counts, best);
    // Every drawn feature was constant here; fall back to the others rather
    // than stopping on an impure node.
    for (std::size_t f = drawn_; f < order.size() && !best.found; ++f) {
      scan_feature(order[f], rows, begin, end, counts, best);
    }
    return best;
  }

  void scan_feature(std::size_t feature, const std::vector<std::size_t>& rows,
                    std::size_t begin, std::size_t end,
                    const std::vector<std::uint32_t>& counts, Split& best) {
    const std::size_t n = end - begin;
    column_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = data_.samples[rows[begin + i]];
      column_[i] = {s.x[feature], s.label};
    }
    std::sort(column_.begin(), column_.end());
    left_.assign(classes_, 0);
    right_.assign(counts.begin(), counts.end());
    std::uint64_t left_sq = 0;
    std::uint64_t right_sq = 0;
    for (auto c : counts) right_sq += static_cast<std::uint64_t>(c) * c;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t c = column_[i].second;
      left_sq += 2 * static_cast<std::uint64_t>(left_[c]) + 1;
      right_sq -= 2 * static_cast<std::uint64_t>(right_[c]) - 1;
      ++left_[c];
      --right_[c];
      const double a = column_[i].first;
      const double b = column_[i + 1].first;
      if (!(a < b)) continue;
      const std::size_t nl = i + 1;
      const std::size_t nr = n - nl;
      if (nl < cfg_.min_leaf || nr < cfg_.min_leaf) continue;
      const double score = static_cast<double>(left_sq) / static_cast<double>(nl) +
                           static_cast<double>(right_sq) / static_cast<double>(nr);
      if (!best.found || score > best.score) {
        double mid = a + (b - a) / 2.0;
        if (!(mid < b)) mid = a;
        best = {true, feature, mid, score};
      }
    }
  }

  const LabeledDataset& data_;
  const ForestConfig& cfg_;
  Rng rng_;
  std::size_t classes_;
  std::size_t arity_;
  std::vector<double> importance_;
  std::vector<TreeNode> nodes_;
  double root_count_ = 1.0;
  double min_decrease_ = 0.0;
  std::size_t drawn_ = 0;
  std::vector<std::pair<double, std::size_t>> column_;
  std::vector<std::uint32_t> left_;
  std::vector<std::uint32_t> right_;
};

}  // namespace

double gini(std::span<const double> fractions) {
  double total = 0.0;
  double sq = 0.0;
  for (double f : fractions) {
    require(f >= 0.0, "class fraction must be non-negative");
    total += f;
    sq += f * f;
  }
  require(std::abs(total - 1.0) <= 1e-9, "class fractions must sum to 1");
  return 1.0 - sq;
}

std::size_t ForestConfig::split_features(std::size_t arity) const {
  if (arity == 0) return 0;
  std::size_t k = features_per_split;
  if (k == 0) k = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(arity))));
  return std::clamp<std::size_t>(k, 1, arity);
}

const TreeNode& Tree::leaf_for(std::span<const double> x) const {
  require(!nodes_.empty(), "empty tree");
  const TreeNode* node = &nodes_.front();
  while (!node->is_leaf()) {
    const auto f = static_cast<std::size_t>(node->feature);
    require(f < x.size(), "feature tuple arity mismatch");
    node = &nodes_[x[f] <= node->threshold ? node->left : node->right];
  }
  return *node;
}

std::size_t Tree::depth() const {
  if (nodes_.empty()) return 0;
  std::size_t best = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (!nodes_[i].is_leaf()) {
      stack.push_back({nodes_[i].left, d + 1});
      stack.push_back({nodes_[i].right, d + 1});
    }
  }
  return best;
}

TreeTrainResult train_tree(const LabeledDataset& data, std::span<const std::size_t> rows,
                           const ForestConfig& cfg, std::uint64_t seed) {
  return TreeBuilder(data, cfg, seed).build(rows);
}

TreeTrainResult train_tree(const LabeledDataset& data, const ForestConfig& cfg,
                           std::uint64_t seed) {
  std::vector<std::size_t> rows(data.samples.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return train_tree(data, rows, cfg, seed);
}

Prediction ForestModel::predict(std::span<const double> x) const {
  require(x.size() == arity, "feature tuple arity mismatch: expected " +
                                 std::to_string(arity) + ", got " + std::to_string(x.size()));
  std::vector<std::uint32_t> votes(classes.size(), 0);
  for (const auto& t : trees) ++votes[t.predict(x)];
  Prediction p;
  p.label = argmax_lowest(votes);
  p.scores.resize(votes.size());
  const double total = static_cast<double>(trees.size());
  for (std::size_t c = 0; c < votes.size(); ++c) p.scores[c] = votes[c] / total;
  return p;
}

std::vector<std::size_t> ForestModel::importance_ranking() const {
  std::vector<std::size_t> ids(importance.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::stable_sort(ids.begin(), ids.end(),
                   [&](std::size_t a, std::size_t b) { return importance[a] > importance[b]; });
  return ids;
}

std::vector<std::size_t> bootstrap_rows(std::size_t n, std::uint64_t tree_seed) {
  Rng rng(derive_seed(tree_seed, {0x626f6f74ULL}));
  std::vector<std::size_t> rows(n);
  for (auto& r : rows) r = rng.below(n);
  return rows;
}

ForestModel train_forest(const LabeledDataset& data, const ForestConfig& cfg,
                         std::uint64_t seed) {
  require(!data.samples.empty(), "cannot train a forest on an empty dataset");
  require(cfg.trees >= 1, "forest needs at least one tree");
  require(cfg.min_leaf >= 1, "minimum leaf size must be at least 1");
  ForestModel model;
  model.classes = data.classes;
  model.arity = data.arity();
  model.config = cfg;
  model.seed = seed;
  const std::size_t n = data.samples.size();
  std::vector<TreeTrainResult> results(cfg.trees);
  parallel_for(cfg.trees, cfg.threads, [&](std::size_t t) {
    const std::uint64_t tree_seed = derive_seed(seed, {t});
    std::vector<std::size_t> rows(n);
    if (cfg.bootstrap) {
      rows = bootstrap_rows(n, tree_seed);
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    results[t] = train_tree(data, rows, cfg, tree_seed);
  });
  model.importance.assign(model.arity, 0.0);
  model.trees.reserve(cfg.trees);
  for (auto& r : results) {
    for (std::size_t f = 0; f < model.arity; ++f) model.importance[f] += r.importance[f];
    model.trees.push_back(std::move(r.tree));
  }
  const double total = std::accumulate(model.importance.begin(), model.importance.end(), 0.0);
  if (total > 0.0) {
    for (auto& v : model.importance) v /= total;
  }
  return model;
}

std::optional<double> auc(std::span<const double> scores, std::span<const bool> positive) {
  require(scores.size() == positive.size(), "scores and truths differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double pos = 0, neg = 0, rank_sum = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (positive[order[t]]) {
        ++pos;
        rank_sum += avg_rank;
      } else {
        ++neg;
      }
    }
    i = j;
  }
  if (pos == 0 || neg == 0) return std::nullopt;
  return (rank_sum - pos * (pos + 1) / 2.0) / (pos * neg);
}

std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& d,
                                                           double train_fraction,
                                                           std::uint64_t seed) {
  require(train_fraction > 0.0 && train_fraction < 1.0, "train fraction must lie in (0, 1)");
  std::vector<std::vector<std::size_t>> members(d.classes.size());
  for (std::size_t i = 0; i < d.samples.size(); ++i) members[d.samples[i].label].push_back(i);
  std::vector<char> in_train(d.samples.size(), 0);
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto& pool = members[c];
    if (pool.empty()) continue;
    if (pool.size() < 2) {
      throw Error(ErrorKind::kData,
                  "class '" + d.classes[c] + "' has a single instance; cannot split");
    }
    Rng rng(derive_seed(seed, {c}));
    rng.shuffle(pool.begin(), pool.end());
    auto take = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(pool.size()) + 0.5));
    take = std::clamp<std::size_t>(take, 1, pool.size() - 1);
    for (std::size_t i = 0; i < take; ++i) in_train[pool[i]] = 1;
  }
  std::pair<LabeledDataset, LabeledDataset> out;
  out.first.classes = d.classes;
  out.second.classes = d.classes;
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    (in_train[i] ? out.first : out.second).samples.push_back(d.samples[i]);
  }
  return out;
}

nlohmann::json to_json(const ForestModel& model) {
  nlohmann::json doc;
  doc["format"] = kModelFormat;
  doc["classes"] = model.classes;
  doc["arity"] = model.arity;
  doc["seed"] = model.seed;
  doc["config"] = {{"trees", model.config.trees},
                   {"features_per_split", model.config.features_per_split},
                   {"max_depth", model.config.max_depth},
                   {"min_leaf", model.config.min_leaf},
                   {"bootstrap", model.config.bootstrap}};
  doc["importance"] = model.importance;
  auto& trees = doc["trees"] = nlohmann::json::array();
  for (const auto& t : model.trees) {
    auto nodes = nlohmann::json::array();
    for (const auto& n : t.nodes()) {
      if (n.is_leaf()) {
        nodes.push_back({{"votes", n.votes}});
      } else {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right}});
      }
    }
    trees.push_back(std::move(nodes));
  }
  return doc;
}

ForestModel forest_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kModelFormat) {
    throw Error(ErrorKind::kParse, std::string("not a ") + kModelFormat + " document");
  }
  try {
    ForestModel model;
    model.classes = doc.at("classes").get<std::vector<std::string>>();
    model.arity = doc.at("arity").get<std::size_t>();
    model.seed = doc.at("seed").get<std::uint64_t>();
    const auto& cfg = doc.at("config");
    model.config.trees = cfg.at("trees").get<std::size_t>();
    model.config.features_per_split = cfg.at("features_per_split").get<std::size_t>();
    model.config.max_depth = cfg.at("max_depth").get<std::size_t>();
    model.config.min_leaf = cfg.at("min_leaf").get<std::size_t>();
    model.config.bootstrap = cfg.at("bootstrap").get<bool>();
    model.importance = doc.at("importance").get<std::vector<double>>();
    for (const auto& t : doc.at("trees")) {
      std::vector<TreeNode> nodes;
      for (const auto& n : t) {
        TreeNode node;
        if (n.contains("votes")) {
          node.votes = n.at("votes").get<std::vector<std::uint32_t>>();
          node.majority = argmax_lowest(node.votes);
        } else {
          node.feature = n.at("feature").get<int>();
          node.threshold = n.at("threshold").get<double>();
          node.left = n.at("left").get<std::uint32_t>();
          node.right = n.at("right").get<std::uint32_t>();
        }
        nodes.push_back(std::move(node));
      }
      model.trees.emplace_back(std::move(nodes));
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed forest document: ") + e.what());
  }
}

}  // namespace netfp::learn
