#include "netfp/pipeline.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>

#include "netfp/error.hpp"
#include "netfp/parallel.hpp"
#include "netfp/rng.hpp"

namespace netfp::pipeline {
namespace {

enum StreamKey : std::uint64_t { kSplitStream = 1, kForestStream = 2, kSamplingStream = 3 };

learn::ForestConfig single_threaded(const learn::ForestConfig& cfg) {
  auto out = cfg;
  out.threads = 1;
  return out;
}

}  // namespace

RankHistogram run_binary_importance(const LabeledDataset& data, const std::string& target,
                                    const std::vector<std::string>& feature_names,
                                    const ProtocolConfig& cfg, std::uint64_t seed) {
  require(cfg.runs >= 1, "runs must be positive");
  require(feature_names.size() == data.arity(), "feature name count must match arity");
  const auto it = std::find(data.classes.begin(), data.classes.end(), target);
  if (it == data.classes.end()) {
    throw Error(ErrorKind::kData, "target class '" + target + "' not present");
  }
  const auto target_label = static_cast<std::size_t>(it - data.classes.begin());
  const auto counts = data.class_counts();
  if (counts[target_label] < cfg.min_class_size) {
    throw Error(ErrorKind::kData, "target class '" + target + "' has " +
                                      std::to_string(counts[target_label]) +
                                      " instances; need at least " +
                                      std::to_string(cfg.min_class_size));
  }
  LabeledDataset binary;
  binary.classes = {"rest", target};
  binary.samples = data.samples;
  for (auto& s : binary.samples) s.label = s.label == target_label ? 1 : 0;
  require(binary.class_counts()[0] >= 2, "need at least two non-target instances");

  const auto forest_cfg = single_threaded(cfg.forest);
  const std::size_t arity = data.arity();
  std::vector<std::vector<std::size_t>> rankings(cfg.runs);
  std::vector<double> aucs(cfg.runs, 0.0);
  parallel_for(cfg.runs, cfg.threads, [&](std::size_t r) {
    auto [train, test] =
        learn::stratified_split(binary, cfg.train_fraction, derive_seed(seed, {r, kSplitStream}));
    const auto model = learn::train_forest(train, forest_cfg, derive_seed(seed, {r, kForestStream}));
    std::vector<double> scores;
    std::unique_ptr<bool[]> truth(new bool[test.samples.size()]);
    for (std::size_t i = 0; i < test.samples.size(); ++i) {
      scores.push_back(model.predict(test.samples[i].x).scores[1]);
      truth[i] = test.samples[i].label == 1;
    }
    aucs[r] = learn::auc(scores, std::span<const bool>(truth.get(), test.samples.size()))
                  .value_or(0.5);
    rankings[r] = model.importance_ranking();
  });

  RankHistogram hist;
  hist.target = target;
  hist.features = feature_names;
  hist.runs = cfg.runs;
  hist.counts.assign(arity, std::vector<std::uint64_t>(arity, 0));
  for (const auto& ranking : rankings) {
    for (std::size_t rank = 0; rank < ranking.size(); ++rank) ++hist.counts[ranking[rank]][rank];
  }
  hist.run_auc = aucs;
  hist.mean_auc = std::accumulate(aucs.begin(), aucs.end(), 0.0) / static_cast<double>(cfg.runs);
  return hist;
}

ConfusionAggregate aggregate_confusion(std::vector<std::string> classes,
                                       CountMatrix total_counts, std::size_t runs) {
  require(runs >= 1, "runs must be positive");
  const std::size_t c = classes.size();
  require(total_counts.size() == c, "confusion matrix size mismatch");
  ConfusionAggregate agg;
  agg.classes = std::move(classes);
  agg.runs = runs;
  agg.total_counts = std::move(total_counts);
  agg.mean_counts.assign(c, std::vector<double>(c, 0.0));
  agg.row_normalized.assign(c, std::vector<double>(c, 0.0));
  agg.similarity.assign(c, std::vector<double>(c, 0.0));
  agg.empty_rows.assign(c, false);
  for (std::size_t i = 0; i < c; ++i) {
    require(agg.total_counts[i].size() == c, "confusion matrix must be square");
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < c; ++j) {
      agg.mean_counts[i][j] =
          static_cast<double>(agg.total_counts[i][j]) / static_cast<double>(runs);
      row += agg.total_counts[i][j];
    }
    agg.empty_rows[i] = row == 0;
    if (row == 0) continue;
    for (std::size_t j = 0; j < c; ++j) {
      agg.row_normalized[i][j] =
          static_cast<double>(agg.total_counts[i][j]) / static_cast<double>(row);
    }
  }
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      agg.similarity[i][j] = std::max(agg.row_normalized[i][j], agg.row_normalized[j][i]);
    }
  }
  return agg;
}

LabeledDataset drop_small_classes(const LabeledDataset& data, std::size_t min_size,
                                  std::vector<std::string>* dropped) {
  const auto counts = data.class_counts();
  std::vector<std::size_t> remap(data.classes.size(), SIZE_MAX);
  LabeledDataset out;
  for (std::size_t c = 0; c < data.classes.size(); ++c) {
    if (counts[c] >= min_size) {
      remap[c] = out.classes.size();
      out.classes.push_back(data.classes[c]);
    } else if (dropped) {
      dropped->push_back(data.classes[c]);
    }
  }
  for (const auto& s : data.samples) {
    if (remap[s.label] == SIZE_MAX) continue;
    out.samples.push_back(s);
    out.samples.back().label = remap[s.label];
  }
  return out;
}

ConfusionAggregate run_multiclass_confusion(const LabeledDataset& data,
                                            const ProtocolConfig& cfg, std::uint64_t seed) {
  require(cfg.runs >= 1, "runs must be positive");
  std::vector<std::string> dropped;
  const LabeledDataset kept = drop_small_classes(data, cfg.min_class_size, &dropped);
  if (kept.classes.size() < 2) {
    std::string list;
    for (const auto& d : dropped) list += (list.empty() ? "" : ", ") + d;
    throw Error(ErrorKind::kData,
                "fewer than two classes with at least " + std::to_string(cfg.min_class_size) +
                    " instances; dropped: " + (list.empty() ? "(none)" : list));
  }
  const std::size_t c = kept.classes.size();
  const auto forest_cfg = single_threaded(cfg.forest);
  std::vector<CountMatrix> per_run(cfg.runs);
  std::vector<std::vector<double>> per_run_auc(cfg.runs);

  parallel_for(cfg.runs, cfg.threads, [&](std::size_t r) {
    auto [train, test] =
        learn::stratified_split(kept, cfg.train_fraction, derive_seed(seed, {r, kSplitStream}));
    const auto scaler = sampling::Standardizer::fit(train);
    scaler.apply(train);
    scaler.apply(test);
    const auto balanced = sampling::apply_regime(train, cfg.regime, cfg.smote_k,
                                                 derive_seed(seed, {r, kSamplingStream}));
    const auto model =
        learn::train_forest(balanced, forest_cfg, derive_seed(seed, {r, kForestStream}));
    CountMatrix counts(c, std::vector<std::uint64_t>(c, 0));
    std::vector<std::vector<double>> scores(c);
    for (const auto& s : test.samples) {
      const auto p = model.predict(s.x);
      ++counts[s.label][p.label];
      for (std::size_t k = 0; k < c; ++k) scores[k].push_back(p.scores[k]);
    }
    std::vector<double> aucs(c, -1.0);
    std::unique_ptr<bool[]> truth(new bool[test.samples.size()]);
    for (std::size_t k = 0; k < c; ++k) {
      for (std::size_t i = 0; i < test.samples.size(); ++i) truth[i] = test.samples[i].label == k;
      const auto a = learn::auc(scores[k], std::span<const bool>(truth.get(), test.samples.size()));
      if (a) aucs[k] = *a;
    }
    per_run[r] = std::move(counts);
    per_run_auc[r] = std::move(aucs);
  });

  CountMatrix total(c, std::vector<std::uint64_t>(c, 0));
  for (const auto& m : per_run) {
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t j = 0; j < c; ++j) total[i][j] += m[i][j];
    }
  }
  auto agg = aggregate_confusion(kept.classes, std::move(total), cfg.runs);
  agg.dropped = std::move(dropped);
  agg.class_auc.assign(c, 0.0);
  std::vector<std::size_t> defined(c, 0);
  double macro_sum = 0.0;
  for (const auto& aucs : per_run_auc) {
    double run_sum = 0.0;
    std::size_t run_n = 0;
    for (std::size_t k = 0; k < c; ++k) {
      if (aucs[k] < 0) continue;
      agg.class_auc[k] += aucs[k];
      ++defined[k];
      run_sum += aucs[k];
      ++run_n;
    }
    macro_sum += run_n ? run_sum / static_cast<double>(run_n) : 0.0;
  }
  for (std::size_t k = 0; k < c; ++k) {
    if (defined[k]) agg.class_auc[k] /= static_cast<double>(defined[k]);
  }
  agg.macro_auc = macro_sum / static_cast<double>(cfg.runs);
  return agg;
}

WeightedNetwork network_from_similarity(const std::vector<std::string>& labels,
                                        const Matrix& similarity) {
  require(similarity.size() == labels.size(), "similarity matrix size mismatch");
  WeightedNetwork net;
  net.labels = labels;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    require(similarity[i].size() == labels.size(), "similarity matrix must be square");
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      const double w = std::max(similarity[i][j], similarity[j][i]);
      if (w > 0.0) net.edges.push_back({i, j, w});
    }
  }
  return net;
}

WeightedNetwork build_similarity_network(const ConfusionAggregate& agg) {
  return network_from_similarity(agg.classes, agg.similarity);
}

std::size_t Partition::community_count() const {
  if (community.empty()) return 0;
  return *std::max_element(community.begin(), community.end()) + 1;
}

double modularity(const WeightedNetwork& net, const std::vector<std::size_t>& community) {
  require(community.size() == net.labels.size(), "partition size mismatch");
  double total = 0.0;
  for (const auto& e : net.edges) total += e.weight;
  if (total <= 0.0) return 0.0;
  const std::size_t k = community.empty()
                            ? 0
                            : *std::max_element(community.begin(), community.end()) + 1;
  std::vector<double> inside(k, 0.0), strength(k, 0.0);
  for (const auto& e : net.edges) {
    strength[community[e.a]] += e.weight;
    strength[community[e.b]] += e.weight;
    if (community[e.a] == community[e.b]) inside[community[e.a]] += e.weight;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double frac = strength[c] / (2.0 * total);
    q += inside[c] / total - frac * frac;
  }
  return q;
}

Partition detect_communities(const WeightedNetwork& net) {
  const std::size_t n = net.labels.size();
  require(n >= 1, "network needs at least one node");
  double total = 0.0;
  for (const auto& e : net.edges) {
    require(e.a < n && e.b < n && e.a != e.b, "invalid similarity edge");
    require(e.weight >= 0.0, "negative similarity weight");
    total += e.weight;
  }
  // e[i][j]: fraction of edge-end weight joining communities i and j.
  std::vector<std::vector<double>> e(n, std::vector<double>(n, 0.0));
  std::vector<double> a(n, 0.0);
  if (total > 0.0) {
    for (const auto& edge : net.edges) {
      const double w = edge.weight / (2.0 * total);
      e[edge.a][edge.b] += w;
      e[edge.b][edge.a] += w;
    }
    for (std::size_t i = 0; i < n; ++i) a[i] = std::accumulate(e[i].begin(), e[i].end(), 0.0);
  }
  std::vector<std::size_t> owner(n);
  std::iota(owner.begin(), owner.end(), std::size_t{0});
  std::vector<bool> active(n, true);

  for (;;) {
    double best = 0.0;
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j] || e[i][j] <= 0.0) continue;
        const double gain = 2.0 * (e[i][j] - a[i] * a[j]);
        if (gain > best) {
          best = gain;
          bi = i;
          bj = j;
          found = true;
        }
      }
    }
    if (!found) break;
    // Merge bj into bi; the surviving id is the smaller one.
    e[bi][bi] += e[bj][bj] + 2.0 * e[bi][bj];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == bi || k == bj) continue;
      e[bi][k] += e[bj][k];
      e[k][bi] = e[bi][k];
    }
    e[bi][bj] = e[bj][bi] = 0.0;
    a[bi] += a[bj];
    active[bj] = false;
    for (auto& o : owner) {
      if (o == bj) o = bi;
    }
  }

  Partition p;
  p.labels = net.labels;
  p.community.assign(n, 0);
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = ids.emplace(owner[i], ids.size());
    p.community[i] = it->second;
  }
  p.modularity = modularity(net, p.community);
  return p;
}

CountMatrix community_overlap(const std::vector<Partition>& partitions) {
  if (partitions.empty()) return {};
  const auto& labels = partitions.front().labels;
  const std::size_t n = labels.size();
  CountMatrix overlap(n, std::vector<std::uint64_t>(n, 0));
  for (const auto& p : partitions) {
    if (p.labels != labels || p.community.size() != n) {
      throw Error(ErrorKind::kData, "partitions are over different label sets");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (p.community[i] == p.community[j]) ++overlap[i][j];
      }
    }
  }
  return overlap;
}

}  // namespace netfp::pipeline
