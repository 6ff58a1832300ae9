#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netfp/learner.hpp"
#include "netfp/sampling.hpp"

namespace netfp::pipeline {

using sampling::LabeledDataset;
using Matrix = std::vector<std::vector<double>>;
using CountMatrix = std::vector<std::vector<std::uint64_t>>;

inline constexpr double kTrainFraction = 0.7;
inline constexpr std::size_t kMinClassSize = 7;

struct ProtocolConfig {
  learn::ForestConfig forest;  // forest.threads is ignored; runs are the unit of work
  std::size_t runs = 1000;
  double train_fraction = kTrainFraction;
  std::size_t min_class_size = kMinClassSize;
  sampling::Regime regime = sampling::Regime::kNone;
  std::size_t smote_k = 3;
  unsigned threads = 1;
};

// Counts of each feature landing at each importance rank over all runs.
struct RankHistogram {
  std::string target;
  std::vector<std::string> features;
  CountMatrix counts;  // [feature][rank], rank 0 is the most important
  std::vector<double> run_auc;
  double mean_auc = 0.0;
  std::size_t runs = 0;
};

// One-vs-rest study: each run relabels target against the rest, splits 7:3
// by class, trains a forest, and records test AUC and the importance ranking.
RankHistogram run_binary_importance(const LabeledDataset& data, const std::string& target,
                                    const std::vector<std::string>& feature_names,
                                    const ProtocolConfig& cfg, std::uint64_t seed);

struct ConfusionAggregate {
  std::vector<std::string> classes;
  std::vector<std::string> dropped;  // classes below the minimum size
  std::size_t runs = 0;
  CountMatrix total_counts;  // summed over runs
  Matrix mean_counts;        // total / runs
  Matrix row_normalized;
  std::vector<bool> empty_rows;  // classes that never reached a test split
  Matrix similarity;             // max(row_normalized[i][j], row_normalized[j][i])
  std::vector<double> class_auc; // mean one-vs-rest AUC per class
  double macro_auc = 0.0;        // mean over runs of the per-run macro AUC
};

// Derives mean, row-normalized and similarity matrices from summed counts.
ConfusionAggregate aggregate_confusion(std::vector<std::string> classes,
                                       CountMatrix total_counts, std::size_t runs);

// Removes classes with fewer than min_size points and compacts labels.
LabeledDataset drop_small_classes(const LabeledDataset& data, std::size_t min_size,
                                  std::vector<std::string>* dropped);

// Multiclass study: per run, stratified split, standardization fitted on the
// training split, sampling regime on the training split only, forest, test
// confusion counts.
ConfusionAggregate run_multiclass_confusion(const LabeledDataset& data,
                                            const ProtocolConfig& cfg, std::uint64_t seed);

struct WeightedEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

struct WeightedNetwork {
  std::vector<std::string> labels;
  std::vector<WeightedEdge> edges;  // a < b, sorted
};

WeightedNetwork build_similarity_network(const ConfusionAggregate& agg);
WeightedNetwork network_from_similarity(const std::vector<std::string>& labels,
                                        const Matrix& similarity);

struct Partition {
  std::vector<std::string> labels;
  std::vector<std::size_t> community;  // contiguous ids, first-seen order
  double modularity = 0.0;

  std::size_t community_count() const;
};

double modularity(const WeightedNetwork& net, const std::vector<std::size_t>& community);

// Weighted greedy agglomeration (Clauset-Newman-Moore): merge the connected
// pair with the largest modularity gain until no merge gains.
Partition detect_communities(const WeightedNetwork& net);

// overlap[i][j]: partitions in which labels i and j share a community.
CountMatrix community_overlap(const std::vector<Partition>& partitions);

}  // namespace netfp::pipeline
