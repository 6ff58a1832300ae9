#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace netfp::sampling {

enum class Origin { kOriginal, kDuplicate, kSynthetic };

struct Sample {
  std::vector<double> x;
  std::size_t label = 0;
  // Provenance id of the original point; for synthetic points, the seed point.
  std::uint64_t id = 0;
  Origin origin = Origin::kOriginal;
  std::uint64_t partner = 0;  // synthetic only: the neighbour interpolated to
};

struct LabeledDataset {
  std::vector<std::string> classes;  // label index -> name
  std::vector<Sample> samples;

  std::size_t arity() const { return samples.empty() ? 0 : samples.front().x.size(); }
  std::vector<std::size_t> class_counts() const;
  // Arity consistency, label range, unique ids among original points.
  void validate() const;
};

enum class Regime { kNone, kOver, kUnder, kSmote };

Regime parse_regime(const std::string& name);  // none | over | under | smote
std::string regime_name(Regime regime);

// Pads every class to the majority count with uniform draws (with
// replacement) from its own original points.
LabeledDataset oversample(const LabeledDataset& d, std::uint64_t seed);

// Cuts every class down to the minority count, keeping a uniform subset.
LabeledDataset undersample(const LabeledDataset& d, std::uint64_t seed);

// x_i + delta * (x_n - x_i)
std::vector<double> interpolate(std::span<const double> from, std::span<const double> to,
                                double delta);

// SMOTE: new class-j points on segments between a class-j point (taken
// round-robin) and one of its k nearest class-j neighbours (Euclidean,
// ties by id). The effective k is min(k, class size - 1).
LabeledDataset smote(const LabeledDataset& d, std::size_t k, std::uint64_t seed);

LabeledDataset apply_regime(const LabeledDataset& d, Regime regime,
                            std::size_t smote_k, std::uint64_t seed);

// Per-feature z-standardization. Constant features keep scale 1.
class Standardizer {
 public:
  static Standardizer fit(const LabeledDataset& d);

  void apply(LabeledDataset& d) const;
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& scale() const { return scale_; }

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

}  // namespace netfp::sampling
