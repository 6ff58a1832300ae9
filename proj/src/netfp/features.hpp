#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "netfp/graph.hpp"
#include "netfp/null_model.hpp"

namespace netfp::features {

inline constexpr std::size_t kMotifCount = 6;
inline constexpr std::size_t kFeatureCount = 2 + kMotifCount;

// Motif order: m4_1 clique, m4_2 diamond, m4_3 paw, m4_4 4-cycle,
// m4_5 3-star, m4_6 4-path.
enum Motif : std::size_t {
  kClique = 0,
  kDiamond = 1,
  kPaw = 2,
  kCycle = 3,
  kStar = 4,
  kPath = 5,
};

using MotifCensus = std::array<std::uint64_t, kMotifCount>;

enum class CensusMode {
  kInduced,     // each connected 4-node set counted once, in its own class
  kNonInduced,  // subgraph copies, a 4-clique also contains 3 four-cycles etc.
};

enum class ProfileNorm {
  kUnit,          // Z / ||Z||_2
  kSquaredNorm,   // Z / sum Z^2, the literal printed variant
};

// Z value used when the ensemble has zero spread but the original differs.
inline constexpr double kZeroSpreadClamp = 1e6;

struct TriangleStats {
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;  // sum over nodes of C(k, 2)
};

TriangleStats triangle_stats(const Graph& g);

// 3 * triangles / wedges; 0 when there are no wedges.
double clustering_coefficient(const Graph& g);

// Degree assortativity; nullopt when m == 0 or every edge end has the same
// degree.
std::optional<double> degree_assortativity(const Graph& g);

MotifCensus motif_census(const Graph& g, CensusMode mode = CensusMode::kInduced);

struct ZScoreReport {
  MotifCensus original{};
  std::array<double, kMotifCount> ensemble_mean{};
  std::array<double, kMotifCount> ensemble_std{};
  std::array<double, kMotifCount> z{};
};

// z from a census and ensemble samples. Standard deviation is the sample
// (n - 1) estimator.
ZScoreReport z_scores(const MotifCensus& original,
                      const std::vector<MotifCensus>& samples);

std::array<double, kMotifCount> normalize_profile(
    const std::array<double, kMotifCount>& z, ProfileNorm norm = ProfileNorm::kUnit);

struct ProfileOptions {
  CensusMode census = CensusMode::kInduced;
  ProfileNorm norm = ProfileNorm::kUnit;
  unsigned threads = 1;  // workers over ensemble members
};

struct Profile {
  ZScoreReport report;
  std::array<double, kMotifCount> sp{};
};

Profile significance_profile(const Graph& g, const null_model::EnsembleSpec& spec,
                             const ProfileOptions& options = {});

struct FeatureVector {
  double clustering = 0.0;
  std::optional<double> assortativity;
  std::array<double, kMotifCount> sp{};

  // clustering, assortativity (missing -> fill), sp1..sp6
  std::array<double, kFeatureCount> to_array(double missing_fill = 0.0) const;
};

FeatureVector featurize(const Graph& g, const null_model::EnsembleSpec& spec,
                        const ProfileOptions& options = {});

// Column names in to_array() order.
const std::array<std::string, kFeatureCount>& feature_names();

}  // namespace netfp::features
