#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "netfp/features.hpp"
#include "netfp/generators.hpp"
#include "oracles.hpp"

namespace ft = netfp::features;
using netfp::Graph;

namespace {

Graph cycle(std::size_t n) {
  std::vector<netfp::Edge> e;
  for (netfp::NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  e.push_back({0, static_cast<netfp::NodeId>(n - 1)});
  return Graph(n, e);
}

double norm(const std::array<double, ft::kMotifCount>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

const Graph kTriangle(3, {{0, 1}, {1, 2}, {0, 2}});
const Graph kPath4(4, {{0, 1}, {1, 2}, {2, 3}});
const Graph kStar(4, {{0, 1}, {0, 2}, {0, 3}});
const Graph kPaw(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
const Graph kK4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
const Graph kDiamond(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});

}  // namespace

TEST(Clustering, SmallShapes) {
  EXPECT_DOUBLE_EQ(ft::clustering_coefficient(kTriangle), 1.0);
  EXPECT_DOUBLE_EQ(ft::clustering_coefficient(Graph(3, {{0, 1}, {1, 2}})), 0.0);
  EXPECT_DOUBLE_EQ(ft::clustering_coefficient(kPaw), 0.6);
  EXPECT_DOUBLE_EQ(ft::clustering_coefficient(Graph(5)), 0.0);
}

TEST(Clustering, MatchesTripleEnumeration) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const Graph g = oracle::fuzz_graph(30, rng);
    EXPECT_NEAR(ft::clustering_coefficient(g), oracle::brute_clustering(g), 1e-12);
  }
}

TEST(Assortativity, NamedCases) {
  ASSERT_TRUE(ft::degree_assortativity(kStar).has_value());
  EXPECT_NEAR(*ft::degree_assortativity(kStar), -1.0, 1e-12);
  EXPECT_NEAR(*ft::degree_assortativity(kPath4), -0.5, 1e-12);
  EXPECT_NEAR(*oracle::stub_pearson(kPath4), -0.5, 1e-12);
  EXPECT_FALSE(ft::degree_assortativity(cycle(5)).has_value());
  EXPECT_FALSE(ft::degree_assortativity(kK4).has_value());
  EXPECT_FALSE(ft::degree_assortativity(Graph(5)).has_value());
}

TEST(Assortativity, MatchesStubPearson) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    const Graph g = oracle::fuzz_graph(40, rng);
    const auto fast = ft::degree_assortativity(g);
    const auto slow = oracle::stub_pearson(g);
    ASSERT_EQ(fast.has_value(), slow.has_value()) << "case " << t;
    if (fast) {
      EXPECT_NEAR(*fast, *slow, 1e-9);
      EXPECT_GE(*fast, -1.0 - 1e-12);
      EXPECT_LE(*fast, 1.0 + 1e-12);
    }
  }
}

TEST(Census, NamedShapes) {
  using C = ft::MotifCensus;
  EXPECT_EQ(ft::motif_census(kK4), (C{1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(ft::motif_census(kDiamond), (C{0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(ft::motif_census(kPaw), (C{0, 0, 1, 0, 0, 0}));
  EXPECT_EQ(ft::motif_census(cycle(4)), (C{0, 0, 0, 1, 0, 0}));
  EXPECT_EQ(ft::motif_census(kStar), (C{0, 0, 0, 0, 1, 0}));
  EXPECT_EQ(ft::motif_census(kPath4), (C{0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(ft::motif_census(cycle(5)), (C{0, 0, 0, 0, 0, 5}));
  EXPECT_EQ(ft::motif_census(kTriangle), (C{}));
}

TEST(Census, NonInducedCountsOfK4) {
  // copies inside K4: 1 clique, 6 diamonds, 12 paws, 3 cycles, 4 stars, 12 paths
  EXPECT_EQ(ft::motif_census(kK4, ft::CensusMode::kNonInduced),
            (ft::MotifCensus{1, 6, 12, 3, 4, 12}));
}

TEST(Census, MatchesQuadrupleOracle) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const Graph g = oracle::fuzz_graph(22, rng);
    const auto brute = oracle::brute_census(g);
    const auto fast = ft::motif_census(g);
    ASSERT_EQ(fast, brute.counts) << "case " << t;
    std::uint64_t total = 0;
    for (auto c : fast) total += c;
    EXPECT_EQ(total, brute.connected);
  }
}

TEST(ZScores, ZeroSpreadConvention) {
  const ft::MotifCensus original{5, 3, 0, 0, 0, 0};
  const std::vector<ft::MotifCensus> samples{{5, 1, 0, 0, 0, 2}, {5, 1, 0, 0, 0, 4}};
  const auto r = ft::z_scores(original, samples);
  EXPECT_DOUBLE_EQ(r.z[0], 0.0);
  EXPECT_DOUBLE_EQ(r.z[1], ft::kZeroSpreadClamp);
  EXPECT_DOUBLE_EQ(r.ensemble_mean[5], 3.0);
  EXPECT_NEAR(r.ensemble_std[5], std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.z[5], -3.0 / std::sqrt(2.0), 1e-12);
}

TEST(Profile, Normalization) {
  const std::array<double, 6> z{2, 0, 0, 0, 0, 0};
  EXPECT_EQ(ft::normalize_profile(z), (std::array<double, 6>{1, 0, 0, 0, 0, 0}));
  const std::array<double, 6> w{3, 4, 0, 0, 0, 0};
  const auto sq = ft::normalize_profile(w, ft::ProfileNorm::kSquaredNorm);
  EXPECT_DOUBLE_EQ(sq[0], 3.0 / 25.0);
  EXPECT_EQ(ft::normalize_profile(std::array<double, 6>{}), (std::array<double, 6>{}));
}

TEST(Profile, TriangleIsZero) {
  const auto p = ft::significance_profile(kTriangle, {10, 10, 1});
  EXPECT_EQ(p.sp, (std::array<double, 6>{}));
}

TEST(Profile, UnitNormAndIsomorphismInvariance) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 15; ++t) {
    const Graph g = oracle::random_graph(20, 0.25, rng);
    const netfp::null_model::EnsembleSpec spec{30, 10, 9};
    const auto base = ft::featurize(g, spec);
    const double n = norm(base.sp);
    EXPECT_TRUE(std::abs(n) < 1e-12 || std::abs(n - 1.0) < 1e-12);
    for (int r = 0; r < 3; ++r) {
      const Graph h = g.permuted(oracle::random_permutation(g.node_count(), rng));
      const auto other = ft::featurize(h, spec);
      EXPECT_EQ(other.sp, base.sp);
      EXPECT_EQ(other.clustering, base.clustering);
      EXPECT_EQ(other.assortativity, base.assortativity);
    }
  }
}

TEST(Profile, LatticesAreCliqueRich) {
  int positive = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = netfp::generators::watts_strogatz(200, 8, 0.05, seed);
    const auto p = ft::significance_profile(g, {20, 10, seed});
    if (p.sp[ft::kClique] > 0) ++positive;
  }
  EXPECT_GE(positive, 18);
}

TEST(Featurize, DegenerateGraphs) {
  const auto k3 = ft::featurize(kTriangle, {10, 10, 0});
  EXPECT_DOUBLE_EQ(k3.clustering, 1.0);
  EXPECT_FALSE(k3.assortativity.has_value());
  EXPECT_EQ(k3.sp, (std::array<double, 6>{}));

  const auto empty = ft::featurize(Graph(5), {10, 10, 0});
  EXPECT_DOUBLE_EQ(empty.clustering, 0.0);
  EXPECT_FALSE(empty.assortativity.has_value());
  EXPECT_EQ(empty.sp, (std::array<double, 6>{}));

  const auto path = ft::featurize(kPath4, {10, 10, 0});
  EXPECT_DOUBLE_EQ(path.clustering, 0.0);
  EXPECT_NEAR(*path.assortativity, -0.5, 1e-12);

  const auto arr = k3.to_array(-7.0);
  EXPECT_EQ(arr[1], -7.0);
  EXPECT_EQ(ft::feature_names()[0], "clustering");
  EXPECT_EQ(ft::feature_names()[7], "m4_6");
}
