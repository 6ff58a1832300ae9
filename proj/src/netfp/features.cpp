#include "netfp/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netfp/parallel.hpp"

namespace netfp::features {
namespace {

std::uint64_t choose2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }
std::uint64_t choose3(std::uint64_t k) { return k < 3 ? 0 : k * (k - 1) * (k - 2) / 6; }

// Non-induced copy counts of each connected 4-node pattern.
MotifCensus subgraph_copies(const Graph& g) {
  const auto n = g.node_count();
  MotifCensus copies{};
  if (n < 4) return copies;

  // Degree ordering: edges point from lower to higher (degree, id).
  auto before = [&](NodeId a, NodeId b) {
    const auto da = g.degree(a), db = g.degree(b);
    return da != db ? da < db : a < b;
  };
  std::vector<std::vector<NodeId>> forward(n);
  for (const auto& e : g.edges()) {
    if (before(e.u, e.v)) {
      forward[e.u].push_back(e.v);
    } else {
      forward[e.v].push_back(e.u);
    }
  }
  for (auto& list : forward) std::sort(list.begin(), list.end());

  std::vector<std::uint64_t> node_triangles(n, 0);
  std::vector<std::uint32_t> mark(n, 0);
  std::vector<NodeId> common;
  std::uint64_t triangles = 0;
  std::uint64_t cliques = 0;

  for (NodeId u = 0; u < n; ++u) {
    for (NodeId w : forward[u]) mark[w] = u + 1;
    for (NodeId v : forward[u]) {
      common.clear();
      for (NodeId w : forward[v]) {
        if (mark[w] == u + 1) common.push_back(w);
      }
      for (NodeId w : common) {
        ++triangles;
        ++node_triangles[u];
        ++node_triangles[v];
        ++node_triangles[w];
      }
      // 4-cliques: u < v < w < x in the ordering; x in forward(w) and common.
      for (NodeId w : common) {
        for (NodeId x : forward[w]) {
          if (mark[x] == u + 1 &&
              std::binary_search(forward[v].begin(), forward[v].end(), x)) {
            ++cliques;
          }
        }
      }
    }
  }

  // Per edge: shared neighbours (triangles through the edge).
  std::uint64_t diamonds = 0;
  std::uint64_t paths = 0;
  std::fill(mark.begin(), mark.end(), 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId w : g.neighbors(u)) mark[w] = u + 1;
    for (NodeId v : g.neighbors(u)) {
      if (v < u) continue;
      std::uint64_t shared = 0;
      for (NodeId w : g.neighbors(v)) shared += (mark[w] == u + 1);
      diamonds += choose2(shared);
      paths += (g.degree(u) - 1) * (g.degree(v) - 1);
    }
  }
  paths -= 3 * triangles;

  // 4-cycles: pairs of length-2 paths sharing both ends, each cycle seen
  // from both diagonals.
  std::uint64_t cycles2 = 0;
  std::vector<std::uint32_t> reach(n, 0);
  std::vector<NodeId> touched;
  for (NodeId u = 0; u < n; ++u) {
    touched.clear();
    for (NodeId v : g.neighbors(u)) {
      for (NodeId w : g.neighbors(v)) {
        if (w <= u) continue;
        if (reach[w]++ == 0) touched.push_back(w);
      }
    }
    for (NodeId w : touched) {
      cycles2 += choose2(reach[w]);
      reach[w] = 0;
    }
  }

  std::uint64_t stars = 0;
  std::uint64_t paws = 0;
  for (NodeId v = 0; v < n; ++v) {
    const auto d = g.degree(v);
    stars += choose3(d);
    if (d >= 2) paws += node_triangles[v] * (d - 2);
  }

  copies[kClique] = cliques;
  copies[kDiamond] = diamonds;
  copies[kPaw] = paws;
  copies[kCycle] = cycles2 / 2;
  copies[kStar] = stars;
  copies[kPath] = paths;
  return copies;
}

// Inverts copies = M * induced, where M[a][b] is the number of copies of
// pattern a inside the induced pattern b.
MotifCensus induced_from_copies(const MotifCensus& c) {
  MotifCensus i{};
  i[kClique] = c[kClique];
  i[kDiamond] = c[kDiamond] - 6 * i[kClique];
  i[kPaw] = c[kPaw] - 4 * i[kDiamond] - 12 * i[kClique];
  i[kCycle] = c[kCycle] - i[kDiamond] - 3 * i[kClique];
  i[kStar] = c[kStar] - i[kPaw] - 2 * i[kDiamond] - 4 * i[kClique];
  i[kPath] = c[kPath] - 2 * i[kPaw] - 4 * i[kCycle] - 6 * i[kDiamond] -
             12 * i[kClique];
  return i;
}

}  // namespace

TriangleStats triangle_stats(const Graph& g) {
  TriangleStats s;
  const auto n = g.node_count();
  std::vector<std::uint32_t> mark(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    s.wedges += choose2(g.degree(u));
    for (NodeId w : g.neighbors(u)) mark[w] = u + 1;
    for (NodeId v : g.neighbors(u)) {
      if (v <= u) continue;
      for (NodeId w : g.neighbors(v)) {
        if (w > v && mark[w] == u + 1) ++s.triangles;
      }
    }
  }
  return s;
}

double clustering_coefficient(const Graph& g) {
  const auto s = triangle_stats(g);
  if (s.wedges == 0) return 0.0;
  return 3.0 * static_cast<double>(s.triangles) / static_cast<double>(s.wedges);
}

std::optional<double> degree_assortativity(const Graph& g) {
  const auto m = g.edge_count();
  if (m == 0) return std::nullopt;
  // r = [sum_ij A_ij k_i k_j - (sum_i k_i^2)^2 / 2m]
  //   / [sum_i k_i^3      - (sum_i k_i^2)^2 / 2m]
  // with every term multiplied through by 2m to stay in integers.
  unsigned __int128 s_adj = 0, s2 = 0, s3 = 0;
  for (const auto& e : g.edges()) {
    s_adj += 2 * static_cast<unsigned __int128>(g.degree(e.u)) * g.degree(e.v);
  }
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const unsigned __int128 k = g.degree(i);
    s2 += k * k;
    s3 += k * k * k;
  }
  const long double two_m = 2.0L * static_cast<long double>(m);
  const long double sq = static_cast<long double>(s2) * static_cast<long double>(s2);
  const long double numerator = two_m * static_cast<long double>(s_adj) - sq;
  const long double denominator = two_m * static_cast<long double>(s3) - sq;
  // The denominator is 2m * (stub degree variance) * 2m and vanishes exactly
  // when all edge ends share one degree; compare on the integer form.
  const unsigned __int128 lhs = static_cast<unsigned __int128>(2 * m) * s3;
  if (lhs == s2 * s2) return std::nullopt;
  const long double r = numerator / denominator;
  return static_cast<double>(std::clamp(r, -1.0L, 1.0L));
}

MotifCensus motif_census(const Graph& g, CensusMode mode) {
  const auto copies = subgraph_copies(g);
  return mode == CensusMode::kNonInduced ? copies : induced_from_copies(copies);
}

ZScoreReport z_scores(const MotifCensus& original,
                      const std::vector<MotifCensus>& samples) {
  ZScoreReport report;
  report.original = original;
  const auto count = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    std::uint64_t lo = ~std::uint64_t{0}, hi = 0;
    long double sum = 0;
    for (const auto& s : samples) {
      sum += s[i];
      lo = std::min(lo, s[i]);
      hi = std::max(hi, s[i]);
    }
    const long double mean = samples.empty() ? 0.0L : sum / count;
    long double ss = 0;
    for (const auto& s : samples) {
      const long double d = static_cast<long double>(s[i]) - mean;
      ss += d * d;
    }
    const double sd = samples.size() > 1 ? static_cast<double>(std::sqrt(ss / (count - 1))) : 0.0;
    report.ensemble_mean[i] = static_cast<double>(mean);
    report.ensemble_std[i] = sd;
    const long double diff = static_cast<long double>(original[i]) - mean;
    if (samples.empty() || lo == hi || sd == 0.0) {
      // Zero spread: the mean equals every sample exactly.
      const bool equal = samples.empty() || original[i] == lo;
      report.z[i] = equal ? 0.0 : (diff > 0 ? kZeroSpreadClamp : -kZeroSpreadClamp);
    } else {
      report.z[i] = static_cast<double>(diff / sd);
    }
  }
  return report;
}

std::array<double, kMotifCount> normalize_profile(
    const std::array<double, kMotifCount>& z, ProfileNorm norm) {
  long double sq = 0;
  for (double v : z) sq += static_cast<long double>(v) * v;
  std::array<double, kMotifCount> sp{};
  if (sq == 0) return sp;
  const long double scale = norm == ProfileNorm::kUnit ? std::sqrt(sq) : sq;
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    sp[i] = static_cast<double>(z[i] / scale);
  }
  return sp;
}

Profile significance_profile(const Graph& g, const null_model::EnsembleSpec& spec,
                             const ProfileOptions& options) {
  spec.validate();
  Profile profile;
  const auto original = motif_census(g, options.census);
  std::vector<MotifCensus> samples(spec.ensemble_size);
  if (g.node_count() < 4) {
    // Every member also has fewer than four nodes.
    profile.report = z_scores(original, samples);
  } else {
    null_model::Ensemble ensemble(g, spec);
    parallel_for(samples.size(), options.threads, [&](std::size_t i) {
      samples[i] = motif_census(ensemble.member(i), options.census);
    });
    profile.report = z_scores(original, samples);
  }
  profile.sp = normalize_profile(profile.report.z, options.norm);
  return profile;
}

std::array<double, kFeatureCount> FeatureVector::to_array(double missing_fill) const {
  std::array<double, kFeatureCount> out{};
  out[0] = clustering;
  out[1] = assortativity.value_or(missing_fill);
  std::copy(sp.begin(), sp.end(), out.begin() + 2);
  return out;
}

FeatureVector featurize(const Graph& g, const null_model::EnsembleSpec& spec,
                        const ProfileOptions& options) {
  FeatureVector fv;
  fv.clustering = clustering_coefficient(g);
  fv.assortativity = degree_assortativity(g);
  fv.sp = significance_profile(g, spec, options).sp;
  return fv;
}

const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> names = {
      "clustering", "assortativity", "m4_1", "m4_2", "m4_3", "m4_4", "m4_5", "m4_6"};
  return names;
}

}  // namespace netfp::features
