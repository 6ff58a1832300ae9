#include "netfp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "netfp/error.hpp"
#include "netfp/rng.hpp"

namespace netfp::sampling {
namespace {

std::vector<std::vector<std::size_t>> by_class(const LabeledDataset& d) {
  std::vector<std::vector<std::size_t>> members(d.classes.size());
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    members[d.samples[i].label].push_back(i);
  }
  return members;
}

void require_populated(const LabeledDataset& d,
                       const std::vector<std::vector<std::size_t>>& members) {
  require(!d.samples.empty(), "dataset is empty");
  for (std::size_t c = 0; c < members.size(); ++c) {
    require(!members[c].empty(), "class '" + d.classes[c] + "' has no points");
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

std::vector<std::size_t> LabeledDataset::class_counts() const {
  std::vector<std::size_t> counts(classes.size(), 0);
  for (const auto& s : samples) ++counts[s.label];
  return counts;
}

void LabeledDataset::validate() const {
  const auto n = arity();
  std::unordered_set<std::uint64_t> ids;
  for (const auto& s : samples) {
    require(s.x.size() == n, "feature tuples differ in arity");
    require(s.label < classes.size(), "label outside the class set");
    if (s.origin == Origin::kOriginal) {
      require(ids.insert(s.id).second,
              "duplicate provenance id " + std::to_string(s.id));
    }
  }
}

Regime parse_regime(const std::string& name) {
  if (name == "none") return Regime::kNone;
  if (name == "over") return Regime::kOver;
  if (name == "under") return Regime::kUnder;
  if (name == "smote") return Regime::kSmote;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown sampling regime '" + name + "' (expected none, over, under, smote)");
}

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::kNone: return "none";
    case Regime::kOver: return "over";
    case Regime::kUnder: return "under";
    case Regime::kSmote: return "smote";
  }
  return "?";
}

LabeledDataset oversample(const LabeledDataset& d, std::uint64_t seed) {
  const auto members = by_class(d);
  require_populated(d, members);
  std::size_t majority = 0;
  for (const auto& m : members) majority = std::max(majority, m.size());
  LabeledDataset out = d;
  for (std::size_t c = 0; c < members.size(); ++c) {
    Rng rng(derive_seed(seed, {c}));
    for (std::size_t added = members[c].size(); added < majority; ++added) {
      Sample copy = d.samples[members[c][rng.below(members[c].size())]];
      copy.origin = Origin::kDuplicate;
      out.samples.push_back(std::move(copy));
    }
  }
  return out;
}

LabeledDataset undersample(const LabeledDataset& d, std::uint64_t seed) {
  const auto members = by_class(d);
  require_populated(d, members);
  std::size_t minority = members.front().size();
  for (const auto& m : members) minority = std::min(minority, m.size());
  std::vector<char> keep(d.samples.size(), 0);
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto pool = members[c];
    Rng rng(derive_seed(seed, {c}));
    // Partial Fisher-Yates: the first `minority` slots are a uniform subset.
    for (std::size_t i = 0; i < minority; ++i) {
      std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
      keep[pool[i]] = 1;
    }
  }
  LabeledDataset out;
  out.classes = d.classes;
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    if (keep[i]) out.samples.push_back(d.samples[i]);
  }
  return out;
}

std::vector<double> interpolate(std::span<const double> from, std::span<const double> to,
                                double delta) {
  require(from.size() == to.size(), "interpolation endpoints differ in arity");
  std::vector<double> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    out[i] = from[i] + delta * (to[i] - from[i]);
  }
  return out;
}

LabeledDataset smote(const LabeledDataset& d, std::size_t k, std::uint64_t seed) {
  require(k >= 1, "SMOTE neighbour count must be at least 1");
  const auto members = by_class(d);
  require_populated(d, members);
  std::size_t majority = 0;
  for (const auto& m : members) majority = std::max(majority, m.size());
  LabeledDataset out = d;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const auto& pts = members[c];
    if (pts.size() >= majority) continue;
    if (pts.size() < 2) {
      throw Error(ErrorKind::kData, "class '" + d.classes[c] +
                                        "' has a single point; SMOTE needs a neighbour");
    }
    const std::size_t kk = std::min(k, pts.size() - 1);
    // k nearest same-class neighbours of every class point.
    std::vector<std::vector<std::size_t>> neighbours(pts.size());
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      ranked.clear();
      for (std::size_t b = 0; b < pts.size(); ++b) {
        if (a == b) continue;
        ranked.emplace_back(squared_distance(d.samples[pts[a]].x, d.samples[pts[b]].x), b);
      }
      std::sort(ranked.begin(), ranked.end(), [&](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first < r.first;
        return d.samples[pts[l.second]].id < d.samples[pts[r.second]].id;
      });
      for (std::size_t i = 0; i < kk; ++i) neighbours[a].push_back(ranked[i].second);
    }
    Rng rng(derive_seed(seed, {c}));
    for (std::size_t t = 0; pts.size() + t < majority; ++t) {
      const std::size_t a = t % pts.size();
      const std::size_t b = neighbours[a][rng.below(kk)];
      const double delta = rng.uniform_closed();
      const Sample& base = d.samples[pts[a]];
      const Sample& other = d.samples[pts[b]];
      Sample s;
      s.x = interpolate(base.x, other.x, delta);
      s.label = c;
      s.id = base.id;
      s.partner = other.id;
      s.origin = Origin::kSynthetic;
      out.samples.push_back(std::move(s));
    }
  }
  return out;
}

LabeledDataset apply_regime(const LabeledDataset& d, Regime regime,
                            std::size_t smote_k, std::uint64_t seed) {
  switch (regime) {
    case Regime::kNone: return d;
    case Regime::kOver: return oversample(d, seed);
    case Regime::kUnder: return undersample(d, seed);
    case Regime::kSmote: return smote(d, smote_k, seed);
  }
  return d;
}

Standardizer Standardizer::fit(const LabeledDataset& d) {
  Standardizer s;
  const auto n = d.arity();
  s.mean_.assign(n, 0.0);
  s.scale_.assign(n, 1.0);
  if (d.samples.empty()) return s;
  const auto count = static_cast<double>(d.samples.size());
  for (const auto& p : d.samples) {
    for (std::size_t i = 0; i < n; ++i) s.mean_[i] += p.x[i];
  }
  for (auto& m : s.mean_) m /= count;
  std::vector<double> ss(n, 0.0);
  for (const auto& p : d.samples) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dv = p.x[i] - s.mean_[i];
      ss[i] += dv * dv;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double sd = std::sqrt(ss[i] / count);
    s.scale_[i] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

void Standardizer::apply(LabeledDataset& d) const {
  for (auto& p : d.samples) {
    require(p.x.size() == mean_.size(), "standardizer arity mismatch");
    for (std::size_t i = 0; i < mean_.size(); ++i) {
      p.x[i] = (p.x[i] - mean_[i]) / scale_[i];
    }
  }
}

}  // namespace netfp::sampling
