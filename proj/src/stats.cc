// Copyright 2026 The cibnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "error.h"
#include "rng.h"

namespace cibnet::stats {
namespace {

void RequireFinite(std::span<const double> values, const char* what) {
  for (double v : values)
    if (!std::isfinite(v))
      throw ValidationError(std::string(what) + " contains a non-finite value");
}

double NormalUpperTail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double ClampProbability(double p) { return std::clamp(p, 0.0, 1.0); }

// Runs fn(i) for i in [0, n) on up to `threads` workers with a static
// partition; fn must only write to slot i of its own output.
template <typename Fn>
void ParallelFor(std::size_t n, int threads, Fn fn) {
  std::size_t workers = std::min<std::size_t>(std::max(1, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t b = w * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([b, e, &fn] {
      for (std::size_t i = b; i < e; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

double SampleSd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  double m = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

double Mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return values[x] < values[y];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

std::optional<double> Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("length mismatch");
  if (x.empty()) return std::nullopt;
  double mx = Mean(x), my = Mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

StatResult Spearman(std::span<const double> x, std::span<const double> y,
                    SpearmanPValue method, Alternative alt) {
  if (x.size() != y.size())
    throw ValidationError("spearman: length mismatch (" + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()) + ")");
  if (x.size() < 3) throw ValidationError("spearman: needs at least 3 pairs");
  RequireFinite(x, "spearman x");
  RequireFinite(y, "spearman y");

  StatResult out;
  const std::size_t n = x.size();
  out.n = {n};
  auto rx = AverageRanks(x);
  auto ry = AverageRanks(y);
  auto rho = Pearson(rx, ry);
  if (!rho) {
    out.method = "spearman";
    return out;
  }
  out.statistic = *rho;

  if (method == SpearmanPValue::kExactPermutation) {
    if (n > 10) throw ValidationError("spearman: exact permutation needs n <= 10");
    out.method = "spearman-exact";
    // rho is an increasing function of sum(rx * ry) for fixed rank multisets.
    double observed = 0.0;
    for (std::size_t i = 0; i < n; ++i) observed += rx[i] * ry[i];
    double expected = Mean(rx) * Mean(ry) * static_cast<double>(n);
    std::vector<double> perm = ry;
    std::sort(perm.begin(), perm.end());
    double tiny = 1e-9;
    std::uint64_t total = 0, hit = 0;
    do {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += rx[i] * perm[i];
      bool extreme = false;
      switch (alt) {
        case Alternative::kTwoSided:
          extreme = std::abs(s - expected) >= std::abs(observed - expected) - tiny;
          break;
        case Alternative::kGreater: extreme = s >= observed - tiny; break;
        case Alternative::kLess: extreme = s <= observed + tiny; break;
      }
      ++total;
      if (extreme) ++hit;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.p_value = static_cast<double>(hit) / static_cast<double>(total);
    return out;
  }

  out.method = "spearman-t";
  if (std::abs(*rho) >= 1.0) {
    bool against = (alt == Alternative::kGreater && *rho < 0) ||
                   (alt == Alternative::kLess && *rho > 0);
    out.p_value = against ? 1.0 : 0.0;
    return out;
  }
  double dof = static_cast<double>(n - 2);
  double t = *rho * std::sqrt(dof / (1.0 - *rho * *rho));
  boost::math::students_t_distribution<double> dist(dof);
  double upper = boost::math::cdf(boost::math::complement(dist, t));
  double lower = boost::math::cdf(dist, t);
  switch (alt) {
    case Alternative::kTwoSided: out.p_value = 2.0 * std::min(upper, lower); break;
    case Alternative::kGreater: out.p_value = upper; break;
    case Alternative::kLess: out.p_value = lower; break;
  }
  out.p_value = ClampProbability(*out.p_value);
  return out;
}

std::vector<double> MannWhitneyNullCounts(std::size_t n_a, std::size_t n_b) {
  // counts[i][j] is the distribution for sizes (i, j); the largest of the
  // i + j values is either from a (adds j to U) or from b (adds nothing).
  std::vector<std::vector<std::vector<double>>> counts(
      n_a + 1, std::vector<std::vector<double>>(n_b + 1));
  for (std::size_t i = 0; i <= n_a; ++i) {
    for (std::size_t j = 0; j <= n_b; ++j) {
      auto& c = counts[i][j];
      c.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        c[0] = 1.0;
        continue;
      }
      const auto& from_a = counts[i - 1][j];
      const auto& from_b = counts[i][j - 1];
      for (std::size_t u = 0; u < from_a.size(); ++u) c[u + j] += from_a[u];
      for (std::size_t u = 0; u < from_b.size(); ++u) c[u] += from_b[u];
    }
  }
  return counts[n_a][n_b];
}

StatResult MannWhitneyU(std::span<const double> a, std::span<const double> b,
                        MannWhitneyMethod method, Alternative alt) {
  if (a.empty() || b.empty())
    throw ValidationError("mann-whitney: both samples must be non-empty");
  RequireFinite(a, "mann-whitney a");
  RequireFinite(b, "mann-whitney b");

  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  auto ranks = AverageRanks(all);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < na; ++i) rank_sum += ranks[i];
  const double u = rank_sum - static_cast<double>(na) * (na + 1) / 2.0;

  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  bool ties = false;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && sorted[j] == sorted[i]) ++j;
    double t = static_cast<double>(j - i);
    if (j - i > 1) ties = true;
    tie_term += t * t * t - t;
    i = j;
  }

  StatResult out;
  out.statistic = u;
  out.n = {na, nb};

  bool exact = method == MannWhitneyMethod::kExact ||
               (method == MannWhitneyMethod::kAuto && !ties &&
                n <= kExactMannWhitneyMax);
  if (exact) {
    if (ties) throw ValidationError("mann-whitney: exact p requires untied data");
    out.method = "mann-whitney-exact";
    auto counts = MannWhitneyNullCounts(na, nb);
    double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    auto ui = static_cast<std::size_t>(std::llround(u));
    double le = 0.0, ge = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (k <= ui) le += counts[k];
      if (k >= ui) ge += counts[k];
    }
    le /= total;
    ge /= total;
    switch (alt) {
      case Alternative::kTwoSided: out.p_value = 2.0 * std::min(le, ge); break;
      case Alternative::kGreater: out.p_value = ge; break;
      case Alternative::kLess: out.p_value = le; break;
    }
    out.p_value = ClampProbability(*out.p_value);
    return out;
  }

  out.method = "mann-whitney-normal";
  const double mu = static_cast<double>(na) * nb / 2.0;
  const double nn = static_cast<double>(n);
  const double var = static_cast<double>(na) * nb / 12.0 *
                     ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
  if (!(var > 0.0)) {
    out.p_value = 1.0;
    return out;
  }
  const double sd = std::sqrt(var);
  switch (alt) {
    case Alternative::kTwoSided: {
      double z = std::max(0.0, std::abs(u - mu) - 0.5) / sd;
      out.p_value = 2.0 * NormalUpperTail(z);
      break;
    }
    case Alternative::kGreater:
      out.p_value = NormalUpperTail((u - mu - 0.5) / sd);
      break;
    case Alternative::kLess:
      out.p_value = 1.0 - NormalUpperTail((u - mu + 0.5) / sd);
      break;
  }
  out.p_value = ClampProbability(*out.p_value);
  return out;
}

StatResult RocAuc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw ValidationError("roc-auc: scores and labels differ in length");
  RequireFinite(scores, "roc-auc scores");
  std::size_t pos = 0, neg = 0;
  for (int l : labels) {
    if (l == 1) ++pos;
    else if (l == 0) ++neg;
    else throw ValidationError("roc-auc: labels must be 0 or 1");
  }
  if (pos == 0 || neg == 0)
    throw ValidationError("roc-auc: both classes must be present");
  auto ranks = AverageRanks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < ranks.size(); ++i)
    if (labels[i] == 1) rank_sum += ranks[i];
  double u = rank_sum - static_cast<double>(pos) * (pos + 1) / 2.0;
  StatResult out;
  out.statistic = u / (static_cast<double>(pos) * static_cast<double>(neg));
  out.n = {pos, neg};
  out.method = "roc-auc";
  return out;
}

ReshuffleResult ReshuffleEval(std::span<const double> scores,
                              std::span<const int> labels, int splits,
                              double train_frac, std::uint64_t seed,
                              int threads) {
  if (scores.size() != labels.size())
    throw ValidationError("reshuffle: scores and labels differ in length");
  if (scores.size() < 4) throw ValidationError("reshuffle: needs at least 4 rows");
  if (splits < 1) throw ValidationError("reshuffle: splits must be >= 1");
  if (!(train_frac > 0.0 && train_frac < 1.0))
    throw ValidationError("reshuffle: train_frac must be in (0, 1)");
  if (std::count(labels.begin(), labels.end(), 1) == 0 ||
      std::count(labels.begin(), labels.end(), 0) == 0)
    throw ValidationError("reshuffle: both classes must be present");

  const std::size_t n = scores.size();
  const auto n_train = static_cast<std::size_t>(std::floor(train_frac * n));
  std::vector<std::optional<double>> per_split(static_cast<std::size_t>(splits));
  ParallelFor(per_split.size(), threads, [&](std::size_t s) {
    Rng rng(DeriveSeed(seed, s));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i)
      std::swap(order[i], order[rng.Below(i + 1)]);
    std::vector<double> held_scores;
    std::vector<int> held_labels;
    for (std::size_t i = n_train; i < n; ++i) {
      held_scores.push_back(scores[order[i]]);
      held_labels.push_back(labels[order[i]]);
    }
    bool has_pos = std::count(held_labels.begin(), held_labels.end(), 1) > 0;
    bool has_neg = std::count(held_labels.begin(), held_labels.end(), 0) > 0;
    if (has_pos && has_neg) per_split[s] = *RocAuc(held_scores, held_labels).statistic;
  });

  ReshuffleResult out;
  out.seed = seed;
  for (const auto& a : per_split) {
    if (a) out.aucs.push_back(*a);
    else ++out.splits_skipped;
  }
  if (out.aucs.empty())
    throw ValidationError("reshuffle: every split lacked one of the classes");
  out.mean_auc = Mean(out.aucs);
  out.se = SampleSd(out.aucs);
  return out;
}

double BootstrapSe(std::span<const double> values, int b, std::uint64_t seed,
                   int threads) {
  if (values.size() < 2) throw ValidationError("bootstrap: needs at least 2 values");
  if (b < 2) throw ValidationError("bootstrap: needs at least 2 resamples");
  RequireFinite(values, "bootstrap values");
  const std::size_t n = values.size();
  std::vector<double> means(static_cast<std::size_t>(b));
  ParallelFor(means.size(), threads, [&](std::size_t r) {
    Rng rng(DeriveSeed(seed, r));
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += values[rng.Below(n)];
    means[r] = sum / static_cast<double>(n);
  });
  return SampleSd(means);
}

StatResult CohensKappa(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw ValidationError("kappa: annotation lengths differ");
  std::int64_t table[2][2] = {{0, 0}, {0, 0}};
  std::int64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < -1 || a[i] > 1 || b[i] < -1 || b[i] > 1)
      throw ValidationError("kappa: labels must be 0, 1, or -1 (missing)");
    if (a[i] < 0 || b[i] < 0) continue;
    ++table[a[i]][b[i]];
    ++n;
  }
  if (n == 0) throw ValidationError("kappa: annotators share no items");
  StatResult out;
  out.n = {static_cast<std::size_t>(n)};
  out.method = "cohen-kappa";
  // kappa = (N * agree - sum_k row_k col_k) / (N^2 - sum_k row_k col_k),
  // in integers so hand-computed tables come out exact.
  std::int64_t agree = table[0][0] + table[1][1];
  std::int64_t chance = 0;
  for (int k = 0; k < 2; ++k)
    chance += (table[k][0] + table[k][1]) * (table[0][k] + table[1][k]);
  std::int64_t denom = n * n - chance;
  if (denom == 0) return out;
  out.statistic = static_cast<double>(n * agree - chance) / static_cast<double>(denom);
  return out;
}

StatResult MeanPairwiseKappa(const std::vector<std::vector<int>>& annotations) {
  if (annotations.size() < 2) throw ValidationError("kappa: needs >= 2 annotators");
  StatResult out;
  out.method = "cohen-kappa-mean-pairwise";
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    for (std::size_t j = i + 1; j < annotations.size(); ++j) {
      const auto& x = annotations[i];
      const auto& y = annotations[j];
      bool overlap = false;
      for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k)
        overlap = overlap || (x[k] >= 0 && y[k] >= 0);
      if (!overlap) continue;
      auto r = CohensKappa(x, y);
      if (!r.statistic) continue;
      sum += *r.statistic;
      ++used;
    }
  }
  out.n = {used};
  if (used > 0) out.statistic = sum / static_cast<double>(used);
  return out;
}

KappaSummary KappaByCharacteristic(const std::vector<Annotation>& annotations) {
  // characteristic -> annotator -> item -> label
  std::map<std::size_t, std::map<std::string, std::map<std::string, int>>> grouped;
  std::map<std::size_t, std::map<std::string, std::size_t>> items;
  for (const auto& a : annotations) {
    if (a.characteristic >= kNumCharacteristics)
      throw ValidationError("kappa: characteristic out of range");
    grouped[a.characteristic][a.annotator][a.item] = a.label;
    items[a.characteristic].try_emplace(a.item, 0);
  }
  KappaSummary out;
  std::map<std::string, std::pair<double, std::size_t>> group_sums;
  for (auto& [c, by_annotator] : grouped) {
    auto& item_index = items[c];
    std::size_t k = 0;
    for (auto& [item, idx] : item_index) idx = k++;
    std::vector<std::vector<int>> matrix;
    for (const auto& [annotator, labels] : by_annotator) {
      std::vector<int> row(item_index.size(), -1);
      for (const auto& [item, label] : labels) row[item_index[item]] = label;
      matrix.push_back(std::move(row));
    }
    const auto& info = Characteristics()[c];
    std::string name(info.name);
    std::string group(GroupName(info.group));
    group_sums.try_emplace(group, 0.0, 0);
    if (matrix.size() < 2) {
      out.per_characteristic[name] = StatResult{};
      continue;
    }
    auto r = MeanPairwiseKappa(matrix);
    if (r.statistic) {
      group_sums[group].first += *r.statistic;
      group_sums[group].second += 1;
    }
    out.per_characteristic[name] = r;
  }
  for (const auto& [group, sum] : group_sums) {
    out.per_group[group] =
        sum.second ? std::optional<double>(sum.first / static_cast<double>(sum.second))
                   : std::nullopt;
  }
  return out;
}

std::vector<CharacteristicDelta> ClusterDeltas(
    const std::vector<const ConfidenceVector*>& cluster,
    const std::vector<const ConfidenceVector*>& baseline, int b,
    std::uint64_t seed, int threads) {
  if (cluster.empty() || baseline.empty())
    throw ValidationError("cluster deltas: both tweet sets must be non-empty");
  std::vector<CharacteristicDelta> out;
  std::vector<double> xs, ys;
  for (std::size_t c = 0; c < kNumCharacteristics; ++c) {
    xs.clear();
    ys.clear();
    for (const auto* row : cluster) xs.push_back((*row)[c]);
    for (const auto* row : baseline) ys.push_back((*row)[c]);
    double se_x = xs.size() >= 2 ? BootstrapSe(xs, b, DeriveSeed(seed, 2 * c), threads) : 0.0;
    double se_y =
        ys.size() >= 2 ? BootstrapSe(ys, b, DeriveSeed(seed, 2 * c + 1), threads) : 0.0;
    auto mw = MannWhitneyU(xs, ys);
    out.push_back({c, Mean(xs) - Mean(ys), std::sqrt(se_x * se_x + se_y * se_y),
                   mw.p_value, xs.size(), ys.size()});
  }
  return out;
}

std::vector<DailyMean> DailyMeanConfidence(const Corpus& corpus,
                                           const CharacteristicTable& table,
                                           const std::vector<bool>& selected,
                                           std::size_t characteristic) {
  if (characteristic >= kNumCharacteristics)
    throw ValidationError("characteristic index out of range");
  std::vector<DailyMean> series;
  for (const auto& [day, idx] : corpus.day_index()) {
    DailyMean m{day, std::nullopt, 0};
    double sum = 0.0;
    for (std::size_t i : idx) {
      if (i >= selected.size() || !selected[i]) continue;
      const auto* row = table.Find(corpus[i].tweet_id);
      if (!row) continue;
      sum += (*row)[characteristic];
      ++m.n;
    }
    if (m.n > 0) m.mean = sum / static_cast<double>(m.n);
    series.push_back(m);
  }
  return series;
}

std::vector<LanguageShare> LanguageMix(const Corpus& corpus,
                                       const std::vector<std::string>& accounts) {
  std::vector<LanguageShare> out;
  for (const auto& account : accounts) {
    LanguageShare share{account, {}, 0};
    auto it = corpus.account_index().find(account);
    if (it != corpus.account_index().end()) {
      std::map<std::string, std::size_t> counts;
      for (std::size_t i : it->second) ++counts[corpus[i].language];
      share.n_tweets = it->second.size();
      for (const auto& [lang, n] : counts)
        share.fractions[lang] =
            static_cast<double>(n) / static_cast<double>(share.n_tweets);
    }
    out.push_back(std::move(share));
  }
  return out;
}

}  // namespace cibnet::stats
