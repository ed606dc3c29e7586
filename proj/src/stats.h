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

#ifndef CIBNET_STATS_H_
#define CIBNET_STATS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpus.h"
#include "sociolinguistics.h"

namespace cibnet::stats {

struct StatResult {
  std::optional<double> statistic;
  std::optional<double> p_value;  // in [0, 1] when present
  std::vector<std::size_t> n;     // sample sizes
  std::optional<double> se;
  std::string method;
};

enum class Alternative { kTwoSided, kLess, kGreater };

// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> values);

std::optional<double> Pearson(std::span<const double> x, std::span<const double> y);

enum class SpearmanPValue {
  kTDistribution,      // t = rho sqrt((n-2)/(1-rho^2)), n-2 dof
  kExactPermutation,   // all n! rank permutations; n <= 10
};

// Requires |x| == |y| >= 3. A constant input gives a null statistic.
StatResult Spearman(std::span<const double> x, std::span<const double> y,
                    SpearmanPValue method = SpearmanPValue::kTDistribution,
                    Alternative alt = Alternative::kTwoSided);

enum class MannWhitneyMethod { kAuto, kExact, kNormal };

// Largest combined size handled by exact enumeration.
inline constexpr std::size_t kExactMannWhitneyMax = 16;

// U for sample a (rank sum minus n_a(n_a+1)/2). kAuto takes the exact null
// distribution when n_a + n_b <= 16 without ties, otherwise the normal
// approximation with tie and continuity corrections.
StatResult MannWhitneyU(std::span<const double> a, std::span<const double> b,
                        MannWhitneyMethod method = MannWhitneyMethod::kAuto,
                        Alternative alt = Alternative::kTwoSided);

// Number of arrangements giving each U value, for sizes (n_a, n_b).
std::vector<double> MannWhitneyNullCounts(std::size_t n_a, std::size_t n_b);

// Labels are 0/1; both classes must be present. Ties count one half.
StatResult RocAuc(std::span<const double> scores, std::span<const int> labels);

struct ReshuffleResult {
  double mean_auc = 0.0;
  double se = 0.0;  // standard deviation of per-split held-out AUCs
  std::vector<double> aucs;
  std::size_t splits_skipped = 0;
  std::uint64_t seed = 0;
};

// Repeated seeded shuffles; the rows after the first train_frac share are
// held out and scored. Splits whose held-out part lacks a class are skipped.
ReshuffleResult ReshuffleEval(std::span<const double> scores,
                              std::span<const int> labels, int splits = 10,
                              double train_frac = 0.5, std::uint64_t seed = 0,
                              int threads = 1);

// Standard deviation of the mean over b seeded resamples with replacement.
double BootstrapSe(std::span<const double> values, int b = 1000,
                   std::uint64_t seed = 0, int threads = 1);

// Binary labels, -1 for "not annotated". Items missing from either side are
// ignored. A null statistic means chance agreement is 1.
StatResult CohensKappa(std::span<const int> a, std::span<const int> b);

// Unweighted mean of pairwise kappas; rows are annotators, columns items.
StatResult MeanPairwiseKappa(const std::vector<std::vector<int>>& annotations);

struct KappaSummary {
  std::map<std::string, StatResult> per_characteristic;
  std::map<std::string, std::optional<double>> per_group;  // mean over members
};

struct Annotation {
  std::string item;
  std::string annotator;
  std::size_t characteristic;
  int label;
};

KappaSummary KappaByCharacteristic(const std::vector<Annotation>& annotations);

struct CharacteristicDelta {
  std::size_t characteristic;
  double delta;     // mean(cluster) - mean(baseline)
  double se;        // bootstrap SEs of both means in quadrature
  std::optional<double> p;  // Mann-Whitney, two-sided
  std::size_t n_cluster;
  std::size_t n_baseline;
};

// Each side is a list of table rows. Both must be non-empty.
std::vector<CharacteristicDelta> ClusterDeltas(
    const std::vector<const ConfidenceVector*>& cluster,
    const std::vector<const ConfidenceVector*>& baseline, int b = 1000,
    std::uint64_t seed = 0, int threads = 1);

struct DailyMean {
  Day day;
  std::optional<double> mean;
  std::size_t n = 0;
};

// One entry per corpus day; tweets without a table row are not counted.
std::vector<DailyMean> DailyMeanConfidence(const Corpus& corpus,
                                           const CharacteristicTable& table,
                                           const std::vector<bool>& selected,
                                           std::size_t characteristic);

struct LanguageShare {
  std::string account_id;
  std::map<std::string, double> fractions;  // sums to 1
  std::size_t n_tweets = 0;
};

std::vector<LanguageShare> LanguageMix(const Corpus& corpus,
                                       const std::vector<std::string>& accounts);

double Mean(std::span<const double> values);

}  // namespace cibnet::stats

#endif  // CIBNET_STATS_H_
