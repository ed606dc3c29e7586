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

#ifndef CIBNET_REPORT_H_
#define CIBNET_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corpus.h"
#include "detectors.h"
#include "graph.h"
#include "manifest.h"
#include "sociolinguistics.h"

namespace cibnet {

struct ReportOptions {
  // Which detectors' flagged accounts count as coordinated.
  std::vector<Detector> coordination = {Detector::kHashtag};
  // Detector whose edges define the cluster graph.
  Detector cluster_detector = Detector::kHashtag;
  std::vector<std::string> story_hashtags = {"macronleaks", "bayrougate",
                                             "macrongate"};
  DuplicateScope duplicate_scope = DuplicateScope::kAccount;
  NormalizeOptions duplicate_normalization;
  double binarize_threshold = 0.5;
  std::size_t delta_clusters = 5;  // largest clusters that get delta rows
  int bootstrap_resamples = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Plain-number headline values, also written to summary.json.
struct ReportSummary {
  std::size_t accounts = 0;
  std::size_t coordinated_accounts = 0;
  double user_share = 0.0;
  std::size_t story_tweets = 0;
  std::size_t coordinated_story_tweets = 0;
  std::optional<double> story_share;
  RetweetInteractions interactions;
  std::size_t clusters = 0;
  bool sociolinguistics = false;
  std::optional<double> vote_for_rate_coordinated;
  std::optional<double> vote_for_rate_baseline;
  std::optional<double> binarization_median_spearman;
  std::size_t uncovered_tweets = 0;
  std::vector<std::string> notices;
};

// Fraction of tweets carrying any story hashtag that coordinated accounts
// wrote. Tags are compared case-insensitively without the leading '#'.
struct StoryShare {
  std::size_t total = 0;
  std::size_t coordinated = 0;
  std::optional<double> share;
};

StoryShare ComputeStoryShare(const Corpus& corpus, const AccountSet& coordinated,
                             const std::vector<std::string>& story_hashtags);

struct BinarizedRates {
  std::optional<double> coordinated;
  std::optional<double> baseline;
};

// Share of tweets labelled 1 for one characteristic on each side.
BinarizedRates ComputeBinarizedRates(const Corpus& corpus,
                                     const CharacteristicTable& table,
                                     const AccountSet& coordinated,
                                     std::size_t characteristic,
                                     double threshold = 0.5);

// Writes the CSV/JSON bundle into out_dir (created if needed), registers
// every file with the manifest and finally writes manifest.json.
// `confidences` may be null or empty; the socio-linguistic sections are then
// skipped with a notice.
ReportSummary WriteReport(const Corpus& corpus, const Detection& detection,
                          const CharacteristicTable* confidences,
                          const ReportOptions& options, const std::string& out_dir,
                          RunManifest& manifest);

}  // namespace cibnet

#endif  // CIBNET_REPORT_H_
