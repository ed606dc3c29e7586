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

#ifndef CIBNET_DETECTORS_H_
#define CIBNET_DETECTORS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpus.h"

namespace cibnet {

enum class Detector : std::uint8_t { kHashtag = 0, kRetweet = 1, kTime = 2 };

inline constexpr std::size_t kNumDetectors = 3;

std::string_view DetectorName(Detector d);
std::optional<Detector> ParseDetector(std::string_view name);

struct DetectorConfig {
  int hashtag_k = 5;               // shared ordered hashtag run length
  double retweet_top_frac = 0.005; // top share of candidate pairs kept
  int retweet_min = 10;            // eligibility: strictly more retweets
  int time_bin_minutes = 30;
  double time_threshold = 0.99;    // edge iff cosine strictly above
  int time_min = 10;               // eligibility: strictly more tweets

  // Throws ValidationError naming the offending field.
  void Validate() const;
};

using TermId = std::uint32_t;

// Non-negative sparse weights sorted by term, with the Euclidean norm cached.
class SparseVector {
 public:
  struct Entry {
    TermId term;
    double weight;
  };

  SparseVector() = default;
  // Zero weights are dropped; duplicate terms or negative weights throw.
  explicit SparseVector(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  double norm() const { return norm_; }
  bool empty() const { return entries_.empty(); }
  double Weight(TermId term) const;

 private:
  std::vector<Entry> entries_;
  double norm_ = 0.0;
};

// Sum of products in ascending term order.
double Dot(const SparseVector& u, const SparseVector& v);

// dot / (|u| |v|) clamped to [0, 1]. Throws ValidationError on a zero norm.
double Cosine(const SparseVector& u, const SparseVector& v);

// Raw term frequency times smoothed natural-log idf: tf * ln((1+n)/(1+df)).
double TfIdfWeight(std::int64_t tf, std::int64_t df, std::int64_t n_docs);

struct CoordinationEdge {
  std::string a;  // a < b
  std::string b;
  Detector detector = Detector::kHashtag;
  double score = 1.0;
  std::string evidence;

  bool operator==(const CoordinationEdge&) const = default;
};

// Orders by (detector, a, b, evidence).
bool EdgeLess(const CoordinationEdge& x, const CoordinationEdge& y);

CoordinationEdge MakeEdge(std::string_view u, std::string_view v,
                          Detector detector, double score,
                          std::string evidence);

inline constexpr char kHashtagKeySeparator = '|';

// Distinct contiguous k-windows over an original tweet's hashtags, sorted.
// Replies and retweets yield nothing.
std::vector<std::string> HashtagKeySet(const TweetRecord& tweet, int k);

// Inverted index from hashtag k-gram to accounts. Only this index is kept in
// memory, so records can be streamed through it.
class HashtagIndex {
 public:
  explicit HashtagIndex(int k);

  void Add(const TweetRecord& tweet);

  std::size_t key_count() const { return postings_.size(); }
  std::size_t account_count() const { return names_.size(); }

  // One edge per (a, b, key), sorted.
  std::vector<CoordinationEdge> Edges() const;

 private:
  std::uint32_t Intern(const std::string& account);

  int k_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> postings_;
};

enum class VectorTerm { kRetweetedId, kTimeBin };

// TF-IDF document set: one document per eligible account, sorted by id.
// Term ids follow the sorted order of the underlying term values.
struct AccountVectors {
  std::vector<std::string> accounts;
  std::vector<SparseVector> vectors;
  std::size_t term_count = 0;
};

AccountVectors BuildAccountVectors(const Corpus& corpus, VectorTerm term,
                                   const DetectorConfig& cfg);

struct ScoredPair {
  std::uint32_t i;
  std::uint32_t j;  // i < j
  double similarity;
};

// Every pair sharing a positively weighted term, scored by cosine, via an
// inverted index. Pairs with similarity <= min_similarity are dropped.
// Output is ordered by (i, j) at any thread count.
std::vector<ScoredPair> CandidatePairs(const std::vector<SparseVector>& docs,
                                       double min_similarity, int threads);

struct DetectorResult {
  Detector detector = Detector::kHashtag;
  std::vector<CoordinationEdge> edges;
  std::vector<std::string> flagged;  // sorted endpoints
  std::size_t eligible_accounts = 0;
  std::size_t candidate_pairs = 0;
  std::optional<double> cutoff;      // similarity threshold actually applied
};

DetectorResult DetectHashtagCoordination(const Corpus& corpus,
                                         const DetectorConfig& cfg);
DetectorResult DetectRetweetCoordination(const Corpus& corpus,
                                         const DetectorConfig& cfg,
                                         int threads = 1);
DetectorResult DetectTimeCoordination(const Corpus& corpus,
                                      const DetectorConfig& cfg,
                                      int threads = 1);

std::vector<std::string> FlaggedAccounts(
    const std::vector<CoordinationEdge>& edges);

// Output of all enabled detectors plus their flagged-set overlaps.
struct Detection {
  std::vector<DetectorResult> results;  // one per enabled detector

  const DetectorResult* Find(Detector d) const;
  std::vector<CoordinationEdge> AllEdges() const;
  std::vector<std::string> UnionFlagged() const;
};

struct DetectorSelection {
  bool hashtag = true;
  bool retweet = true;
  bool time = true;
};

Detection RunDetectors(const Corpus& corpus, const DetectorConfig& cfg,
                       const DetectorSelection& selection, int threads = 1);

struct OverlapRow {
  std::string left;
  std::string right;
  std::size_t left_count;
  std::size_t right_count;
  std::size_t both;
};

// Pairwise intersections of flagged account sets, then the three-way one.
std::vector<OverlapRow> FlaggedOverlaps(const Detection& detection);

void WriteEdgesCsv(const std::vector<CoordinationEdge>& edges, std::ostream& out);
std::vector<CoordinationEdge> ReadEdgesCsv(std::istream& in);
void WriteAccountList(const std::vector<std::string>& accounts, std::ostream& out);
std::vector<std::string> ReadAccountList(std::istream& in);

// Rebuilds per-detector results from an edge list.
Detection DetectionFromEdges(std::vector<CoordinationEdge> edges);

}  // namespace cibnet

#endif  // CIBNET_DETECTORS_H_
