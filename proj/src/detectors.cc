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

#include "detectors.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <thread>
#include <variant>

#include "csv.h"
#include "error.h"

namespace cibnet {

std::string_view DetectorName(Detector d) {
  switch (d) {
    case Detector::kHashtag: return "hashtag";
    case Detector::kRetweet: return "retweet";
    case Detector::kTime: return "time";
  }
  return "hashtag";
}

std::optional<Detector> ParseDetector(std::string_view name) {
  if (name == "hashtag") return Detector::kHashtag;
  if (name == "retweet") return Detector::kRetweet;
  if (name == "time") return Detector::kTime;
  return std::nullopt;
}

void DetectorConfig::Validate() const {
  if (hashtag_k < 2) throw ValidationError("hashtag_k must be >= 2");
  if (!(retweet_top_frac > 0.0 && retweet_top_frac < 1.0))
    throw ValidationError("retweet_top_frac must be in (0, 1)");
  if (!(time_threshold > 0.0 && time_threshold <= 1.0))
    throw ValidationError("time_threshold must be in (0, 1]");
  if (retweet_min < 1) throw ValidationError("retweet_min must be >= 1");
  if (time_min < 1) throw ValidationError("time_min must be >= 1");
  if (time_bin_minutes < 1) throw ValidationError("time_bin_minutes must be >= 1");
}

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.term < y.term; });
  double sq = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    if (i > 0 && entries[i - 1].term == e.term)
      throw ValidationError("duplicate term in sparse vector");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw ValidationError("sparse vector weights must be finite and >= 0");
    if (e.weight == 0.0) continue;
    entries_.push_back(e);
    sq += e.weight * e.weight;
  }
  norm_ = std::sqrt(sq);
}

double SparseVector::Weight(TermId term) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), term,
      [](const Entry& e, TermId t) { return e.term < t; });
  return it != entries_.end() && it->term == term ? it->weight : 0.0;
}

double Dot(const SparseVector& u, const SparseVector& v) {
  const auto& a = u.entries();
  const auto& b = v.entries();
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].term < b[j].term) {
      ++i;
    } else if (b[j].term < a[i].term) {
      ++j;
    } else {
      sum += a[i].weight * b[j].weight;
      ++i;
      ++j;
    }
  }
  return sum;
}

namespace {

double ClampUnit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double Cosine(const SparseVector& u, const SparseVector& v) {
  if (u.norm() <= 0.0 || v.norm() <= 0.0)
    throw ValidationError("cosine of a zero-norm vector");
  return ClampUnit(Dot(u, v) / (u.norm() * v.norm()));
}

double TfIdfWeight(std::int64_t tf, std::int64_t df, std::int64_t n_docs) {
  if (tf < 1 || df < 1 || df > n_docs)
    throw ValidationError("tf-idf requires tf >= 1 and 1 <= df <= n_docs");
  return static_cast<double>(tf) *
         std::log(static_cast<double>(1 + n_docs) / static_cast<double>(1 + df));
}

bool EdgeLess(const CoordinationEdge& x, const CoordinationEdge& y) {
  if (x.detector != y.detector) return x.detector < y.detector;
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  return x.evidence < y.evidence;
}

CoordinationEdge MakeEdge(std::string_view u, std::string_view v,
                          Detector detector, double score,
                          std::string evidence) {
  if (u == v) throw ValidationError("self-edge on account " + std::string(u));
  if (v < u) std::swap(u, v);
  return {std::string(u), std::string(v), detector, score, std::move(evidence)};
}

std::vector<std::string> HashtagKeySet(const TweetRecord& tweet, int k) {
  std::vector<std::string> keys;
  if (tweet.kind != TweetKind::kOriginal || k < 1) return keys;
  const auto& tags = tweet.hashtags;
  if (tags.size() < static_cast<std::size_t>(k)) return keys;
  for (std::size_t start = 0; start + k <= tags.size(); ++start) {
    std::string key = tags[start];
    for (int i = 1; i < k; ++i) {
      key.push_back(kHashtagKeySeparator);
      key += tags[start + i];
    }
    keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

HashtagIndex::HashtagIndex(int k) : k_(k) {
  if (k < 2) throw ValidationError("hashtag_k must be >= 2");
}

std::uint32_t HashtagIndex::Intern(const std::string& account) {
  auto [it, inserted] =
      ids_.try_emplace(account, static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.push_back(account);
  return it->second;
}

void HashtagIndex::Add(const TweetRecord& tweet) {
  if (tweet.kind != TweetKind::kOriginal ||
      tweet.hashtags.size() < static_cast<std::size_t>(k_))
    return;
  std::uint32_t id = Intern(tweet.account_id);
  for (auto& key : HashtagKeySet(tweet, k_)) {
    auto& accounts = postings_[std::move(key)];
    if (accounts.empty() || accounts.back() != id) accounts.push_back(id);
  }
}

std::vector<CoordinationEdge> HashtagIndex::Edges() const {
  std::vector<CoordinationEdge> edges;
  std::vector<const std::string*> members;
  for (const auto& [key, ids] : postings_) {
    if (ids.size() < 2) continue;
    members.clear();
    for (std::uint32_t id : ids) members.push_back(&names_[id]);
    std::sort(members.begin(), members.end(),
              [](const std::string* x, const std::string* y) { return *x < *y; });
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        edges.push_back({*members[i], *members[j], Detector::kHashtag, 1.0, key});
  }
  std::sort(edges.begin(), edges.end(), EdgeLess);
  return edges;
}

AccountVectors BuildAccountVectors(const Corpus& corpus, VectorTerm term,
                                   const DetectorConfig& cfg) {
  // Per eligible account, term value -> tf. Term values are strings for
  // retweeted ids and bin indices for time bins; both sort naturally.
  using Key = std::variant<std::string, std::int64_t>;
  AccountVectors out;
  std::vector<std::map<Key, std::int64_t>> counts;
  const std::int64_t bin_seconds = std::int64_t{cfg.time_bin_minutes} * 60;

  for (const auto& [account, idx] : corpus.account_index()) {
    std::map<Key, std::int64_t> tf;
    std::size_t events = 0;
    for (std::size_t i : idx) {
      const TweetRecord& r = corpus[i];
      if (term == VectorTerm::kRetweetedId) {
        if (r.kind != TweetKind::kRetweet) continue;
        ++tf[Key(*r.retweeted_tweet_id)];
      } else {
        std::int64_t bin = r.timestamp / bin_seconds;
        if (r.timestamp % bin_seconds != 0 && r.timestamp < 0) --bin;
        ++tf[Key(bin)];
      }
      ++events;
    }
    std::size_t min = term == VectorTerm::kRetweetedId
                          ? static_cast<std::size_t>(cfg.retweet_min)
                          : static_cast<std::size_t>(cfg.time_min);
    if (events <= min) continue;
    out.accounts.push_back(account);
    counts.push_back(std::move(tf));
  }

  std::map<Key, std::int64_t> df;
  for (const auto& tf : counts)
    for (const auto& [k, n] : tf) ++df[k];
  std::map<Key, TermId> term_ids;
  for (const auto& [k, n] : df)
    term_ids.emplace(k, static_cast<TermId>(term_ids.size()));
  out.term_count = term_ids.size();

  const auto n_docs = static_cast<std::int64_t>(counts.size());
  out.vectors.reserve(counts.size());
  for (const auto& tf : counts) {
    std::vector<SparseVector::Entry> entries;
    entries.reserve(tf.size());
    for (const auto& [k, n] : tf)
      entries.push_back({term_ids.at(k), TfIdfWeight(n, df.at(k), n_docs)});
    out.vectors.emplace_back(std::move(entries));
  }
  return out;
}

std::vector<ScoredPair> CandidatePairs(const std::vector<SparseVector>& docs,
                                       double min_similarity, int threads) {
  struct Posting {
    std::uint32_t doc;
    double weight;
  };
  TermId max_term = 0;
  for (const auto& d : docs)
    for (const auto& e : d.entries()) max_term = std::max(max_term, e.term + 1);
  std::vector<std::vector<Posting>> index(max_term);
  for (std::uint32_t i = 0; i < docs.size(); ++i)
    for (const auto& e : docs[i].entries()) index[e.term].push_back({i, e.weight});

  constexpr std::size_t kBlock = 32;
  const std::size_t n_blocks = (docs.size() + kBlock - 1) / kBlock;
  std::vector<std::vector<ScoredPair>> block_out(n_blocks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    std::vector<double> acc(docs.size(), 0.0);
    std::vector<std::uint32_t> touched;
    for (std::size_t b = next++; b < n_blocks; b = next++) {
      auto& out = block_out[b];
      std::size_t end = std::min(docs.size(), (b + 1) * kBlock);
      for (std::size_t i = b * kBlock; i < end; ++i) {
        const SparseVector& u = docs[i];
        if (u.norm() <= 0.0) continue;
        touched.clear();
        for (const auto& e : u.entries()) {
          const auto& plist = index[e.term];
          auto it = std::upper_bound(
              plist.begin(), plist.end(), static_cast<std::uint32_t>(i),
              [](std::uint32_t x, const Posting& p) { return x < p.doc; });
          for (; it != plist.end(); ++it) {
            if (acc[it->doc] == 0.0) touched.push_back(it->doc);
            acc[it->doc] += e.weight * it->weight;
          }
        }
        std::sort(touched.begin(), touched.end());
        for (std::uint32_t j : touched) {
          double dot = acc[j];
          acc[j] = 0.0;
          double sim = ClampUnit(dot / (u.norm() * docs[j].norm()));
          if (dot > 0.0 && sim > min_similarity)
            out.push_back({static_cast<std::uint32_t>(i), j, sim});
        }
      }
    }
  };

  int workers = std::max(1, std::min<int>(threads, static_cast<int>(n_blocks)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<ScoredPair> pairs;
  for (auto& out : block_out) pairs.insert(pairs.end(), out.begin(), out.end());
  return pairs;
}

std::vector<std::string> FlaggedAccounts(
    const std::vector<CoordinationEdge>& edges) {
  std::vector<std::string> flagged;
  flagged.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    flagged.push_back(e.a);
    flagged.push_back(e.b);
  }
  std::sort(flagged.begin(), flagged.end());
  flagged.erase(std::unique(flagged.begin(), flagged.end()), flagged.end());
  return flagged;
}

DetectorResult DetectHashtagCoordination(const Corpus& corpus,
                                         const DetectorConfig& cfg) {
  cfg.Validate();
  HashtagIndex index(cfg.hashtag_k);
  for (const auto& r : corpus.records()) index.Add(r);
  DetectorResult result;
  result.detector = Detector::kHashtag;
  result.edges = index.Edges();
  result.flagged = FlaggedAccounts(result.edges);
  result.eligible_accounts = index.account_count();
  result.candidate_pairs = result.edges.size();
  return result;
}

namespace {

// Descending nearest-rank: the k-th largest similarity, k = ceil(frac * m).
double TopFractionCutoff(std::vector<double> sims, double frac) {
  std::sort(sims.begin(), sims.end(), std::greater<>());
  double rank = std::ceil(frac * static_cast<double>(sims.size()) - 1e-9);
  auto k = static_cast<std::size_t>(std::max(1.0, rank));
  return sims[std::min(k, sims.size()) - 1];
}

}  // namespace

DetectorResult DetectRetweetCoordination(const Corpus& corpus,
                                         const DetectorConfig& cfg,
                                         int threads) {
  cfg.Validate();
  DetectorResult result;
  result.detector = Detector::kRetweet;
  AccountVectors av = BuildAccountVectors(corpus, VectorTerm::kRetweetedId, cfg);
  result.eligible_accounts = av.accounts.size();
  auto pairs = CandidatePairs(av.vectors, 0.0, threads);
  result.candidate_pairs = pairs.size();
  if (pairs.empty()) return result;

  std::vector<double> sims;
  sims.reserve(pairs.size());
  for (const auto& p : pairs) sims.push_back(p.similarity);
  double cutoff = TopFractionCutoff(std::move(sims), cfg.retweet_top_frac);
  result.cutoff = cutoff;
  for (const auto& p : pairs) {
    if (p.similarity >= cutoff)
      result.edges.push_back(MakeEdge(av.accounts[p.i], av.accounts[p.j],
                                      Detector::kRetweet, p.similarity,
                                      "cosine"));
  }
  std::sort(result.edges.begin(), result.edges.end(), EdgeLess);
  result.flagged = FlaggedAccounts(result.edges);
  return result;
}

DetectorResult DetectTimeCoordination(const Corpus& corpus,
                                      const DetectorConfig& cfg, int threads) {
  cfg.Validate();
  DetectorResult result;
  result.detector = Detector::kTime;
  result.cutoff = cfg.time_threshold;
  AccountVectors av = BuildAccountVectors(corpus, VectorTerm::kTimeBin, cfg);
  result.eligible_accounts = av.accounts.size();
  auto pairs = CandidatePairs(av.vectors, cfg.time_threshold, threads);
  result.candidate_pairs = pairs.size();
  for (const auto& p : pairs)
    result.edges.push_back(MakeEdge(av.accounts[p.i], av.accounts[p.j],
                                    Detector::kTime, p.similarity, "cosine"));
  std::sort(result.edges.begin(), result.edges.end(), EdgeLess);
  result.flagged = FlaggedAccounts(result.edges);
  return result;
}

const DetectorResult* Detection::Find(Detector d) const {
  for (const auto& r : results)
    if (r.detector == d) return &r;
  return nullptr;
}

std::vector<CoordinationEdge> Detection::AllEdges() const {
  std::vector<CoordinationEdge> edges;
  for (const auto& r : results) edges.insert(edges.end(), r.edges.begin(), r.edges.end());
  std::sort(edges.begin(), edges.end(), EdgeLess);
  return edges;
}

std::vector<std::string> Detection::UnionFlagged() const {
  std::set<std::string> all;
  for (const auto& r : results) all.insert(r.flagged.begin(), r.flagged.end());
  return {all.begin(), all.end()};
}

Detection RunDetectors(const Corpus& corpus, const DetectorConfig& cfg,
                       const DetectorSelection& selection, int threads) {
  cfg.Validate();
  Detection d;
  if (selection.hashtag) d.results.push_back(DetectHashtagCoordination(corpus, cfg));
  if (selection.retweet)
    d.results.push_back(DetectRetweetCoordination(corpus, cfg, threads));
  if (selection.time) d.results.push_back(DetectTimeCoordination(corpus, cfg, threads));
  return d;
}

std::vector<OverlapRow> FlaggedOverlaps(const Detection& detection) {
  auto intersect = [](const std::vector<std::string>& x,
                      const std::vector<std::string>& y) {
    std::vector<std::string> out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                          std::back_inserter(out));
    return out;
  };
  std::vector<OverlapRow> rows;
  const auto& rs = detection.results;
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j)
      rows.push_back({std::string(DetectorName(rs[i].detector)),
                      std::string(DetectorName(rs[j].detector)),
                      rs[i].flagged.size(), rs[j].flagged.size(),
                      intersect(rs[i].flagged, rs[j].flagged).size()});
  if (rs.size() == 3) {
    auto ab = intersect(rs[0].flagged, rs[1].flagged);
    rows.push_back({std::string(DetectorName(rs[0].detector)) + "+" +
                        std::string(DetectorName(rs[1].detector)),
                    std::string(DetectorName(rs[2].detector)), ab.size(),
                    rs[2].flagged.size(), intersect(ab, rs[2].flagged).size()});
  }
  return rows;
}

void WriteEdgesCsv(const std::vector<CoordinationEdge>& edges, std::ostream& out) {
  out << "account_a,account_b,detector,score,evidence\n";
  for (const auto& e : edges)
    out << csv::Escape(e.a) << ',' << csv::Escape(e.b) << ','
        << DetectorName(e.detector) << ',' << csv::FormatNumber(e.score) << ','
        << csv::Escape(e.evidence) << '\n';
}

std::vector<CoordinationEdge> ReadEdgesCsv(std::istream& in) {
  std::vector<CoordinationEdge> edges;
  std::vector<std::string> row;
  if (!csv::ReadRow(in, row)) return edges;
  const std::vector<std::string> header = {"account_a", "account_b", "detector",
                                           "score", "evidence"};
  if (row != header)
    throw ValidationError("edge file header must be " +
                          std::string("account_a,account_b,detector,score,evidence"));
  std::size_t line = 1;
  while (csv::ReadRow(in, row)) {
    ++line;
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 5)
      throw ParseError(line, "expected 5 columns, got " + std::to_string(row.size()));
    auto det = ParseDetector(row[2]);
    if (!det) throw ParseError(line, "unknown detector '" + row[2] + "'");
    auto score = csv::ParseNumber(row[3]);
    if (!score || *score < 0.0 || *score > 1.0)
      throw ParseError(line, "score must be a number in [0, 1]");
    if (row[0] == row[1]) throw ParseError(line, "self-edge");
    edges.push_back(MakeEdge(row[0], row[1], *det, *score, row[4]));
  }
  std::sort(edges.begin(), edges.end(), EdgeLess);
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const CoordinationEdge& x, const CoordinationEdge& y) {
                            return x.detector == y.detector && x.a == y.a &&
                                   x.b == y.b && x.evidence == y.evidence;
                          }),
              edges.end());
  return edges;
}

void WriteAccountList(const std::vector<std::string>& accounts, std::ostream& out) {
  for (const auto& a : accounts) out << a << '\n';
}

std::vector<std::string> ReadAccountList(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Detection DetectionFromEdges(std::vector<CoordinationEdge> edges) {
  std::sort(edges.begin(), edges.end(), EdgeLess);
  Detection d;
  for (std::size_t k = 0; k < kNumDetectors; ++k) {
    DetectorResult r;
    r.detector = static_cast<Detector>(k);
    for (const auto& e : edges)
      if (e.detector == r.detector) r.edges.push_back(e);
    r.flagged = FlaggedAccounts(r.edges);
    r.candidate_pairs = r.edges.size();
    d.results.push_back(std::move(r));
  }
  return d;
}

}  // namespace cibnet
