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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "detectors.h"
#include "doctest.h"
#include "error.h"
#include "fixtures.h"
#include "oracles.h"

using namespace cibnet;
using fixture::Original;
using fixture::Retweet;

namespace {

std::set<oracle::Pair> PairsOf(const std::vector<CoordinationEdge>& edges) {
  std::set<oracle::Pair> out;
  for (const auto& e : edges) out.insert({e.a, e.b});
  return out;
}

std::set<oracle::Triple> TriplesOf(const std::vector<CoordinationEdge>& edges) {
  std::set<oracle::Triple> out;
  for (const auto& e : edges) out.insert({e.a, e.b, e.evidence});
  return out;
}

DetectorConfig SmallConfig() {
  DetectorConfig cfg;
  cfg.retweet_min = 5;
  cfg.time_min = 5;
  cfg.retweet_top_frac = 0.05;
  cfg.time_threshold = 0.9;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  DetectorConfig cfg;
  CHECK_NOTHROW(cfg.Validate());
  auto bad = [](auto mutate) {
    DetectorConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.Validate(), ValidationError);
  };
  bad([](DetectorConfig& c) { c.hashtag_k = 1; });
  bad([](DetectorConfig& c) { c.retweet_top_frac = 0.0; });
  bad([](DetectorConfig& c) { c.retweet_top_frac = 1.0; });
  bad([](DetectorConfig& c) { c.time_threshold = 0.0; });
  bad([](DetectorConfig& c) { c.time_threshold = 1.5; });
  bad([](DetectorConfig& c) { c.retweet_min = 0; });
  bad([](DetectorConfig& c) { c.time_min = 0; });
  bad([](DetectorConfig& c) { c.time_bin_minutes = 0; });
}

TEST_CASE("hashtag key sets") {
  auto keys = [](std::vector<std::string> tags) {
    return HashtagKeySet(Original("1", "a", 0, std::move(tags)), 5);
  };
  CHECK(keys({"a", "b", "c", "d", "e"}) == std::vector<std::string>{"a|b|c|d|e"});
  CHECK(keys({"a", "b", "c", "d", "e", "f"}) ==
        std::vector<std::string>{"a|b|c|d|e", "b|c|d|e|f"});
  CHECK(keys({"a", "b", "c"}).empty());
  auto rt = Retweet("2", "a", 0, "1");
  rt.hashtags = {"a", "b", "c", "d", "e"};
  CHECK(HashtagKeySet(rt, 5).empty());
}

TEST_CASE("hashtag detector examples") {
  const std::vector<std::string> run = {"a", "b", "c", "d", "e"};
  DetectorConfig cfg;
  Corpus two({Original("1", "x", 0, run), Original("2", "y", 5, run)});
  auto r = DetectHashtagCoordination(two, cfg);
  REQUIRE(r.edges.size() == 1);
  CHECK(r.edges[0].a == "x");
  CHECK(r.edges[0].b == "y");
  CHECK(r.edges[0].score == 1.0);
  CHECK(r.edges[0].evidence == "a|b|c|d|e");
  CHECK(r.flagged == std::vector<std::string>{"x", "y"});

  Corpus self({Original("1", "x", 0, run), Original("2", "x", 5, run)});
  CHECK(DetectHashtagCoordination(self, cfg).edges.empty());

  // Three accounts share K1, two share K2: 3 + 1 edges.
  const std::vector<std::string> k2 = {"p", "q", "r", "s", "t"};
  std::vector<TweetRecord> recs = {Original("1", "u1", 0, run), Original("2", "u2", 0, run),
                                   Original("3", "u3", 0, run), Original("4", "v1", 0, k2),
                                   Original("5", "v2", 0, k2), Original("6", "v2", 9, k2)};
  auto planted = DetectHashtagCoordination(Corpus(recs), cfg);
  CHECK(TriplesOf(planted.edges) == oracle::HashtagTriples(recs, 5));
  CHECK(planted.edges.size() == 4);
}

TEST_CASE("tf-idf weights") {
  CHECK(TfIdfWeight(1, 1, 1) == 0.0);
  CHECK(TfIdfWeight(2, 1, 3) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
  CHECK(TfIdfWeight(2, 1, 3) == doctest::Approx(1.386294).epsilon(1e-6));
  CHECK(TfIdfWeight(1, 100, 100) == 0.0);
  CHECK_THROWS_AS(TfIdfWeight(0, 1, 1), ValidationError);
  CHECK_THROWS_AS(TfIdfWeight(1, 2, 1), ValidationError);
  CHECK_THROWS_AS(TfIdfWeight(1, 0, 1), ValidationError);
}

TEST_CASE("sparse vectors and cosine") {
  SparseVector u({{0, 1.0}, {1, 1.0}}), v({{0, 1.0}});
  CHECK(Cosine(u, u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(Cosine(u, v) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(Cosine(u, v) == Cosine(v, u));
  CHECK(Cosine(SparseVector({{0, 2.0}}), SparseVector({{1, 3.0}})) == 0.0);
  CHECK_THROWS_AS(Cosine(u, SparseVector()), ValidationError);
  SparseVector z({{3, 0.0}, {1, 2.0}});
  CHECK(z.entries().size() == 1);
  CHECK(z.norm() == 2.0);
  CHECK_THROWS_AS(SparseVector({{1, 1.0}, {1, 2.0}}), ValidationError);
  CHECK_THROWS_AS(SparseVector({{1, -1.0}}), ValidationError);

  std::mt19937_64 gen(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<SparseVector::Entry> a, b;
    for (TermId k = 0; k < 20; ++k) {
      if (gen() % 3 == 0) a.push_back({k, static_cast<double>(gen() % 100) / 7.0 + 0.1});
      if (gen() % 3 == 0) b.push_back({k, static_cast<double>(gen() % 100) / 7.0 + 0.1});
    }
    if (a.empty() || b.empty()) continue;
    SparseVector x(a), y(b);
    double c = Cosine(x, y);
    CHECK(std::abs(c - Cosine(y, x)) <= 1e-12);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    double norm_check = 0;
    for (const auto& e : x.entries()) norm_check += e.weight * e.weight;
    CHECK(std::abs(x.norm() - std::sqrt(norm_check)) <= 1e-9 * x.norm());
  }
}

TEST_CASE("account vectors") {
  DetectorConfig cfg;
  std::vector<TweetRecord> recs;
  for (int i = 0; i < 10; ++i) recs.push_back(Retweet("a" + std::to_string(i), "ten", i, "x"));
  for (int i = 0; i < 11; ++i) recs.push_back(Retweet("b" + std::to_string(i), "eleven", i, "x"));
  for (int i = 0; i < 11; ++i)
    recs.push_back(Retweet("c" + std::to_string(i), "other", i, i < 10 ? "y" : "x"));
  auto av = BuildAccountVectors(Corpus(recs), VectorTerm::kRetweetedId, cfg);
  CHECK(av.accounts == std::vector<std::string>{"eleven", "other"});
  // Term y appears in one of two documents; x in both and so weighs nothing.
  REQUIRE(av.vectors[0].empty());
  REQUIRE(av.vectors[1].entries().size() == 1);
  CHECK(av.vectors[1].entries()[0].weight == doctest::Approx(10 * std::log(1.5)));

  cfg.time_min = 1;
  Corpus times({Original("1", "t", fixture::kMay1 + 600), Original("2", "t", fixture::kMay1 + 2400)});
  auto tv = BuildAccountVectors(times, VectorTerm::kTimeBin, cfg);
  CHECK(tv.accounts == std::vector<std::string>{"t"});
  CHECK(tv.term_count == 2);
}

TEST_CASE("retweet detector examples") {
  DetectorConfig cfg;
  cfg.retweet_min = 1;
  cfg.retweet_top_frac = 0.5;
  CHECK(DetectRetweetCoordination(Corpus({Retweet("1", "a", 0, "x"), Retweet("2", "a", 1, "y")}), cfg)
            .edges.empty());

  // x and y retweet the same pair of ids; z retweets something else.
  std::vector<TweetRecord> recs = {
      Retweet("1", "x", 0, "p"), Retweet("2", "x", 1, "q"), Retweet("3", "y", 2, "p"),
      Retweet("4", "y", 3, "q"), Retweet("5", "z", 4, "r"), Retweet("6", "z", 5, "s")};
  auto r = DetectRetweetCoordination(Corpus(recs), cfg);
  REQUIRE(r.edges.size() == 1);
  CHECK(r.edges[0].a == "x");
  CHECK(r.edges[0].b == "y");
  CHECK(r.edges[0].score == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.edges[0].evidence == "cosine");
  CHECK(PairsOf(r.edges) == oracle::RetweetPairs(recs, 1, 0.5));
}

TEST_CASE("time detector examples") {
  DetectorConfig cfg;
  cfg.time_min = 2;
  std::vector<TweetRecord> recs;
  for (int i = 0; i < 3; ++i) {
    recs.push_back(Original("a" + std::to_string(i), "a", fixture::kMay1 + i * 3600));
    recs.push_back(Original("b" + std::to_string(i), "b", fixture::kMay1 + i * 3600 + 60));
    recs.push_back(Original("c" + std::to_string(i), "c", fixture::kMay1 + 90000 + i * 3600));
    // c and d are extra documents, so the bins a and b share keep a positive idf.
    recs.push_back(Original("d" + std::to_string(i), "d", fixture::kMay1 + 200000 + i * 3600));
  }
  auto r = DetectTimeCoordination(Corpus(recs), cfg);
  REQUIRE(r.edges.size() == 1);
  CHECK(r.edges[0].a == "a");
  CHECK(r.edges[0].b == "b");
  CHECK(PairsOf(r.edges) == oracle::TimePairs(recs, 30, 2, 0.99));
}

TEST_CASE("oracle equivalence on random corpora") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto recs = fixture::RandomCorpus(seed, 40 + static_cast<int>(seed) * 15);
    Corpus c(recs);
    DetectorConfig cfg = SmallConfig();
    CHECK(TriplesOf(DetectHashtagCoordination(c, cfg).edges) == oracle::HashtagTriples(recs, 5));
    CHECK(PairsOf(DetectRetweetCoordination(c, cfg).edges) ==
          oracle::RetweetPairs(recs, cfg.retweet_min, cfg.retweet_top_frac));
    CHECK(PairsOf(DetectTimeCoordination(c, cfg).edges) ==
          oracle::TimePairs(recs, cfg.time_bin_minutes, cfg.time_min, cfg.time_threshold));
  }
}

TEST_CASE("output independent of record order and thread count") {
  auto recs = fixture::RandomCorpus(99, 120);
  DetectorConfig cfg = SmallConfig();
  auto base = RunDetectors(Corpus(recs), cfg, {}, 1);
  std::mt19937_64 gen(3);
  std::shuffle(recs.begin(), recs.end(), gen);
  auto shuffled = RunDetectors(Corpus(recs), cfg, {}, 4);
  CHECK(base.AllEdges() == shuffled.AllEdges());
  CHECK(base.UnionFlagged() == shuffled.UnionFlagged());
}

TEST_CASE("monotonicity in thresholds") {
  auto recs = fixture::RandomCorpus(42, 150);
  Corpus c(recs);
  DetectorConfig cfg = SmallConfig();
  auto prev = PairsOf(DetectTimeCoordination(c, cfg).edges);
  for (double t : {0.92, 0.95, 0.99, 1.0}) {
    cfg.time_threshold = t;
    auto next = PairsOf(DetectTimeCoordination(c, cfg).edges);
    CHECK(std::includes(prev.begin(), prev.end(), next.begin(), next.end()));
    prev = next;
  }
  cfg = SmallConfig();
  auto hprev = PairsOf(DetectHashtagCoordination(c, cfg).edges);
  for (int k : {6, 7, 8}) {
    cfg.hashtag_k = k;
    auto next = PairsOf(DetectHashtagCoordination(c, cfg).edges);
    CHECK(std::includes(hprev.begin(), hprev.end(), next.begin(), next.end()));
    hprev = next;
  }
}

TEST_CASE("edges are canonical and deduplicated") {
  auto d = RunDetectors(Corpus(fixture::RandomCorpus(8, 100)), SmallConfig(), {}, 2);
  auto edges = d.AllEdges();
  for (const auto& e : edges) {
    CHECK(e.a < e.b);
    CHECK(e.score >= 0.0);
    CHECK(e.score <= 1.0);
  }
  for (std::size_t i = 1; i < edges.size(); ++i) CHECK(EdgeLess(edges[i - 1], edges[i]));
  CHECK(MakeEdge("b", "a", Detector::kTime, 0.5, "cosine").a == "a");
  CHECK_THROWS_AS(MakeEdge("a", "a", Detector::kTime, 0.5, "cosine"), ValidationError);
}

TEST_CASE("edge CSV round trip and detection rebuild") {
  auto d = RunDetectors(Corpus(fixture::RandomCorpus(12, 80)), SmallConfig(), {}, 1);
  std::stringstream csv;
  WriteEdgesCsv(d.AllEdges(), csv);
  CHECK(csv.str().rfind("account_a,account_b,detector,score,evidence\n", 0) == 0);
  auto back = ReadEdgesCsv(csv);
  REQUIRE(back.size() == d.AllEdges().size());
  auto rebuilt = DetectionFromEdges(back);
  CHECK(rebuilt.UnionFlagged() == d.UnionFlagged());
  for (auto det : {Detector::kHashtag, Detector::kRetweet, Detector::kTime}) {
    REQUIRE(rebuilt.Find(det));
    CHECK(rebuilt.Find(det)->flagged == d.Find(det)->flagged);
    const auto& x = rebuilt.Find(det)->edges;
    const auto& y = d.Find(det)->edges;
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i].score == y[i].score);
  }
  std::istringstream bad("account_a,account_b,detector,score,evidence\na,a,time,1,cosine\n");
  CHECK_THROWS(ReadEdgesCsv(bad));

  std::stringstream list;
  WriteAccountList(d.UnionFlagged(), list);
  CHECK(ReadAccountList(list) == d.UnionFlagged());
}

TEST_CASE("overlap counts equal set intersections") {
  auto d = RunDetectors(Corpus(fixture::RandomCorpus(21, 150)), SmallConfig(), {}, 1);
  auto as_set = [&](Detector det) {
    const auto& f = d.Find(det)->flagged;
    return std::set<std::string>(f.begin(), f.end());
  };
  auto h = as_set(Detector::kHashtag), r = as_set(Detector::kRetweet), t = as_set(Detector::kTime);
  auto inter = [](const std::set<std::string>& x, const std::set<std::string>& y) {
    std::set<std::string> out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::inserter(out, out.end()));
    return out;
  };
  auto rows = FlaggedOverlaps(d);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].both == inter(h, r).size());
  CHECK(rows[1].both == inter(h, t).size());
  CHECK(rows[2].both == inter(r, t).size());
  CHECK(rows[3].both == inter(inter(h, r), t).size());
  CHECK(rows[0].left_count == h.size());
  CHECK(rows[2].right_count == t.size());
}

TEST_CASE("disabled detectors are absent") {
  auto d = RunDetectors(Corpus(fixture::RandomCorpus(4, 30)), SmallConfig(), {true, false, false});
  CHECK(d.Find(Detector::kHashtag) != nullptr);
  CHECK(d.Find(Detector::kRetweet) == nullptr);
  CHECK(d.Find(Detector::kTime) == nullptr);
}
