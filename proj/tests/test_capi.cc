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

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cibnet/cibnet.h"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

fs::path TempDir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("cibnet_capi_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string Read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string Tweet(const std::string& id, const std::string& acc, long ts,
                  const std::string& tags, const std::string& extra = "") {
  return R"({"tweet_id":")" + id + R"(","account_id":")" + acc + R"(","timestamp":)" +
         std::to_string(ts) + R"(,"kind":"original","text":"Votez Macron","hashtags":[)" + tags +
         R"(],"language":"fr")" + extra + "}\n";
}

const std::string kRun = R"("a","b","c","d","e")";

std::string SmallCorpus() {
  return Tweet("1", "x", 1494000000, kRun) + Tweet("2", "y", 1494000060, kRun) +
         Tweet("3", "z", 1494086400, R"("macronleaks")") +
         Tweet("4", "x", 1494086500, R"("macronleaks")");
}

cib_corpus* Load(const std::string& text) {
  cib_corpus* c = nullptr;
  REQUIRE(cib_corpus_from_buffer(text.data(), text.size(), 1, &c, nullptr) == CIB_OK);
  return c;
}

}  // namespace

TEST_CASE("version and error plumbing") {
  CHECK(std::string(cib_version()) == "0.1.0");
  cib_corpus* c = nullptr;
  CHECK(cib_corpus_load(nullptr, 0, 1, &c, nullptr) == CIB_ERR_VALIDATION);
  CHECK(std::strlen(cib_last_error()) > 0);
  CHECK(cib_corpus_load("/nonexistent/file.jsonl", 0, 1, &c, nullptr) == CIB_ERR_IO);
  CHECK(c == nullptr);

  std::string text = SmallCorpus() + "{broken\n";
  CHECK(cib_corpus_from_buffer(text.data(), text.size(), 1, &c, nullptr) == CIB_ERR_VALIDATION);
  CHECK(cib_last_error_line() == 5);
  cib_parse_stats stats{};
  REQUIRE(cib_corpus_from_buffer(text.data(), text.size(), 0, &c, &stats) == CIB_OK);
  CHECK(stats.records == 4);
  CHECK(stats.skipped == 1);
  CHECK(cib_last_error_line() == 0);
  CHECK(cib_corpus_record_count(c) == 4);
  CHECK(cib_corpus_account_count(c) == 3);
  CHECK(cib_corpus_day_count(c) == 2);
  int64_t first = 0, last = 0;
  CHECK(cib_corpus_time_span(c, &first, &last) == CIB_OK);
  CHECK(first == 1494000000);
  CHECK(last == 1494086500);
  cib_corpus_free(c);
  cib_corpus_free(nullptr);
}

TEST_CASE("normalize through the C API") {
  char buf[64];
  size_t needed = 0;
  REQUIRE(cib_normalize_text("Vote! http://x.co @alice", CIB_NORM_ALL, buf, sizeof buf, &needed) ==
          CIB_OK);
  CHECK(std::string(buf) == "vote @user");
  CHECK(needed == 10);
  char small[5];
  REQUIRE(cib_normalize_text("Vote! http://x.co @alice", CIB_NORM_ALL, small, sizeof small,
                             &needed) == CIB_OK);
  CHECK(std::string(small) == "vote");
  CHECK(needed == 10);
}

TEST_CASE("detect, write, cluster") {
  auto dir = TempDir("detect");
  cib_corpus* c = Load(SmallCorpus());
  cib_detector_config cfg;
  cib_detector_config_default(&cfg);
  CHECK(cfg.hashtag_k == 5);
  CHECK(cfg.retweet_top_frac == 0.005);
  CHECK(cfg.time_threshold == 0.99);
  cfg.hashtag_k = 1;
  CHECK(cib_detector_config_validate(&cfg) == CIB_ERR_VALIDATION);
  CHECK(std::string(cib_last_error()).find("hashtag_k") != std::string::npos);
  cib_detection* d = nullptr;
  CHECK(cib_detect(c, &cfg, 1, &d) == CIB_ERR_VALIDATION);
  cib_detector_config_default(&cfg);
  cfg.enable_time = 0;
  REQUIRE(cib_detect(c, &cfg, 2, &d) == CIB_OK);
  CHECK(cib_detection_has(d, CIB_DETECTOR_HASHTAG));
  CHECK_FALSE(cib_detection_has(d, CIB_DETECTOR_TIME));
  CHECK(cib_detection_edge_count(d, CIB_DETECTOR_HASHTAG) == 1);
  CHECK(cib_detection_union_count(d) == 2);
  REQUIRE(cib_detection_write(d, dir.string().c_str()) == CIB_OK);
  CHECK(Read(dir / "edges.csv") ==
        "account_a,account_b,detector,score,evidence\nx,y,hashtag,1,a|b|c|d|e\n");
  CHECK(Read(dir / "flagged_union.txt") == "x\ny\n");
  CHECK(Read(dir / "flagged_time.txt").empty());
  CHECK(fs::exists(dir / "overlap.csv"));

  cib_detection* back = nullptr;
  REQUIRE(cib_detection_load_edges((dir / "edges.csv").string().c_str(), &back) == CIB_OK);
  CHECK(cib_detection_flagged_count(back, CIB_DETECTOR_HASHTAG) == 2);
  size_t n = 0;
  REQUIRE(cib_cluster_write(c, back, CIB_DETECTOR_HASHTAG, (dir / "clusters.csv").string().c_str(),
                            &n) == CIB_OK);
  CHECK(n == 1);
  CHECK(Read(dir / "clusters.csv") == "cluster_id,size,label,member_ids...\n1,2,a,x,y\n");
  cib_detection_free(back);
  cib_detection_free(d);
  cib_corpus_free(c);
}

TEST_CASE("stream hashtag edges") {
  auto dir = TempDir("stream");
  {
    std::ofstream out(dir / "in.jsonl");
    out << SmallCorpus();
  }
  size_t edges = 0;
  cib_parse_stats stats{};
  REQUIRE(cib_stream_hashtag_edges((dir / "in.jsonl").string().c_str(), 5, 1,
                                   (dir / "e.csv").string().c_str(), &edges, &stats) == CIB_OK);
  CHECK(edges == 1);
  CHECK(stats.records == 4);
}

TEST_CASE("confidences, manifest, report") {
  auto dir = TempDir("report");
  cib_corpus* c = Load(SmallCorpus());
  cib_detector_config cfg;
  cib_detector_config_default(&cfg);
  cib_detection* d = nullptr;
  REQUIRE(cib_detect(c, &cfg, 1, &d) == CIB_OK);
  cib_confidences* conf = nullptr;
  REQUIRE(cib_score_lexicon(c, nullptr, 1, &conf) == CIB_OK);
  CHECK(cib_confidences_row_count(conf) == 4);
  auto conf_path = (dir / "conf.csv").string();
  REQUIRE(cib_confidences_write(conf, conf_path.c_str()) == CIB_OK);
  cib_confidences* loaded = nullptr;
  REQUIRE(cib_confidences_load(conf_path.c_str(), &loaded) == CIB_OK);
  CHECK(cib_confidences_row_count(loaded) == 4);
  CHECK(cib_characteristic_count() == 24);
  CHECK(std::string(cib_characteristic_name(0)) == "vote_for");
  CHECK(cib_characteristic_name(24) == nullptr);
  REQUIRE(cib_default_lexicon_write((dir / "lex.csv").string().c_str()) == CIB_OK);
  cib_confidences* relex = nullptr;
  REQUIRE(cib_score_lexicon(c, (dir / "lex.csv").string().c_str(), 1, &relex) == CIB_OK);
  auto relex_path = (dir / "relex.csv").string();
  REQUIRE(cib_confidences_write(relex, relex_path.c_str()) == CIB_OK);
  CHECK(Read(relex_path) == Read(conf_path));

  {
    std::ofstream bad(dir / "bad.csv");
    bad << "tweet_id,vote_for\n1,0.5\n";
  }
  cib_confidences* bad = nullptr;
  CHECK(cib_confidences_load((dir / "bad.csv").string().c_str(), &bad) == CIB_ERR_VALIDATION);

  cib_manifest* m1 = nullptr;
  cib_manifest* m2 = nullptr;
  REQUIRE(cib_manifest_new("report", &m1) == CIB_OK);
  REQUIRE(cib_manifest_new("report", &m2) == CIB_OK);
  for (auto* m : {m1, m2}) {
    cib_manifest_set_seed(m, 7);
    cib_manifest_set_count(m, "records", 4);
    REQUIRE(cib_manifest_set_config(m, "k", "v") == CIB_OK);
    REQUIRE(cib_manifest_add_input(m, "confidences", conf_path.c_str()) == CIB_OK);
  }
  char d1[65], d2[65];
  REQUIRE(cib_manifest_digest(m1, d1, sizeof d1) == CIB_OK);
  REQUIRE(cib_manifest_digest(m2, d2, sizeof d2) == CIB_OK);
  CHECK(std::string(d1) == std::string(d2));
  CHECK(std::strlen(d1) == 64);
  char tiny[10];
  CHECK(cib_manifest_digest(m1, tiny, sizeof tiny) == CIB_ERR_VALIDATION);

  cib_report_options opts;
  cib_report_options_default(&opts);
  opts.seed = 7;
  opts.bootstrap_resamples = 50;
  cib_report_summary sum{};
  auto out = (dir / "bundle").string();
  REQUIRE(cib_report(c, d, loaded, &opts, m1, out.c_str(), &sum) == CIB_OK);
  CHECK(sum.accounts == 3);
  CHECK(sum.coordinated_accounts == 2);
  CHECK(sum.user_share == doctest::Approx(2.0 / 3.0));
  CHECK(sum.story_tweets == 2);
  CHECK(sum.coordinated_story_tweets == 1);
  CHECK(sum.story_share == 0.5);
  CHECK(std::isnan(sum.intra_share));
  CHECK(sum.sociolinguistics == 1);
  CHECK(fs::exists(fs::path(out) / "manifest.json"));
  CHECK(fs::exists(fs::path(out) / "summary.json"));
  CHECK(Read(fs::path(out) / "summary.json").find(d1) != std::string::npos);

  auto out2 = (dir / "bundle_noconf").string();
  REQUIRE(cib_report(c, d, nullptr, &opts, m2, out2.c_str(), &sum) == CIB_OK);
  CHECK(sum.sociolinguistics == 0);
  CHECK_FALSE(fs::exists(fs::path(out2) / "deltas.csv"));
  CHECK(Read(fs::path(out2) / "summary.json").find("socio-linguistic sections omitted") !=
        std::string::npos);

  opts.coordination_mask = 0;
  CHECK(cib_report(c, d, nullptr, &opts, m2, out2.c_str(), &sum) == CIB_ERR_VALIDATION);

  cib_manifest_free(m1);
  cib_manifest_free(m2);
  cib_confidences_free(conf);
  cib_confidences_free(loaded);
  cib_confidences_free(relex);
  cib_detection_free(d);
  cib_corpus_free(c);
}

TEST_CASE("statistics through the C API") {
  cib_stat_result r{};
  double x[] = {1, 2, 3, 4, 5}, y[] = {2, 1, 4, 3, 5};
  REQUIRE(cib_stat_spearman(x, y, 5, &r) == CIB_OK);
  CHECK(r.statistic == doctest::Approx(0.8));
  CHECK(r.n1 == 5);
  double a[] = {1, 2}, b[] = {3, 4};
  REQUIRE(cib_stat_mann_whitney(a, 2, b, 2, &r) == CIB_OK);
  CHECK(r.statistic == 0.0);
  double s[] = {0.9, 0.4, 0.6, 0.1};
  int l[] = {1, 1, 0, 0};
  REQUIRE(cib_stat_roc_auc(s, l, 4, &r) == CIB_OK);
  CHECK(r.statistic == 0.75);
  int one[] = {1, 1};
  CHECK(cib_stat_roc_auc(s, one, 2, &r) == CIB_ERR_VALIDATION);
  int ka[] = {1, 0, 1, 0}, kb[] = {1, 0, 1, 0};
  REQUIRE(cib_stat_cohens_kappa(ka, kb, 4, &r) == CIB_OK);
  CHECK(r.statistic == 1.0);
  int same[] = {1, 1};
  REQUIRE(cib_stat_cohens_kappa(same, same, 2, &r) == CIB_OK);
  CHECK(std::isnan(r.statistic));
  double se1 = 0, se2 = 0;
  double v[] = {0, 1};
  REQUIRE(cib_stat_bootstrap_se(v, 2, 1000, 3, 1, &se1) == CIB_OK);
  REQUIRE(cib_stat_bootstrap_se(v, 2, 1000, 3, 4, &se2) == CIB_OK);
  CHECK(se1 == se2);
  REQUIRE(cib_stat_reshuffle_auc(s, l, 4, 10, 0.5, 1, 1, &r) == CIB_OK);
  CHECK(r.n1 + r.n2 == 10);
}

TEST_CASE("csv column and kappa file") {
  auto dir = TempDir("csv");
  {
    std::ofstream out(dir / "t.csv");
    out << "name,score\na,0.5\nb,\nc,2\n";
    std::ofstream ann(dir / "ann.csv");
    ann << "item,annotator,characteristic,label\n"
           "1,x,vote_for,1\n1,y,vote_for,1\n2,x,vote_for,0\n2,y,vote_for,0\n";
    std::ofstream bad(dir / "bad.csv");
    bad << "name,score\na,zz\n";
  }
  double* values = nullptr;
  size_t n = 0;
  REQUIRE(cib_csv_column((dir / "t.csv").string().c_str(), "score", &values, &n) == CIB_OK);
  REQUIRE(n == 2);
  CHECK(values[0] == 0.5);
  CHECK(values[1] == 2.0);
  cib_buffer_free(values);
  CHECK(cib_csv_column((dir / "t.csv").string().c_str(), "nope", &values, &n) == CIB_ERR_VALIDATION);
  CHECK(cib_csv_column((dir / "bad.csv").string().c_str(), "score", &values, &n) ==
        CIB_ERR_VALIDATION);
  CHECK(cib_last_error_line() == 2);
  char* json = nullptr;
  REQUIRE(cib_stat_kappa_file((dir / "ann.csv").string().c_str(), &json) == CIB_OK);
  std::string text(json);
  cib_buffer_free(json);
  CHECK(text.find("\"vote_for\"") != std::string::npos);
  CHECK(text.find("\"attitude\": 1.0") != std::string::npos);
}
