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

#include "cibnet/cibnet.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "corpus.h"
#include "csv.h"
#include "detectors.h"
#include "error.h"
#include "graph.h"
#include "json.hpp"
#include "manifest.h"
#include "report.h"
#include "sociolinguistics.h"
#include "stats.h"

struct cib_corpus {
  cibnet::Corpus corpus;
};

struct cib_detection {
  cibnet::Detection detection;
};

struct cib_confidences {
  cibnet::CharacteristicTable table;
};

struct cib_manifest {
  cibnet::RunManifest manifest;
};

namespace {

using cibnet::ErrorKind;

thread_local std::string g_last_error;
thread_local std::size_t g_last_error_line = 0;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

cib_status Fail(cib_status status, const std::string& message, std::size_t line = 0) {
  g_last_error = message;
  g_last_error_line = line;
  return status;
}

template <typename Fn>
cib_status Guard(Fn&& fn) {
  g_last_error.clear();
  g_last_error_line = 0;
  try {
    fn();
    return CIB_OK;
  } catch (const cibnet::ParseError& e) {
    return Fail(CIB_ERR_VALIDATION, e.what(), e.line());
  } catch (const cibnet::Error& e) {
    return Fail(static_cast<cib_status>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(CIB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(CIB_ERR_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw cibnet::ValidationError(std::string(what));
}

void FillStats(const cibnet::ParseReport& rep, cib_parse_stats* stats) {
  if (!stats) return;
  stats->lines = rep.lines;
  stats->records = rep.records;
  stats->skipped = rep.skipped;
}

cibnet::DetectorConfig ToConfig(const cib_detector_config& c) {
  cibnet::DetectorConfig cfg;
  cfg.hashtag_k = c.hashtag_k;
  cfg.retweet_top_frac = c.retweet_top_frac;
  cfg.retweet_min = c.retweet_min;
  cfg.time_bin_minutes = c.time_bin_minutes;
  cfg.time_threshold = c.time_threshold;
  cfg.time_min = c.time_min;
  return cfg;
}

cibnet::Detector ToDetector(cib_detector d) {
  switch (d) {
    case CIB_DETECTOR_HASHTAG: return cibnet::Detector::kHashtag;
    case CIB_DETECTOR_RETWEET: return cibnet::Detector::kRetweet;
    case CIB_DETECTOR_TIME: return cibnet::Detector::kTime;
  }
  throw cibnet::ValidationError("unknown detector");
}

double OrNaN(const std::optional<double>& v) { return v ? *v : kNaN; }

void FillStat(const cibnet::stats::StatResult& r, cib_stat_result* out) {
  out->statistic = OrNaN(r.statistic);
  out->p_value = OrNaN(r.p_value);
  out->se = OrNaN(r.se);
  out->n1 = r.n.size() > 0 ? r.n[0] : 0;
  out->n2 = r.n.size() > 1 ? r.n[1] : 0;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cibnet::IoError("cannot write " + path);
  return out;
}

void CheckWritten(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw cibnet::IoError("write failure on " + path);
}

char* CopyToMalloc(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* cib_version(void) { return cibnet::kToolVersion.data(); }

const char* cib_last_error(void) { return g_last_error.c_str(); }

size_t cib_last_error_line(void) { return g_last_error_line; }

cib_status cib_corpus_load(const char* path, int strict, int threads,
                           cib_corpus** out, cib_parse_stats* stats) {
  return Guard([&] {
    Require(path && out, "cib_corpus_load: null argument");
    cibnet::ParseOptions opts;
    opts.strict = strict != 0;
    opts.threads = threads;
    cibnet::ParseReport rep;
    auto handle = std::make_unique<cib_corpus>();
    handle->corpus = cibnet::LoadCorpus(path, opts, &rep);
    FillStats(rep, stats);
    *out = handle.release();
  });
}

cib_status cib_corpus_from_buffer(const char* data, size_t len, int strict,
                                  cib_corpus** out, cib_parse_stats* stats) {
  return Guard([&] {
    Require((data || len == 0) && out, "cib_corpus_from_buffer: null argument");
    std::istringstream in(std::string(data ? data : "", len));
    cibnet::ParseOptions opts;
    opts.strict = strict != 0;
    cibnet::ParseReport rep;
    auto handle = std::make_unique<cib_corpus>();
    handle->corpus = cibnet::ParseCorpus(in, opts, &rep);
    FillStats(rep, stats);
    *out = handle.release();
  });
}

void cib_corpus_free(cib_corpus* corpus) { delete corpus; }

size_t cib_corpus_record_count(const cib_corpus* c) { return c ? c->corpus.size() : 0; }

size_t cib_corpus_account_count(const cib_corpus* c) {
  return c ? c->corpus.account_index().size() : 0;
}

size_t cib_corpus_day_count(const cib_corpus* c) {
  return c ? c->corpus.day_index().size() : 0;
}

cib_status cib_corpus_time_span(const cib_corpus* c, int64_t* first, int64_t* last) {
  return Guard([&] {
    Require(c && first && last, "cib_corpus_time_span: null argument");
    Require(!c->corpus.empty(), "corpus is empty");
    int64_t lo = c->corpus[0].timestamp, hi = lo;
    for (const auto& r : c->corpus.records()) {
      lo = std::min(lo, r.timestamp);
      hi = std::max(hi, r.timestamp);
    }
    *first = lo;
    *last = hi;
  });
}

cib_status cib_corpus_write(const cib_corpus* c, const char* path) {
  return Guard([&] {
    Require(c && path, "cib_corpus_write: null argument");
    auto out = OpenOut(path);
    cibnet::WriteCorpus(c->corpus, out);
    CheckWritten(out, path);
  });
}

cib_status cib_corpus_write_daily_volume(const cib_corpus* c, const char* path) {
  return Guard([&] {
    Require(c && path, "cib_corpus_write_daily_volume: null argument");
    auto out = OpenOut(path);
    cibnet::WriteDailyVolumeCsv(cibnet::ComputeDailyVolume(c->corpus), out);
    CheckWritten(out, path);
  });
}

cib_status cib_stream_hashtag_edges(const char* input_path, int hashtag_k, int strict,
                                    const char* edges_path, size_t* edge_count,
                                    cib_parse_stats* stats) {
  return Guard([&] {
    Require(input_path && edges_path, "cib_stream_hashtag_edges: null argument");
    std::ifstream in(input_path);
    if (!in) throw cibnet::IoError(std::string("cannot open ") + input_path);
    cibnet::HashtagIndex index(hashtag_k);
    cibnet::ParseOptions opts;
    opts.strict = strict != 0;
    cibnet::ParseReport rep;
    cibnet::ForEachRecord(in, opts, [&](cibnet::TweetRecord&& r) { index.Add(r); }, &rep);
    auto edges = index.Edges();
    auto out = OpenOut(edges_path);
    cibnet::WriteEdgesCsv(edges, out);
    CheckWritten(out, edges_path);
    if (edge_count) *edge_count = edges.size();
    FillStats(rep, stats);
  });
}

cib_status cib_normalize_text(const char* text, unsigned flags, char* buf, size_t cap,
                              size_t* needed) {
  return Guard([&] {
    Require(text != nullptr, "cib_normalize_text: null text");
    auto s = cibnet::NormalizeText(text, cibnet::NormalizeOptions::FromFlags(flags));
    if (needed) *needed = s.size();
    if (buf && cap > 0) {
      std::size_t n = std::min(cap - 1, s.size());
      std::memcpy(buf, s.data(), n);
      buf[n] = '\0';
    }
  });
}

void cib_detector_config_default(cib_detector_config* cfg) {
  if (!cfg) return;
  cibnet::DetectorConfig d;
  cfg->hashtag_k = d.hashtag_k;
  cfg->retweet_top_frac = d.retweet_top_frac;
  cfg->retweet_min = d.retweet_min;
  cfg->time_bin_minutes = d.time_bin_minutes;
  cfg->time_threshold = d.time_threshold;
  cfg->time_min = d.time_min;
  cfg->enable_hashtag = 1;
  cfg->enable_retweet = 1;
  cfg->enable_time = 1;
}

cib_status cib_detector_config_validate(const cib_detector_config* cfg) {
  return Guard([&] {
    Require(cfg != nullptr, "cib_detector_config_validate: null config");
    ToConfig(*cfg).Validate();
  });
}

cib_status cib_detect(const cib_corpus* c, const cib_detector_config* cfg, int threads,
                      cib_detection** out) {
  return Guard([&] {
    Require(c && cfg && out, "cib_detect: null argument");
    cibnet::DetectorSelection sel{cfg->enable_hashtag != 0, cfg->enable_retweet != 0,
                                  cfg->enable_time != 0};
    auto handle = std::make_unique<cib_detection>();
    handle->detection = cibnet::RunDetectors(c->corpus, ToConfig(*cfg), sel, threads);
    *out = handle.release();
  });
}

cib_status cib_detection_load_edges(const char* path, cib_detection** out) {
  return Guard([&] {
    Require(path && out, "cib_detection_load_edges: null argument");
    std::ifstream in(path);
    if (!in) throw cibnet::IoError(std::string("cannot open ") + path);
    auto handle = std::make_unique<cib_detection>();
    handle->detection = cibnet::DetectionFromEdges(cibnet::ReadEdgesCsv(in));
    *out = handle.release();
  });
}

void cib_detection_free(cib_detection* d) { delete d; }

int cib_detection_has(const cib_detection* d, cib_detector which) {
  if (!d || which < CIB_DETECTOR_HASHTAG || which > CIB_DETECTOR_TIME) return 0;
  return d->detection.Find(ToDetector(which)) != nullptr;
}

size_t cib_detection_edge_count(const cib_detection* d, cib_detector which) {
  if (!cib_detection_has(d, which)) return 0;
  return d->detection.Find(ToDetector(which))->edges.size();
}

size_t cib_detection_flagged_count(const cib_detection* d, cib_detector which) {
  if (!cib_detection_has(d, which)) return 0;
  return d->detection.Find(ToDetector(which))->flagged.size();
}

size_t cib_detection_union_count(const cib_detection* d) {
  return d ? d->detection.UnionFlagged().size() : 0;
}

cib_status cib_detection_write(const cib_detection* d, const char* out_dir) {
  return Guard([&] {
    Require(d && out_dir, "cib_detection_write: null argument");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw cibnet::IoError(std::string("cannot create directory ") + out_dir);
    auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

    auto edges_path = path("edges.csv");
    auto edges_out = OpenOut(edges_path);
    cibnet::WriteEdgesCsv(d->detection.AllEdges(), edges_out);
    CheckWritten(edges_out, edges_path);

    nlohmann::json summary = nlohmann::json::object();
    for (std::size_t k = 0; k < cibnet::kNumDetectors; ++k) {
      auto det = static_cast<cibnet::Detector>(k);
      std::string name(cibnet::DetectorName(det));
      const auto* r = d->detection.Find(det);
      auto p = path("flagged_" + name + ".txt");
      auto out = OpenOut(p);
      if (r) cibnet::WriteAccountList(r->flagged, out);
      CheckWritten(out, p);
      if (!r) {
        summary[name] = nullptr;
        continue;
      }
      summary[name] = {{"edges", r->edges.size()},
                       {"flagged", r->flagged.size()},
                       {"eligible_accounts", r->eligible_accounts},
                       {"candidate_pairs", r->candidate_pairs},
                       {"cutoff", r->cutoff ? nlohmann::json(*r->cutoff)
                                            : nlohmann::json(nullptr)}};
    }
    summary["retweet_quantile_base"] = "candidate pairs (nonzero similarity)";
    auto union_path = path("flagged_union.txt");
    auto uout = OpenOut(union_path);
    cibnet::WriteAccountList(d->detection.UnionFlagged(), uout);
    CheckWritten(uout, union_path);

    auto overlap_path = path("overlap.csv");
    auto oout = OpenOut(overlap_path);
    oout << "left,right,left_count,right_count,both\n";
    for (const auto& row : cibnet::FlaggedOverlaps(d->detection))
      oout << row.left << ',' << row.right << ',' << row.left_count << ','
           << row.right_count << ',' << row.both << '\n';
    CheckWritten(oout, overlap_path);

    auto summary_path = path("detection_summary.json");
    auto sout = OpenOut(summary_path);
    sout << summary.dump(2) << '\n';
    CheckWritten(sout, summary_path);
  });
}

cib_status cib_cluster_write(const cib_corpus* c, const cib_detection* d,
                             cib_detector which, const char* path,
                             size_t* cluster_count) {
  return Guard([&] {
    Require(c && d && path, "cib_cluster_write: null argument");
    std::vector<cibnet::Cluster> clusters;
    if (const auto* r = d->detection.Find(ToDetector(which))) {
      clusters = cibnet::ConnectedComponents(cibnet::CoordinationGraph(r->edges));
      cibnet::LabelClusters(clusters, c->corpus);
    }
    auto out = OpenOut(path);
    cibnet::WriteClustersCsv(clusters, out);
    CheckWritten(out, path);
    if (cluster_count) *cluster_count = clusters.size();
  });
}

size_t cib_characteristic_count(void) { return cibnet::kNumCharacteristics; }

const char* cib_characteristic_name(size_t index) {
  if (index >= cibnet::kNumCharacteristics) return nullptr;
  return cibnet::Characteristics()[index].name.data();
}

cib_status cib_score_lexicon(const cib_corpus* c, const char* lexicon_path, int threads,
                             cib_confidences** out) {
  return Guard([&] {
    Require(c && out, "cib_score_lexicon: null argument");
    auto lexicon = lexicon_path ? cibnet::Lexicon::FromFile(lexicon_path)
                                : cibnet::Lexicon::Default();
    auto handle = std::make_unique<cib_confidences>();
    handle->table = cibnet::ScoreCorpus(c->corpus, lexicon, threads);
    *out = handle.release();
  });
}

cib_status cib_confidences_load(const char* path, cib_confidences** out) {
  return Guard([&] {
    Require(path && out, "cib_confidences_load: null argument");
    auto handle = std::make_unique<cib_confidences>();
    handle->table = cibnet::LoadConfidencesFile(path);
    *out = handle.release();
  });
}

cib_status cib_confidences_write(const cib_confidences* c, const char* path) {
  return Guard([&] {
    Require(c && path, "cib_confidences_write: null argument");
    auto out = OpenOut(path);
    cibnet::WriteConfidencesCsv(c->table, out);
    CheckWritten(out, path);
  });
}

size_t cib_confidences_row_count(const cib_confidences* c) {
  return c ? c->table.size() : 0;
}

size_t cib_confidences_missing_values(const cib_confidences* c) {
  return c ? c->table.missing_values() : 0;
}

void cib_confidences_free(cib_confidences* c) { delete c; }

cib_status cib_default_lexicon_write(const char* path) {
  return Guard([&] {
    Require(path != nullptr, "cib_default_lexicon_write: null path");
    auto lex = cibnet::Lexicon::Default();
    auto out = OpenOut(path);
    out << "characteristic,phrase,weight,language\n";
    const auto& reg = cibnet::Characteristics();
    for (const auto& e : lex.entries()) {
      std::string phrase;
      for (const auto& t : e.tokens) phrase += (phrase.empty() ? "" : " ") + t;
      out << reg[e.characteristic].name << ',' << cibnet::csv::Escape(phrase) << ','
          << cibnet::csv::FormatNumber(e.weight) << ',' << e.language << '\n';
    }
    CheckWritten(out, path);
  });
}

cib_status cib_manifest_new(const char* command, cib_manifest** out) {
  return Guard([&] {
    Require(command && out, "cib_manifest_new: null argument");
    *out = new cib_manifest{cibnet::RunManifest(command)};
  });
}

void cib_manifest_free(cib_manifest* m) { delete m; }

cib_status cib_manifest_set_config(cib_manifest* m, const char* key, const char* value) {
  return Guard([&] {
    Require(m && key && value, "cib_manifest_set_config: null argument");
    m->manifest.SetConfig(key, value);
  });
}

cib_status cib_manifest_add_input(cib_manifest* m, const char* role, const char* path) {
  return Guard([&] {
    Require(m && role && path, "cib_manifest_add_input: null argument");
    m->manifest.AddInput(role, path);
  });
}

void cib_manifest_set_seed(cib_manifest* m, uint64_t seed) {
  if (m) m->manifest.SetSeed(seed);
}

void cib_manifest_set_count(cib_manifest* m, const char* stage, uint64_t n) {
  if (m && stage) m->manifest.SetCount(stage, n);
}

void cib_manifest_set_time_span(cib_manifest* m, int64_t first, int64_t last) {
  if (m) m->manifest.SetTimeSpan(first, last);
}

cib_status cib_manifest_add_artifact(cib_manifest* m, const char* path) {
  return Guard([&] {
    Require(m && path, "cib_manifest_add_artifact: null argument");
    m->manifest.AddArtifact(path);
  });
}

cib_status cib_manifest_digest(const cib_manifest* m, char* buf, size_t cap) {
  return Guard([&] {
    Require(m && buf, "cib_manifest_digest: null argument");
    auto d = m->manifest.Digest();
    Require(cap > d.size(), "cib_manifest_digest: buffer too small");
    std::memcpy(buf, d.c_str(), d.size() + 1);
  });
}

cib_status cib_manifest_write(const cib_manifest* m, const char* path) {
  return Guard([&] {
    Require(m && path, "cib_manifest_write: null argument");
    m->manifest.Write(path);
  });
}

void cib_report_options_default(cib_report_options* opts) {
  if (!opts) return;
  cibnet::ReportOptions d;
  opts->coordination_mask = 1u << CIB_DETECTOR_HASHTAG;
  opts->cluster_detector = CIB_DETECTOR_HASHTAG;
  opts->story_hashtags = nullptr;
  opts->story_hashtag_count = 0;
  opts->duplicate_scope_corpus = 0;
  opts->duplicate_normalization = 0;
  opts->binarize_threshold = d.binarize_threshold;
  opts->delta_clusters = d.delta_clusters;
  opts->bootstrap_resamples = d.bootstrap_resamples;
  opts->seed = d.seed;
  opts->threads = d.threads;
}

cib_status cib_report(const cib_corpus* c, const cib_detection* d,
                      const cib_confidences* confidences, const cib_report_options* opts,
                      cib_manifest* m, const char* out_dir, cib_report_summary* summary) {
  return Guard([&] {
    Require(c && d && opts && m && out_dir, "cib_report: null argument");
    cibnet::ReportOptions o;
    o.coordination.clear();
    for (int k = 0; k < 3; ++k)
      if (opts->coordination_mask & (1u << k))
        o.coordination.push_back(static_cast<cibnet::Detector>(k));
    Require(!o.coordination.empty(), "cib_report: empty coordination mask");
    o.cluster_detector = ToDetector(opts->cluster_detector);
    if (opts->story_hashtags && opts->story_hashtag_count > 0) {
      o.story_hashtags.clear();
      for (size_t i = 0; i < opts->story_hashtag_count; ++i) {
        Require(opts->story_hashtags[i] != nullptr, "cib_report: null story hashtag");
        o.story_hashtags.emplace_back(opts->story_hashtags[i]);
      }
    }
    o.duplicate_scope = opts->duplicate_scope_corpus ? cibnet::DuplicateScope::kCorpus
                                                     : cibnet::DuplicateScope::kAccount;
    o.duplicate_normalization =
        cibnet::NormalizeOptions::FromFlags(opts->duplicate_normalization);
    Require(opts->binarize_threshold > 0.0 && opts->binarize_threshold < 1.0,
            "binarize threshold must be in (0, 1)");
    o.binarize_threshold = opts->binarize_threshold;
    o.delta_clusters = opts->delta_clusters;
    o.bootstrap_resamples = opts->bootstrap_resamples;
    o.seed = opts->seed;
    o.threads = opts->threads;
    m->manifest.SetSeed(opts->seed);
    auto s = cibnet::WriteReport(c->corpus, d->detection,
                                 confidences ? &confidences->table : nullptr, o, out_dir,
                                 m->manifest);
    if (summary) {
      summary->accounts = s.accounts;
      summary->coordinated_accounts = s.coordinated_accounts;
      summary->user_share = s.user_share;
      summary->story_tweets = s.story_tweets;
      summary->coordinated_story_tweets = s.coordinated_story_tweets;
      summary->story_share = OrNaN(s.story_share);
      summary->intra_share = OrNaN(s.interactions.intra_share);
      summary->clusters = s.clusters;
      summary->sociolinguistics = s.sociolinguistics ? 1 : 0;
      summary->vote_for_rate_coordinated = OrNaN(s.vote_for_rate_coordinated);
      summary->vote_for_rate_baseline = OrNaN(s.vote_for_rate_baseline);
    }
  });
}

cib_status cib_stat_spearman(const double* x, const double* y, size_t n,
                             cib_stat_result* out) {
  return Guard([&] {
    Require((x && y) || n == 0, "cib_stat_spearman: null input");
    Require(out != nullptr, "cib_stat_spearman: null output");
    FillStat(cibnet::stats::Spearman({x, n}, {y, n}), out);
  });
}

cib_status cib_stat_mann_whitney(const double* a, size_t na, const double* b, size_t nb,
                                 cib_stat_result* out) {
  return Guard([&] {
    Require((a || na == 0) && (b || nb == 0) && out, "cib_stat_mann_whitney: null argument");
    FillStat(cibnet::stats::MannWhitneyU({a, na}, {b, nb}), out);
  });
}

cib_status cib_stat_roc_auc(const double* scores, const int* labels, size_t n,
                            cib_stat_result* out) {
  return Guard([&] {
    Require((scores && labels) || n == 0, "cib_stat_roc_auc: null input");
    Require(out != nullptr, "cib_stat_roc_auc: null output");
    FillStat(cibnet::stats::RocAuc({scores, n}, {labels, n}), out);
  });
}

cib_status cib_stat_cohens_kappa(const int* a, const int* b, size_t n,
                                 cib_stat_result* out) {
  return Guard([&] {
    Require((a && b) || n == 0, "cib_stat_cohens_kappa: null input");
    Require(out != nullptr, "cib_stat_cohens_kappa: null output");
    FillStat(cibnet::stats::CohensKappa({a, n}, {b, n}), out);
  });
}

cib_status cib_stat_bootstrap_se(const double* values, size_t n, int resamples,
                                 uint64_t seed, int threads, double* se) {
  return Guard([&] {
    Require((values || n == 0) && se, "cib_stat_bootstrap_se: null argument");
    *se = cibnet::stats::BootstrapSe({values, n}, resamples, seed, threads);
  });
}

cib_status cib_stat_reshuffle_auc(const double* scores, const int* labels, size_t n,
                                  int splits, double train_frac, uint64_t seed,
                                  int threads, cib_stat_result* out) {
  return Guard([&] {
    Require(((scores && labels) || n == 0) && out, "cib_stat_reshuffle_auc: null argument");
    auto r = cibnet::stats::ReshuffleEval({scores, n}, {labels, n}, splits, train_frac,
                                          seed, threads);
    out->statistic = r.mean_auc;
    out->p_value = kNaN;
    out->se = r.se;
    out->n1 = r.aucs.size();
    out->n2 = r.splits_skipped;
  });
}

cib_status cib_csv_column(const char* path, const char* column, double** values,
                          size_t* n) {
  return Guard([&] {
    Require(path && column && values && n, "cib_csv_column: null argument");
    std::ifstream in(path);
    if (!in) throw cibnet::IoError(std::string("cannot open ") + path);
    std::vector<std::string> row;
    Require(cibnet::csv::ReadRow(in, row), "csv file is empty");
    auto it = std::find(row.begin(), row.end(), std::string(column));
    if (it == row.end())
      throw cibnet::ValidationError(std::string("no column '") + column + "' in " + path);
    auto col = static_cast<std::size_t>(it - row.begin());
    std::vector<double> out;
    std::size_t line = 1;
    while (cibnet::csv::ReadRow(in, row)) {
      ++line;
      if (row.size() == 1 && row[0].empty()) continue;
      if (col >= row.size() || row[col].empty()) continue;
      auto v = cibnet::csv::ParseNumber(row[col]);
      if (!v) throw cibnet::ParseError(line, "not a number: '" + row[col] + "'");
      out.push_back(*v);
    }
    auto* buf = static_cast<double*>(std::malloc(sizeof(double) * std::max<std::size_t>(1, out.size())));
    if (!buf) throw std::bad_alloc();
    std::copy(out.begin(), out.end(), buf);
    *values = buf;
    *n = out.size();
  });
}

cib_status cib_stat_kappa_file(const char* path, char** json) {
  return Guard([&] {
    Require(path && json, "cib_stat_kappa_file: null argument");
    std::ifstream in(path);
    if (!in) throw cibnet::IoError(std::string("cannot open ") + path);
    std::vector<std::string> row;
    Require(cibnet::csv::ReadRow(in, row), "annotation file is empty");
    const std::vector<std::string> header = {"item", "annotator", "characteristic", "label"};
    Require(row == header, "annotation header must be item,annotator,characteristic,label");
    std::vector<cibnet::stats::Annotation> annotations;
    std::size_t line = 1;
    while (cibnet::csv::ReadRow(in, row)) {
      ++line;
      if (row.size() == 1 && row[0].empty()) continue;
      if (row.size() != 4) throw cibnet::ParseError(line, "expected 4 columns");
      auto c = cibnet::CharacteristicIndex(row[2]);
      if (!c) throw cibnet::ParseError(line, "unknown characteristic '" + row[2] + "'");
      if (row[3] != "0" && row[3] != "1")
        throw cibnet::ParseError(line, "label must be 0 or 1");
      annotations.push_back({row[0], row[1], *c, row[3] == "1" ? 1 : 0});
    }
    auto summary = cibnet::stats::KappaByCharacteristic(annotations);
    nlohmann::json j;
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [name, r] : summary.per_characteristic)
      per[name] = {{"kappa", r.statistic ? nlohmann::json(*r.statistic) : nlohmann::json(nullptr)},
                   {"pairs", r.n.empty() ? 0 : r.n[0]}};
    nlohmann::json groups = nlohmann::json::object();
    for (const auto& [g, v] : summary.per_group)
      groups[g] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    j["per_characteristic"] = per;
    j["per_group"] = groups;
    *json = CopyToMalloc(j.dump(2) + "\n");
  });
}

void cib_buffer_free(void* p) { std::free(p); }

}  // extern "C"
