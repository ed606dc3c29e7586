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

/*
 * cibnet C API.
 *
 * Coordinated-account detection over a tweet corpus, clustering, and the
 * statistical report bundle. All objects are opaque handles owned by the
 * caller and released with the matching *_free function. Every fallible call
 * returns a cib_status; on failure, cib_last_error() describes the problem
 * for the calling thread until its next API call.
 */
#ifndef CIBNET_CIBNET_H_
#define CIBNET_CIBNET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CIBNET_BUILDING_LIBRARY)
#    define CIB_API __declspec(dllexport)
#  else
#    define CIB_API __declspec(dllimport)
#  endif
#else
#  define CIB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as process exit codes. */
typedef enum cib_status {
  CIB_OK = 0,
  CIB_ERR_VALIDATION = 1,
  CIB_ERR_IO = 2,
  CIB_ERR_INTERNAL = 3
} cib_status;

typedef struct cib_corpus cib_corpus;
typedef struct cib_detection cib_detection;
typedef struct cib_confidences cib_confidences;
typedef struct cib_manifest cib_manifest;

CIB_API const char* cib_version(void);
CIB_API const char* cib_last_error(void);
/* 1-based input line of the last parse error, 0 if not line-specific. */
CIB_API size_t cib_last_error_line(void);

/* ---- corpus ---------------------------------------------------------- */

typedef struct cib_parse_stats {
  size_t lines;
  size_t records;
  size_t skipped;
} cib_parse_stats;

CIB_API cib_status cib_corpus_load(const char* path, int strict, int threads,
                                   cib_corpus** out, cib_parse_stats* stats);
CIB_API cib_status cib_corpus_from_buffer(const char* data, size_t len,
                                          int strict, cib_corpus** out,
                                          cib_parse_stats* stats);
CIB_API void cib_corpus_free(cib_corpus* corpus);

CIB_API size_t cib_corpus_record_count(const cib_corpus* corpus);
CIB_API size_t cib_corpus_account_count(const cib_corpus* corpus);
CIB_API size_t cib_corpus_day_count(const cib_corpus* corpus);
/* Earliest and latest timestamps (UTC seconds); CIB_ERR_VALIDATION if empty. */
CIB_API cib_status cib_corpus_time_span(const cib_corpus* corpus,
                                        int64_t* first, int64_t* last);

/* Canonical JSONL, one record per line, in input order. */
CIB_API cib_status cib_corpus_write(const cib_corpus* corpus, const char* path);
/* CSV day,original,reply,retweet. */
CIB_API cib_status cib_corpus_write_daily_volume(const cib_corpus* corpus,
                                                 const char* path);

/* Streams a JSONL file through the hashtag detector without keeping the
 * records; writes the hashtag edge CSV. */
CIB_API cib_status cib_stream_hashtag_edges(const char* input_path, int hashtag_k,
                                            int strict, const char* edges_path,
                                            size_t* edge_count,
                                            cib_parse_stats* stats);

/* Normalization flags, applied in this order. */
enum {
  CIB_NORM_STRIP_URLS = 1,
  CIB_NORM_REPLACE_MENTIONS = 2,
  CIB_NORM_STRIP_HASHTAG_MARKS = 4,
  CIB_NORM_LOWERCASE = 8,
  CIB_NORM_STRIP_PUNCT_NONASCII = 16,
  CIB_NORM_ALL = 31
};

/* Writes at most cap bytes including the terminator; *needed receives the
 * full length without the terminator. */
CIB_API cib_status cib_normalize_text(const char* text, unsigned flags,
                                      char* buf, size_t cap, size_t* needed);

/* ---- detection ------------------------------------------------------- */

typedef enum cib_detector {
  CIB_DETECTOR_HASHTAG = 0,
  CIB_DETECTOR_RETWEET = 1,
  CIB_DETECTOR_TIME = 2
} cib_detector;

typedef struct cib_detector_config {
  int hashtag_k;
  double retweet_top_frac;
  int retweet_min;
  int time_bin_minutes;
  double time_threshold;
  int time_min;
  int enable_hashtag;
  int enable_retweet;
  int enable_time;
} cib_detector_config;

CIB_API void cib_detector_config_default(cib_detector_config* cfg);
CIB_API cib_status cib_detector_config_validate(const cib_detector_config* cfg);

CIB_API cib_status cib_detect(const cib_corpus* corpus,
                              const cib_detector_config* cfg, int threads,
                              cib_detection** out);
/* Rebuilds a detection from an edge CSV written by cib_detection_write. */
CIB_API cib_status cib_detection_load_edges(const char* edges_path,
                                            cib_detection** out);
CIB_API void cib_detection_free(cib_detection* detection);

/* Returns 0 for detectors that did not run. */
CIB_API int cib_detection_has(const cib_detection* d, cib_detector which);
CIB_API size_t cib_detection_edge_count(const cib_detection* d, cib_detector which);
CIB_API size_t cib_detection_flagged_count(const cib_detection* d, cib_detector which);
CIB_API size_t cib_detection_union_count(const cib_detection* d);

/* Writes edges.csv, flagged_<detector>.txt, flagged_union.txt and
 * overlap.csv into out_dir. */
CIB_API cib_status cib_detection_write(const cib_detection* d, const char* out_dir);

/* Cluster table (cluster_id,size,label,member_ids...) over one detector's
 * edges. *cluster_count may be NULL. */
CIB_API cib_status cib_cluster_write(const cib_corpus* corpus,
                                     const cib_detection* d, cib_detector which,
                                     const char* path, size_t* cluster_count);

/* ---- socio-linguistic confidences ------------------------------------ */

CIB_API size_t cib_characteristic_count(void);
CIB_API const char* cib_characteristic_name(size_t index);

/* lexicon_path NULL selects the built-in lexicon. */
CIB_API cib_status cib_score_lexicon(const cib_corpus* corpus,
                                     const char* lexicon_path, int threads,
                                     cib_confidences** out);
CIB_API cib_status cib_confidences_load(const char* path, cib_confidences** out);
CIB_API cib_status cib_confidences_write(const cib_confidences* c, const char* path);
CIB_API size_t cib_confidences_row_count(const cib_confidences* c);
CIB_API size_t cib_confidences_missing_values(const cib_confidences* c);
CIB_API void cib_confidences_free(cib_confidences* c);
CIB_API cib_status cib_default_lexicon_write(const char* path);

/* ---- manifest -------------------------------------------------------- */

CIB_API cib_status cib_manifest_new(const char* command, cib_manifest** out);
CIB_API void cib_manifest_free(cib_manifest* m);
CIB_API cib_status cib_manifest_set_config(cib_manifest* m, const char* key,
                                           const char* value);
CIB_API cib_status cib_manifest_add_input(cib_manifest* m, const char* role,
                                          const char* path);
CIB_API void cib_manifest_set_seed(cib_manifest* m, uint64_t seed);
CIB_API void cib_manifest_set_count(cib_manifest* m, const char* stage, uint64_t n);
CIB_API void cib_manifest_set_time_span(cib_manifest* m, int64_t first, int64_t last);
CIB_API cib_status cib_manifest_add_artifact(cib_manifest* m, const char* path);
/* Copies the 64-char hex digest plus terminator into buf (cap >= 65). */
CIB_API cib_status cib_manifest_digest(const cib_manifest* m, char* buf, size_t cap);
CIB_API cib_status cib_manifest_write(const cib_manifest* m, const char* path);

/* ---- report ---------------------------------------------------------- */

typedef struct cib_report_options {
  /* Bit mask of (1 << cib_detector) whose flagged accounts are coordinated. */
  unsigned coordination_mask;
  cib_detector cluster_detector;
  /* Story hashtags; NULL/0 keeps the default #MacronLeaks family. */
  const char* const* story_hashtags;
  size_t story_hashtag_count;
  int duplicate_scope_corpus;  /* 0: per account, 1: corpus-wide */
  unsigned duplicate_normalization;  /* CIB_NORM_* flags */
  double binarize_threshold;
  size_t delta_clusters;
  int bootstrap_resamples;
  uint64_t seed;
  int threads;
} cib_report_options;

CIB_API void cib_report_options_default(cib_report_options* opts);

typedef struct cib_report_summary {
  size_t accounts;
  size_t coordinated_accounts;
  double user_share;
  size_t story_tweets;
  size_t coordinated_story_tweets;
  double story_share;     /* NaN when undefined */
  double intra_share;     /* NaN when undefined */
  size_t clusters;
  int sociolinguistics;   /* 1 if the confidence sections were produced */
  double vote_for_rate_coordinated;  /* NaN when undefined */
  double vote_for_rate_baseline;     /* NaN when undefined */
} cib_report_summary;

/* confidences may be NULL. Writes manifest.json into out_dir last.
 * summary may be NULL. */
CIB_API cib_status cib_report(const cib_corpus* corpus, const cib_detection* d,
                              const cib_confidences* confidences,
                              const cib_report_options* opts, cib_manifest* m,
                              const char* out_dir, cib_report_summary* summary);

/* ---- statistics ------------------------------------------------------ */

typedef struct cib_stat_result {
  double statistic;  /* NaN when undefined */
  double p_value;    /* NaN when not computed */
  double se;         /* NaN when not computed */
  size_t n1;
  size_t n2;
} cib_stat_result;

CIB_API cib_status cib_stat_spearman(const double* x, const double* y, size_t n,
                                     cib_stat_result* out);
CIB_API cib_status cib_stat_mann_whitney(const double* a, size_t na,
                                         const double* b, size_t nb,
                                         cib_stat_result* out);
CIB_API cib_status cib_stat_roc_auc(const double* scores, const int* labels,
                                    size_t n, cib_stat_result* out);
CIB_API cib_status cib_stat_cohens_kappa(const int* a, const int* b, size_t n,
                                         cib_stat_result* out);
CIB_API cib_status cib_stat_bootstrap_se(const double* values, size_t n,
                                         int resamples, uint64_t seed,
                                         int threads, double* se);
/* statistic = mean AUC, se = spread across splits, n1 = splits used,
 * n2 = splits skipped. */
CIB_API cib_status cib_stat_reshuffle_auc(const double* scores, const int* labels,
                                          size_t n, int splits, double train_frac,
                                          uint64_t seed, int threads,
                                          cib_stat_result* out);

/* Reads one numeric column of a headed CSV file. Blank cells are skipped;
 * other non-numeric cells are errors. Release with cib_buffer_free. */
CIB_API cib_status cib_csv_column(const char* path, const char* column,
                                  double** values, size_t* n);
/* Annotation CSV item,annotator,characteristic,label -> JSON text with
 * per-characteristic and per-group mean pairwise kappa. Release with
 * cib_buffer_free. */
CIB_API cib_status cib_stat_kappa_file(const char* path, char** json);
CIB_API void cib_buffer_free(void* p);

#ifdef __cplusplus
}
#endif

#endif /* CIBNET_CIBNET_H_ */
