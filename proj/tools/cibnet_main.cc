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

// cibnet command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cibnet/cibnet.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliError {
  cib_status status;
  std::string message;
  std::size_t line = 0;
};

void Check(cib_status s) {
  if (s != CIB_OK) throw CliError{s, cib_last_error(), cib_last_error_line()};
}

[[noreturn]] void Invalid(const std::string& message) {
  throw CliError{CIB_ERR_VALIDATION, message};
}

void RequireFile(const std::string& role, const std::string& path) {
  if (path.empty()) Invalid("missing input: " + role);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec))
    throw CliError{CIB_ERR_IO, "missing input: " + role + " '" + path + "' not found"};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using CorpusPtr = std::unique_ptr<cib_corpus, Deleter<cib_corpus, cib_corpus_free>>;
using DetectionPtr =
    std::unique_ptr<cib_detection, Deleter<cib_detection, cib_detection_free>>;
using ConfidencesPtr =
    std::unique_ptr<cib_confidences, Deleter<cib_confidences, cib_confidences_free>>;
using ManifestPtr = std::unique_ptr<cib_manifest, Deleter<cib_manifest, cib_manifest_free>>;

std::string Fmt(double v) {
  if (std::isnan(v)) return "null";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  return out;
}

cib_detector ParseDetectorName(const std::string& name) {
  if (name == "hashtag") return CIB_DETECTOR_HASHTAG;
  if (name == "retweet") return CIB_DETECTOR_RETWEET;
  if (name == "time") return CIB_DETECTOR_TIME;
  Invalid("unknown detector '" + name + "'");
}

unsigned ParseNormalization(const std::string& spec) {
  static const std::map<std::string, unsigned> kFlags = {
      {"urls", CIB_NORM_STRIP_URLS},
      {"mentions", CIB_NORM_REPLACE_MENTIONS},
      {"hashtags", CIB_NORM_STRIP_HASHTAG_MARKS},
      {"lowercase", CIB_NORM_LOWERCASE},
      {"punct", CIB_NORM_STRIP_PUNCT_NONASCII},
      {"all", CIB_NORM_ALL},
      {"none", 0}};
  unsigned flags = 0;
  for (const auto& item : SplitList(spec)) {
    auto it = kFlags.find(item);
    if (it == kFlags.end()) Invalid("unknown normalization step '" + item + "'");
    flags |= it->second;
  }
  return flags;
}

// Key-value settings from --config. Command-line flags take precedence.
class Settings {
 public:
  void Load(const std::string& path) {
    RequireFile("config", path);
    std::vector<CLI::ConfigItem> items;
    try {
      items = CLI::ConfigTOML().from_file(path);
    } catch (const CLI::Error& e) {
      Invalid("config " + path + ": " + e.what());
    }
    for (const auto& item : items) {
      if (item.inputs.empty() || item.name == "++" || item.name == "--") continue;
      std::string key;
      for (const auto& p : item.parents) key += p + ".";
      key += item.name;
      std::string value;
      for (const auto& in : item.inputs) value += (value.empty() ? "" : ",") + in;
      values_[key] = value;
    }
  }

  // Marks every key that a command consumes so leftovers can be reported.
  std::optional<std::string> Take(const std::string& key) {
    used_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  void CheckAllUsed() const {
    for (const auto& [k, v] : values_)
      if (!used_.count(k)) Invalid("unknown config key '" + k + "'");
  }

  template <typename T>
  void Apply(const std::string& key, const CLI::Option* flag, T& target) {
    auto v = Take(key);
    if (!v || (flag && flag->count() > 0)) return;
    std::istringstream in(*v);
    T parsed{};
    in >> parsed;
    if (!in || !(in >> std::ws).eof()) Invalid("config key '" + key + "': bad value '" + *v + "'");
    target = parsed;
  }

  void ApplyString(const std::string& key, const CLI::Option* flag, std::string& target) {
    auto v = Take(key);
    if (v && !(flag && flag->count() > 0)) target = *v;
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

struct Globals {
  std::string config;
  std::uint64_t seed = 0;
  int threads = 0;
  bool strict = false;
  bool json_errors = false;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* strict_opt = nullptr;
  Settings settings;

  void Resolve() {
    if (!config.empty()) settings.Load(config);
    settings.Apply("seed", seed_opt, seed);
    settings.Apply("threads", threads_opt, threads);
    settings.Apply("strict", strict_opt, strict);
    if (threads < 0) Invalid("--threads must be >= 0");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  }
};

ManifestPtr NewManifest(const std::string& command, const Globals& g) {
  cib_manifest* m = nullptr;
  Check(cib_manifest_new(command.c_str(), &m));
  ManifestPtr ptr(m);
  Check(cib_manifest_set_config(m, "strict", g.strict ? "true" : "false"));
  return ptr;
}

CorpusPtr LoadCorpus(const std::string& path, const Globals& g, cib_manifest* m) {
  RequireFile("corpus cache", path);
  cib_corpus* c = nullptr;
  cib_parse_stats stats{};
  Check(cib_corpus_load(path.c_str(), g.strict, g.threads, &c, &stats));
  CorpusPtr ptr(c);
  if (stats.skipped > 0)
    std::cerr << "cibnet: skipped " << stats.skipped << " malformed line(s) in " << path
              << "\n";
  if (m) {
    Check(cib_manifest_add_input(m, "corpus", path.c_str()));
    cib_manifest_set_count(m, "records", stats.records);
    cib_manifest_set_count(m, "skipped_lines", stats.skipped);
    int64_t first = 0, last = 0;
    if (cib_corpus_record_count(c) > 0) {
      Check(cib_corpus_time_span(c, &first, &last));
      cib_manifest_set_time_span(m, first, last);
    }
  }
  return ptr;
}

// ---- ingest ---------------------------------------------------------------

struct IngestArgs {
  std::string input;
  std::string cache = "cache.jsonl";
  std::string manifest;
  std::string daily_volume;
};

void RunIngest(const IngestArgs& a, Globals& g) {
  g.settings.CheckAllUsed();
  auto m = NewManifest("ingest", g);
  cib_parse_stats stats{};
  RequireFile("input", a.input);
  cib_corpus* raw = nullptr;
  Check(cib_corpus_load(a.input.c_str(), g.strict, g.threads, &raw, &stats));
  CorpusPtr c(raw);
  Check(cib_manifest_add_input(m.get(), "input", a.input.c_str()));
  cib_manifest_set_count(m.get(), "lines", stats.lines);
  cib_manifest_set_count(m.get(), "records", stats.records);
  cib_manifest_set_count(m.get(), "skipped_lines", stats.skipped);
  if (stats.records > 0) {
    int64_t first = 0, last = 0;
    Check(cib_corpus_time_span(c.get(), &first, &last));
    cib_manifest_set_time_span(m.get(), first, last);
  }
  Check(cib_corpus_write(c.get(), a.cache.c_str()));
  Check(cib_manifest_add_artifact(m.get(), a.cache.c_str()));
  if (!a.daily_volume.empty()) {
    Check(cib_corpus_write_daily_volume(c.get(), a.daily_volume.c_str()));
    Check(cib_manifest_add_artifact(m.get(), a.daily_volume.c_str()));
  }
  std::string manifest = a.manifest.empty() ? a.cache + ".manifest.json" : a.manifest;
  Check(cib_manifest_write(m.get(), manifest.c_str()));
  std::cout << "records " << stats.records << "\nskipped " << stats.skipped << "\naccounts "
            << cib_corpus_account_count(c.get()) << "\nmanifest " << manifest << "\n";
}

// ---- detect ---------------------------------------------------------------

struct DetectArgs {
  std::string cache;
  std::string out = "detect";
  bool stream = false;
  bool no_hashtag = false, no_retweet = false, no_time = false;
  cib_detector_config cfg{};
  std::map<std::string, CLI::Option*> flags;
};

void ApplyDetectorSettings(DetectArgs& a, Settings& s) {
  s.Apply("hashtag_k", a.flags["hashtag_k"], a.cfg.hashtag_k);
  s.Apply("retweet_top_frac", a.flags["retweet_top_frac"], a.cfg.retweet_top_frac);
  s.Apply("retweet_min", a.flags["retweet_min"], a.cfg.retweet_min);
  s.Apply("time_bin_minutes", a.flags["time_bin_minutes"], a.cfg.time_bin_minutes);
  s.Apply("time_threshold", a.flags["time_threshold"], a.cfg.time_threshold);
  s.Apply("time_min", a.flags["time_min"], a.cfg.time_min);
  bool hashtag = true, retweet = true, time = true;
  s.Apply("enable_hashtag", nullptr, hashtag);
  s.Apply("enable_retweet", nullptr, retweet);
  s.Apply("enable_time", nullptr, time);
  a.no_hashtag = a.no_hashtag || !hashtag;
  a.no_retweet = a.no_retweet || !retweet;
  a.no_time = a.no_time || !time;
  a.cfg.enable_hashtag = !a.no_hashtag;
  a.cfg.enable_retweet = !a.no_retweet;
  a.cfg.enable_time = !a.no_time;
}

void RecordDetectorConfig(cib_manifest* m, const cib_detector_config& c) {
  Check(cib_manifest_set_config(m, "hashtag_k", std::to_string(c.hashtag_k).c_str()));
  Check(cib_manifest_set_config(m, "retweet_top_frac", Fmt(c.retweet_top_frac).c_str()));
  Check(cib_manifest_set_config(m, "retweet_min", std::to_string(c.retweet_min).c_str()));
  Check(cib_manifest_set_config(m, "time_bin_minutes",
                                std::to_string(c.time_bin_minutes).c_str()));
  Check(cib_manifest_set_config(m, "time_threshold", Fmt(c.time_threshold).c_str()));
  Check(cib_manifest_set_config(m, "time_min", std::to_string(c.time_min).c_str()));
  std::string enabled;
  if (c.enable_hashtag) enabled += "hashtag,";
  if (c.enable_retweet) enabled += "retweet,";
  if (c.enable_time) enabled += "time,";
  if (!enabled.empty()) enabled.pop_back();
  Check(cib_manifest_set_config(m, "detectors", enabled.c_str()));
}

void AddDetectionArtifacts(cib_manifest* m, const std::string& dir) {
  for (const char* name : {"edges.csv", "flagged_hashtag.txt", "flagged_retweet.txt",
                           "flagged_time.txt", "flagged_union.txt", "overlap.csv",
                           "detection_summary.json"})
    Check(cib_manifest_add_artifact(m, (fs::path(dir) / name).string().c_str()));
}

void RunDetect(DetectArgs& a, Globals& g) {
  ApplyDetectorSettings(a, g.settings);
  g.settings.CheckAllUsed();
  Check(cib_detector_config_validate(&a.cfg));
  auto m = NewManifest(a.stream ? "detect --stream" : "detect", g);
  RecordDetectorConfig(m.get(), a.cfg);
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw CliError{CIB_ERR_IO, "cannot create directory " + a.out};

  cib_detection* raw = nullptr;
  if (a.stream) {
    // Raw JSONL goes straight through the hashtag index; records are not kept.
    if (!a.cfg.enable_hashtag) Invalid("--stream requires the hashtag detector");
    RequireFile("input", a.cache);
    auto edges = (fs::path(a.out) / "edges.csv").string();
    cib_parse_stats stats{};
    std::size_t n_edges = 0;
    Check(cib_stream_hashtag_edges(a.cache.c_str(), a.cfg.hashtag_k, g.strict,
                                   edges.c_str(), &n_edges, &stats));
    if (stats.skipped > 0)
      std::cerr << "cibnet: skipped " << stats.skipped << " malformed line(s)\n";
    Check(cib_manifest_add_input(m.get(), "input", a.cache.c_str()));
    cib_manifest_set_count(m.get(), "records", stats.records);
    cib_manifest_set_count(m.get(), "skipped_lines", stats.skipped);
    Check(cib_detection_load_edges(edges.c_str(), &raw));
  } else {
    auto c = LoadCorpus(a.cache, g, m.get());
    Check(cib_detect(c.get(), &a.cfg, g.threads, &raw));
  }
  DetectionPtr d(raw);
  Check(cib_detection_write(d.get(), a.out.c_str()));
  for (int k = 0; k < 3; ++k) {
    auto det = static_cast<cib_detector>(k);
    static const char* kNames[] = {"hashtag", "retweet", "time"};
    if (!cib_detection_has(d.get(), det)) continue;
    cib_manifest_set_count(m.get(), (std::string("edges_") + kNames[k]).c_str(),
                           cib_detection_edge_count(d.get(), det));
    cib_manifest_set_count(m.get(), (std::string("flagged_") + kNames[k]).c_str(),
                           cib_detection_flagged_count(d.get(), det));
    std::cout << kNames[k] << " edges " << cib_detection_edge_count(d.get(), det)
              << " flagged " << cib_detection_flagged_count(d.get(), det) << "\n";
  }
  cib_manifest_set_count(m.get(), "flagged_union", cib_detection_union_count(d.get()));
  std::cout << "union flagged " << cib_detection_union_count(d.get()) << "\n";
  AddDetectionArtifacts(m.get(), a.out);
  Check(cib_manifest_write(m.get(), (fs::path(a.out) / "manifest.json").string().c_str()));
}

// ---- cluster --------------------------------------------------------------

struct ClusterArgs {
  std::string cache;
  std::string edges;
  std::string detector = "hashtag";
  std::string out = "clusters.csv";
};

void RunCluster(const ClusterArgs& a, Globals& g) {
  g.settings.CheckAllUsed();
  auto det = ParseDetectorName(a.detector);
  RequireFile("edges", a.edges);
  auto c = LoadCorpus(a.cache, g, nullptr);
  cib_detection* raw = nullptr;
  Check(cib_detection_load_edges(a.edges.c_str(), &raw));
  DetectionPtr d(raw);
  std::size_t n = 0;
  Check(cib_cluster_write(c.get(), d.get(), det, a.out.c_str(), &n));
  std::cout << "clusters " << n << "\n";
}

// ---- score ----------------------------------------------------------------

struct ScoreArgs {
  std::string cache;
  std::string lexicon;
  std::string out = "confidences.csv";
  std::string dump_lexicon;
};

void RunScore(const ScoreArgs& a, Globals& g) {
  g.settings.CheckAllUsed();
  if (!a.dump_lexicon.empty()) {
    Check(cib_default_lexicon_write(a.dump_lexicon.c_str()));
    if (a.cache.empty()) return;
  }
  if (a.cache.empty()) Invalid("missing input: --cache");
  if (!a.lexicon.empty()) RequireFile("lexicon", a.lexicon);
  auto c = LoadCorpus(a.cache, g, nullptr);
  cib_confidences* raw = nullptr;
  Check(cib_score_lexicon(c.get(), a.lexicon.empty() ? nullptr : a.lexicon.c_str(),
                          g.threads, &raw));
  ConfidencesPtr conf(raw);
  Check(cib_confidences_write(conf.get(), a.out.c_str()));
  std::cout << "rows " << cib_confidences_row_count(conf.get()) << "\n";
}

// ---- report ---------------------------------------------------------------

struct ReportArgs {
  std::string cache;
  std::string edges;
  std::string confidences;
  std::string out = "report";
  std::string story_tags;
  std::string coordination = "hashtag";
  std::string cluster_detector = "hashtag";
  std::string duplicate_scope = "account";
  std::string normalize = "none";
  double threshold = 0.5;
  std::size_t delta_clusters = 5;
  int bootstrap = 1000;
  std::map<std::string, CLI::Option*> flags;
};

void RunReport(ReportArgs& a, Globals& g) {
  auto& s = g.settings;
  s.ApplyString("story_hashtags", a.flags["story_hashtags"], a.story_tags);
  s.ApplyString("coordination", a.flags["coordination"], a.coordination);
  s.ApplyString("cluster_detector", a.flags["cluster_detector"], a.cluster_detector);
  s.ApplyString("duplicate_scope", a.flags["duplicate_scope"], a.duplicate_scope);
  s.ApplyString("normalize", a.flags["normalize"], a.normalize);
  s.Apply("binarize_threshold", a.flags["binarize_threshold"], a.threshold);
  s.Apply("delta_clusters", a.flags["delta_clusters"], a.delta_clusters);
  s.Apply("bootstrap_resamples", a.flags["bootstrap_resamples"], a.bootstrap);
  s.CheckAllUsed();

  cib_report_options opts;
  cib_report_options_default(&opts);
  opts.coordination_mask = 0;
  for (const auto& name : SplitList(a.coordination))
    opts.coordination_mask |= 1u << ParseDetectorName(name);
  if (opts.coordination_mask == 0) Invalid("--coordination names no detector");
  opts.cluster_detector = ParseDetectorName(a.cluster_detector);
  if (a.duplicate_scope != "account" && a.duplicate_scope != "corpus")
    Invalid("--duplicate-scope must be 'account' or 'corpus'");
  opts.duplicate_scope_corpus = a.duplicate_scope == "corpus";
  opts.duplicate_normalization = ParseNormalization(a.normalize);
  opts.binarize_threshold = a.threshold;
  opts.delta_clusters = a.delta_clusters;
  if (a.bootstrap < 1) Invalid("--bootstrap-resamples must be >= 1");
  opts.bootstrap_resamples = a.bootstrap;
  opts.seed = g.seed;
  opts.threads = g.threads;
  std::vector<std::string> tags;
  std::vector<const char*> tag_ptrs;
  if (!a.story_tags.empty()) {
    tags = SplitList(a.story_tags);
    for (const auto& t : tags) tag_ptrs.push_back(t.c_str());
    opts.story_hashtags = tag_ptrs.data();
    opts.story_hashtag_count = tag_ptrs.size();
  }

  if (a.cache.empty()) Invalid("missing input: --cache");
  if (a.edges.empty()) Invalid("missing input: --edges");
  RequireFile("corpus cache", a.cache);
  RequireFile("edges", a.edges);
  if (!a.confidences.empty()) RequireFile("confidences", a.confidences);

  auto m = NewManifest("report", g);
  auto set = [&](const char* k, const std::string& v) {
    Check(cib_manifest_set_config(m.get(), k, v.c_str()));
  };
  set("coordination", a.coordination);
  set("cluster_detector", a.cluster_detector);
  set("story_hashtags", a.story_tags.empty() ? "default" : a.story_tags);
  set("duplicate_scope", a.duplicate_scope);
  set("normalize", a.normalize);
  set("binarize_threshold", Fmt(a.threshold));
  set("delta_clusters", std::to_string(a.delta_clusters));
  set("bootstrap_resamples", std::to_string(a.bootstrap));

  auto c = LoadCorpus(a.cache, g, m.get());
  cib_detection* raw = nullptr;
  Check(cib_detection_load_edges(a.edges.c_str(), &raw));
  DetectionPtr d(raw);
  Check(cib_manifest_add_input(m.get(), "edges", a.edges.c_str()));

  ConfidencesPtr conf;
  if (!a.confidences.empty()) {
    Check(cib_manifest_add_input(m.get(), "confidences", a.confidences.c_str()));
    if (fs::file_size(a.confidences) == 0) {
      std::cerr << "cibnet: notice: confidence file is empty; socio-linguistic sections "
                   "omitted\n";
    } else {
      cib_confidences* rc = nullptr;
      Check(cib_confidences_load(a.confidences.c_str(), &rc));
      conf.reset(rc);
      if (cib_confidences_missing_values(rc) > 0)
        std::cerr << "cibnet: " << cib_confidences_missing_values(rc)
                  << " blank confidence cell(s) read as 0\n";
    }
  } else {
    std::cerr << "cibnet: notice: no confidence file; socio-linguistic sections omitted\n";
  }

  cib_report_summary sum{};
  Check(cib_report(c.get(), d.get(), conf.get(), &opts, m.get(), a.out.c_str(), &sum));
  std::cout << "accounts " << sum.accounts << "\ncoordinated_accounts "
            << sum.coordinated_accounts << "\nuser_share " << Fmt(sum.user_share)
            << "\nstory_share " << Fmt(sum.story_share) << " (" << sum.coordinated_story_tweets
            << "/" << sum.story_tweets << ")\nintra_share " << Fmt(sum.intra_share)
            << "\nclusters " << sum.clusters << "\n";
  if (sum.sociolinguistics)
    std::cout << "vote_for_rate coordinated " << Fmt(sum.vote_for_rate_coordinated)
              << " baseline " << Fmt(sum.vote_for_rate_baseline) << "\n";
}

// ---- stats ----------------------------------------------------------------

struct StatsArgs {
  std::string test;
  std::string csv;
  std::string x, y;
  std::string csv_b;
  int resamples = 1000;
  int splits = 10;
  double train_frac = 0.5;
};

std::vector<double> Column(const std::string& path, const std::string& col) {
  if (col.empty()) Invalid("missing column name");
  RequireFile("csv", path);
  double* values = nullptr;
  std::size_t n = 0;
  Check(cib_csv_column(path.c_str(), col.c_str(), &values, &n));
  std::vector<double> out(values, values + n);
  cib_buffer_free(values);
  return out;
}

std::vector<int> Labels(const std::vector<double>& v) {
  std::vector<int> out;
  for (double x : v) {
    if (x != 0.0 && x != 1.0) Invalid("label column must contain only 0 and 1");
    out.push_back(x == 1.0);
  }
  return out;
}

void PrintStat(const std::string& test, const cib_stat_result& r) {
  json j = {{"test", test},
            {"statistic", std::isnan(r.statistic) ? json(nullptr) : json(r.statistic)},
            {"p_value", std::isnan(r.p_value) ? json(nullptr) : json(r.p_value)},
            {"se", std::isnan(r.se) ? json(nullptr) : json(r.se)},
            {"n1", r.n1},
            {"n2", r.n2}};
  std::cout << j.dump(2) << "\n";
}

void RunStats(const StatsArgs& a, Globals& g) {
  g.settings.CheckAllUsed();
  cib_stat_result r{};
  if (a.test == "kappa") {
    RequireFile("annotations", a.csv);
    char* text = nullptr;
    Check(cib_stat_kappa_file(a.csv.c_str(), &text));
    std::cout << text;
    cib_buffer_free(text);
    return;
  }
  auto xs = Column(a.csv, a.x);
  if (a.test == "spearman") {
    auto ys = Column(a.csv, a.y);
    if (xs.size() != ys.size()) Invalid("columns differ in non-blank length");
    Check(cib_stat_spearman(xs.data(), ys.data(), xs.size(), &r));
  } else if (a.test == "mannwhitney") {
    auto ys = Column(a.csv_b.empty() ? a.csv : a.csv_b, a.y);
    Check(cib_stat_mann_whitney(xs.data(), xs.size(), ys.data(), ys.size(), &r));
  } else if (a.test == "auc" || a.test == "reshuffle") {
    auto labels = Labels(Column(a.csv, a.y));
    if (labels.size() != xs.size()) Invalid("columns differ in non-blank length");
    if (a.test == "auc")
      Check(cib_stat_roc_auc(xs.data(), labels.data(), xs.size(), &r));
    else
      Check(cib_stat_reshuffle_auc(xs.data(), labels.data(), xs.size(), a.splits,
                                   a.train_frac, g.seed, g.threads, &r));
  } else if (a.test == "bootstrap") {
    double se = 0;
    Check(cib_stat_bootstrap_se(xs.data(), xs.size(), a.resamples, g.seed, g.threads, &se));
    double mean = 0;
    for (double v : xs) mean += v;
    r.statistic = xs.empty() ? NAN : mean / static_cast<double>(xs.size());
    r.p_value = NAN;
    r.se = se;
    r.n1 = xs.size();
  } else {
    Invalid("unknown test '" + a.test + "'");
  }
  PrintStat(a.test, r);
}

void ReportError(const CliError& e, bool as_json) {
  static const char* kKinds[] = {"ok", "validation", "io", "internal"};
  const char* kind = kKinds[static_cast<int>(e.status) & 3];
  if (as_json) {
    json j = {{"error", {{"code", static_cast<int>(e.status)}, {"kind", kind},
                         {"message", e.message}}}};
    if (e.line > 0) j["error"]["line"] = e.line;
    std::cerr << j.dump() << "\n";
  } else {
    std::cerr << "cibnet: " << kind << " error: " << e.message << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinated-account detection and reporting over tweet corpora", "cibnet"};
  app.set_version_flag("--version", std::string(cib_version()));
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Key-value settings file (TOML/INI syntax)");
  g.seed_opt = app.add_option("--seed", g.seed, "Random seed");
  g.threads_opt = app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  g.strict_opt = app.add_flag("--strict", g.strict, "Fail on the first malformed input line");
  app.add_flag("--json-errors", g.json_errors, "Print errors as JSON on stderr");

  IngestArgs ingest;
  auto* ing = app.add_subcommand("ingest", "Validate a JSONL dump into a corpus cache");
  ing->add_option("input", ingest.input, "Input JSONL")->required();
  ing->add_option("-o,--cache", ingest.cache, "Cache JSONL to write")->capture_default_str();
  ing->add_option("--manifest", ingest.manifest, "Manifest path (default <cache>.manifest.json)");
  ing->add_option("--daily-volume", ingest.daily_volume, "Also write the daily volume CSV");

  DetectArgs detect;
  cib_detector_config_default(&detect.cfg);
  auto* det = app.add_subcommand("detect", "Run the coordination detectors");
  det->add_option("cache", detect.cache, "Corpus cache (raw JSONL with --stream)")->required();
  det->add_option("-o,--out", detect.out, "Output directory")->capture_default_str();
  det->add_flag("--stream", detect.stream,
                "Stream raw JSONL through the hashtag detector without loading it");
  detect.flags["hashtag_k"] = det->add_option("--hashtag-k", detect.cfg.hashtag_k);
  detect.flags["retweet_top_frac"] =
      det->add_option("--retweet-top-frac", detect.cfg.retweet_top_frac);
  detect.flags["retweet_min"] = det->add_option("--retweet-min", detect.cfg.retweet_min);
  detect.flags["time_bin_minutes"] =
      det->add_option("--time-bin-minutes", detect.cfg.time_bin_minutes);
  detect.flags["time_threshold"] =
      det->add_option("--time-threshold", detect.cfg.time_threshold);
  detect.flags["time_min"] = det->add_option("--time-min", detect.cfg.time_min);
  det->add_flag("--no-hashtag", detect.no_hashtag);
  det->add_flag("--no-retweet", detect.no_retweet);
  det->add_flag("--no-time", detect.no_time);

  ClusterArgs cluster;
  auto* clu = app.add_subcommand("cluster", "Connected components of one detector's edges");
  clu->add_option("cache", cluster.cache, "Corpus cache")->required();
  clu->add_option("--edges", cluster.edges, "Edge CSV")->required();
  clu->add_option("--detector", cluster.detector)->capture_default_str();
  clu->add_option("-o,--out", cluster.out)->capture_default_str();

  ScoreArgs score;
  auto* sco = app.add_subcommand("score", "Lexicon-based socio-linguistic confidences");
  sco->add_option("cache", score.cache, "Corpus cache");
  sco->add_option("--lexicon", score.lexicon, "Lexicon CSV (default: built-in)");
  sco->add_option("-o,--out", score.out)->capture_default_str();
  sco->add_option("--dump-lexicon", score.dump_lexicon, "Write the built-in lexicon here");

  ReportArgs report;
  auto* rep = app.add_subcommand("report", "Write the report bundle");
  rep->add_option("cache", report.cache, "Corpus cache")->required();
  rep->add_option("--edges", report.edges, "Edge CSV from detect")->required();
  rep->add_option("--confidences", report.confidences, "Confidence CSV");
  rep->add_option("-o,--out", report.out, "Output directory")->capture_default_str();
  report.flags["story_hashtags"] =
      rep->add_option("--story-tags", report.story_tags, "Comma-separated story hashtags");
  report.flags["coordination"] =
      rep->add_option("--coordination", report.coordination,
                      "Detectors whose flagged accounts count as coordinated")
          ->capture_default_str();
  report.flags["cluster_detector"] =
      rep->add_option("--cluster-detector", report.cluster_detector)->capture_default_str();
  report.flags["duplicate_scope"] =
      rep->add_option("--duplicate-scope", report.duplicate_scope, "account or corpus")
          ->capture_default_str();
  report.flags["normalize"] =
      rep->add_option("--normalize", report.normalize,
                      "Duplicate text normalization: urls,mentions,hashtags,lowercase,punct|all|none")
          ->capture_default_str();
  report.flags["binarize_threshold"] =
      rep->add_option("--binarize-threshold", report.threshold)->capture_default_str();
  report.flags["delta_clusters"] =
      rep->add_option("--delta-clusters", report.delta_clusters)->capture_default_str();
  report.flags["bootstrap_resamples"] =
      rep->add_option("--bootstrap-resamples", report.bootstrap)->capture_default_str();

  StatsArgs stats;
  auto* sta = app.add_subcommand("stats", "Run one statistical test on CSV columns");
  sta->add_option("test", stats.test, "spearman|mannwhitney|auc|reshuffle|bootstrap|kappa")
      ->required();
  sta->add_option("csv", stats.csv, "Input CSV (annotations CSV for kappa)")->required();
  sta->add_option("-x", stats.x, "First column (scores for auc/reshuffle)");
  sta->add_option("-y", stats.y, "Second column (labels for auc/reshuffle)");
  sta->add_option("--csv-b", stats.csv_b, "Second CSV for mannwhitney");
  sta->add_option("--resamples", stats.resamples)->capture_default_str();
  sta->add_option("--splits", stats.splits)->capture_default_str();
  sta->add_option("--train-frac", stats.train_frac)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    if (g.json_errors)
      ReportError({CIB_ERR_VALIDATION, e.what()}, true);
    else
      app.exit(e);
    return CIB_ERR_VALIDATION;
  }

  try {
    g.Resolve();
    if (*ing) RunIngest(ingest, g);
    if (*det) RunDetect(detect, g);
    if (*clu) RunCluster(cluster, g);
    if (*sco) RunScore(score, g);
    if (*rep) RunReport(report, g);
    if (*sta) RunStats(stats, g);
  } catch (const CliError& e) {
    ReportError(e, g.json_errors);
    return e.status;
  } catch (const std::exception& e) {
    ReportError({CIB_ERR_INTERNAL, e.what()}, g.json_errors);
    return CIB_ERR_INTERNAL;
  }
  return 0;
}
