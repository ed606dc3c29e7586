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

#include "report.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "csv.h"
#include "error.h"
#include "json.hpp"
#include "rng.h"
#include "stats.h"

namespace cibnet {
namespace {

using nlohmann::json;

json Nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json StatJson(const stats::StatResult& r) {
  return {{"statistic", Nullable(r.statistic)},
          {"p_value", Nullable(r.p_value)},
          {"n", r.n},
          {"method", r.method}};
}

class BundleWriter {
 public:
  BundleWriter(const std::string& dir, RunManifest& manifest)
      : dir_(dir), manifest_(manifest) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create directory " + dir_);
  }

  void Write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::string path = (std::filesystem::path(dir_) / name).string();
    {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw IoError("cannot write " + path);
      body(out);
      if (!out) throw IoError("write failure on " + path);
    }
    manifest_.AddArtifact(path);
  }

  std::string Path(const std::string& name) const {
    return (std::filesystem::path(dir_) / name).string();
  }

 private:
  std::string dir_;
  RunManifest& manifest_;
};

std::string StripHash(std::string tag) {
  std::size_t start = tag.find_first_not_of('#');
  return start == std::string::npos ? std::string() : FoldCase(tag.substr(start));
}

std::optional<double> Median(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

}  // namespace

StoryShare ComputeStoryShare(const Corpus& corpus, const AccountSet& coordinated,
                             const std::vector<std::string>& story_hashtags) {
  std::vector<std::string> tags;
  for (const auto& t : story_hashtags) {
    auto s = StripHash(t);
    if (!s.empty()) tags.push_back(std::move(s));
  }
  StoryShare out;
  for (const auto& r : corpus.records()) {
    bool hit = std::any_of(r.hashtags.begin(), r.hashtags.end(), [&](const std::string& h) {
      return std::find(tags.begin(), tags.end(), h) != tags.end();
    });
    if (!hit) continue;
    ++out.total;
    if (coordinated.count(r.account_id)) ++out.coordinated;
  }
  if (out.total > 0)
    out.share = static_cast<double>(out.coordinated) / static_cast<double>(out.total);
  return out;
}

BinarizedRates ComputeBinarizedRates(const Corpus& corpus,
                                     const CharacteristicTable& table,
                                     const AccountSet& coordinated,
                                     std::size_t characteristic, double threshold) {
  if (characteristic >= kNumCharacteristics)
    throw ValidationError("characteristic index out of range");
  std::size_t n[2] = {0, 0}, pos[2] = {0, 0};
  for (const auto& r : corpus.records()) {
    const auto* row = table.Find(r.tweet_id);
    if (!row) continue;
    int side = coordinated.count(r.account_id) ? 0 : 1;
    ++n[side];
    pos[side] += Binarize(*row, threshold)[characteristic];
  }
  BinarizedRates out;
  if (n[0]) out.coordinated = static_cast<double>(pos[0]) / static_cast<double>(n[0]);
  if (n[1]) out.baseline = static_cast<double>(pos[1]) / static_cast<double>(n[1]);
  return out;
}

ReportSummary WriteReport(const Corpus& corpus, const Detection& detection,
                          const CharacteristicTable* confidences,
                          const ReportOptions& options, const std::string& out_dir,
                          RunManifest& manifest) {
  ReportSummary summary;
  const std::string digest = manifest.Digest();
  BundleWriter bundle(out_dir, manifest);

  // Coordinated accounts.
  AccountSet coordinated;
  std::vector<std::string> sources;
  for (Detector d : options.coordination) {
    sources.emplace_back(DetectorName(d));
    const auto* r = detection.Find(d);
    if (!r) {
      summary.notices.push_back("detector '" + std::string(DetectorName(d)) +
                                "' has no output; contributes no accounts");
      continue;
    }
    coordinated.insert(r->flagged.begin(), r->flagged.end());
  }
  summary.accounts = corpus.account_index().size();
  summary.coordinated_accounts = coordinated.size();
  summary.user_share = summary.accounts
                           ? static_cast<double>(coordinated.size()) /
                                 static_cast<double>(summary.accounts)
                           : 0.0;

  std::vector<std::string> coordinated_list(coordinated.begin(), coordinated.end());
  AccountSet baseline_accounts;
  for (const auto& [account, idx] : corpus.account_index())
    if (!coordinated.count(account)) baseline_accounts.insert(account);

  bundle.Write("daily_volume.csv", [&](std::ostream& out) {
    WriteDailyVolumeCsv(ComputeDailyVolume(corpus), out);
  });
  bundle.Write("activity_shares.csv", [&](std::ostream& out) {
    WriteActivitySharesCsv(ComputeActivityShares(corpus, coordinated), out);
  });

  // Duplicates, coordinated vs. everyone else.
  auto dup_coord = ComputeDuplicateShares(corpus, coordinated,
                                          options.duplicate_normalization,
                                          options.duplicate_scope);
  auto dup_base = ComputeDuplicateShares(corpus, baseline_accounts,
                                         options.duplicate_normalization,
                                         options.duplicate_scope);
  bundle.Write("duplicate_shares_coordinated.csv",
               [&](std::ostream& out) { WriteDuplicateSharesCsv(dup_coord, out); });
  bundle.Write("duplicate_shares_baseline.csv",
               [&](std::ostream& out) { WriteDuplicateSharesCsv(dup_base, out); });
  json duplicates;
  {
    std::vector<double> a, b;
    for (const auto& s : dup_coord) if (s.share) a.push_back(*s.share);
    for (const auto& s : dup_base) if (s.share) b.push_back(*s.share);
    duplicates["scope"] =
        options.duplicate_scope == DuplicateScope::kAccount ? "account" : "corpus";
    duplicates["normalization_flags"] = options.duplicate_normalization.ToFlags();
    duplicates["mean_share_coordinated"] =
        a.empty() ? json(nullptr) : json(stats::Mean(a));
    duplicates["mean_share_baseline"] = b.empty() ? json(nullptr) : json(stats::Mean(b));
    duplicates["mann_whitney"] =
        (a.empty() || b.empty()) ? json(nullptr) : StatJson(stats::MannWhitneyU(a, b));
  }

  // Clusters on the chosen detector's graph.
  std::vector<Cluster> clusters;
  if (const auto* r = detection.Find(options.cluster_detector)) {
    clusters = ConnectedComponents(CoordinationGraph(r->edges));
    LabelClusters(clusters, corpus);
  }
  summary.clusters = clusters.size();
  bundle.Write("clusters.csv", [&](std::ostream& out) { WriteClustersCsv(clusters, out); });

  bundle.Write("detector_overlap.csv", [&](std::ostream& out) {
    out << "left,right,left_count,right_count,both\n";
    for (const auto& row : FlaggedOverlaps(detection))
      out << row.left << ',' << row.right << ',' << row.left_count << ','
          << row.right_count << ',' << row.both << '\n';
  });

  summary.interactions = ComputeRetweetInteractions(corpus, coordinated);
  const auto& ia = summary.interactions;
  bundle.Write("interactions.json", [&](std::ostream& out) {
    json j = {{"manifest_digest", digest},
              {"coordinated_content_retweets", ia.coordinated_content_retweets},
              {"intra_retweets", ia.intra_retweets},
              {"retweets_from_outside", ia.retweets_from_outside},
              {"replies_from_outside", ia.replies_from_outside},
              {"coordinated_retweet_actions", ia.coordinated_retweet_actions},
              {"intra_share", Nullable(ia.intra_share)},
              {"intra_share_denominator", "retweets_of_coordinated_content"},
              {"intra_share_of_actions", Nullable(ia.intra_share_of_actions)},
              {"intra_share_of_actions_denominator", "retweets_by_coordinated_accounts"}};
    out << j.dump(2) << '\n';
  });

  auto story = ComputeStoryShare(corpus, coordinated, options.story_hashtags);
  summary.story_tweets = story.total;
  summary.coordinated_story_tweets = story.coordinated;
  summary.story_share = story.share;

  auto mix_coord = stats::LanguageMix(corpus, coordinated_list);
  bundle.Write("language_mix.csv", [&](std::ostream& out) {
    out << "account_id,language,fraction\n";
    for (const auto& s : mix_coord)
      for (const auto& [lang, f] : s.fractions)
        out << csv::Escape(s.account_id) << ',' << csv::Escape(lang) << ','
            << csv::FormatNumber(f) << '\n';
  });
  auto mean_mix = [](const std::vector<stats::LanguageShare>& mix) {
    std::map<std::string, double> sums;
    std::size_t n = 0;
    for (const auto& s : mix) {
      if (s.n_tweets == 0) continue;
      ++n;
      for (const auto& [lang, f] : s.fractions) sums[lang] += f;
    }
    json j = json::object();
    for (const auto& [lang, sum] : sums) j[lang] = sum / static_cast<double>(n);
    return j;
  };
  std::vector<std::string> baseline_list(baseline_accounts.begin(), baseline_accounts.end());
  json language = {{"mean_fraction_coordinated", mean_mix(mix_coord)},
                   {"mean_fraction_baseline",
                    mean_mix(stats::LanguageMix(corpus, baseline_list))}};

  // Socio-linguistic sections.
  json socio = nullptr;
  const auto& registry = Characteristics();
  if (!confidences || confidences->empty()) {
    summary.notices.push_back(
        "no confidence table supplied; socio-linguistic sections omitted");
  } else {
    summary.sociolinguistics = true;
    const CharacteristicTable& table = *confidences;
    std::vector<const ConfidenceVector*> rows(corpus.size(), nullptr);
    std::vector<bool> is_coord(corpus.size()), is_base(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      rows[i] = table.Find(corpus[i].tweet_id);
      if (!rows[i]) ++summary.uncovered_tweets;
      bool c = coordinated.count(corpus[i].account_id) > 0;
      is_coord[i] = c;
      is_base[i] = !c;
    }
    if (summary.uncovered_tweets)
      summary.notices.push_back(std::to_string(summary.uncovered_tweets) +
                                " tweets have no confidence row and are excluded");

    // Characteristic-by-characteristic Spearman over covered tweets.
    std::vector<std::vector<double>> columns(kNumCharacteristics);
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (rows[i])
        for (std::size_t c = 0; c < kNumCharacteristics; ++c)
          columns[c].push_back((*rows[i])[c]);
    std::size_t covered = columns[0].size();
    if (covered >= 3) {
      std::vector<std::vector<stats::StatResult>> matrix(
          kNumCharacteristics, std::vector<stats::StatResult>(kNumCharacteristics));
      for (std::size_t x = 0; x < kNumCharacteristics; ++x)
        for (std::size_t y = x; y < kNumCharacteristics; ++y)
          matrix[x][y] = matrix[y][x] = stats::Spearman(columns[x], columns[y]);
      auto write_matrix = [&](std::ostream& out, bool p) {
        out << "characteristic";
        for (const auto& c : registry) out << ',' << c.name;
        out << '\n';
        for (std::size_t x = 0; x < kNumCharacteristics; ++x) {
          out << registry[x].name;
          for (std::size_t y = 0; y < kNumCharacteristics; ++y)
            out << ',' << csv::FormatNumber(p ? matrix[x][y].p_value
                                              : matrix[x][y].statistic);
          out << '\n';
        }
      };
      bundle.Write("correlation.csv", [&](std::ostream& out) { write_matrix(out, false); });
      bundle.Write("correlation_p.csv", [&](std::ostream& out) { write_matrix(out, true); });
    } else {
      summary.notices.push_back("fewer than 3 covered tweets; correlation matrix omitted");
    }

    // Deltas against non-coordinated tweets.
    std::vector<const ConfidenceVector*> base_rows;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (rows[i] && is_base[i]) base_rows.push_back(rows[i]);
    struct Group {
      std::string name;
      std::vector<const ConfidenceVector*> rows;
    };
    std::vector<Group> groups;
    {
      Group all{"all", {}};
      for (std::size_t i = 0; i < corpus.size(); ++i)
        if (rows[i] && is_coord[i]) all.rows.push_back(rows[i]);
      groups.push_back(std::move(all));
    }
    for (std::size_t k = 0; k < std::min(options.delta_clusters, clusters.size()); ++k) {
      Group g{std::to_string(clusters[k].id), {}};
      for (const auto& m : clusters[k].members) {
        auto it = corpus.account_index().find(m);
        if (it == corpus.account_index().end()) continue;
        for (std::size_t i : it->second)
          if (rows[i]) g.rows.push_back(rows[i]);
      }
      groups.push_back(std::move(g));
    }
    bundle.Write("deltas.csv", [&](std::ostream& out) {
      out << "cluster,characteristic,delta,se,p\n";
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].rows.empty() || base_rows.empty()) {
          summary.notices.push_back("delta group '" + groups[g].name +
                                    "' skipped: no covered tweets on one side");
          continue;
        }
        auto deltas = stats::ClusterDeltas(groups[g].rows, base_rows,
                                           options.bootstrap_resamples,
                                           DeriveSeed(options.seed, g), options.threads);
        for (const auto& d : deltas)
          out << groups[g].name << ',' << registry[d.characteristic].name << ','
              << csv::FormatNumber(d.delta) << ',' << csv::FormatNumber(d.se) << ','
              << csv::FormatNumber(d.p) << '\n';
      }
    });

    bundle.Write("daily_confidence.csv", [&](std::ostream& out) {
      out << "day,characteristic,coordinated,baseline\n";
      for (std::size_t c = 0; c < kNumCharacteristics; ++c) {
        auto co = stats::DailyMeanConfidence(corpus, table, is_coord, c);
        auto ba = stats::DailyMeanConfidence(corpus, table, is_base, c);
        for (std::size_t d = 0; d < co.size(); ++d)
          out << FormatDay(co[d].day) << ',' << registry[c].name << ','
              << csv::FormatNumber(co[d].mean) << ',' << csv::FormatNumber(ba[d].mean)
              << '\n';
      }
    });

    // Confidence vs. binarized label, aggregated per day over all tweets.
    std::vector<double> rhos;
    bundle.Write("binarization_check.csv", [&](std::ostream& out) {
      out << "characteristic,spearman,n_days\n";
      for (std::size_t c = 0; c < kNumCharacteristics; ++c) {
        std::vector<double> conf, label;
        for (const auto& [day, idx] : corpus.day_index()) {
          double sc = 0.0, sl = 0.0;
          std::size_t n = 0;
          for (std::size_t i : idx) {
            if (!rows[i]) continue;
            double v = (*rows[i])[c];
            sc += v;
            sl += v >= options.binarize_threshold ? 1.0 : 0.0;
            ++n;
          }
          if (n == 0) continue;
          conf.push_back(sc / static_cast<double>(n));
          label.push_back(sl / static_cast<double>(n));
        }
        std::optional<double> rho;
        if (conf.size() >= 3) rho = stats::Spearman(conf, label).statistic;
        if (rho) rhos.push_back(*rho);
        out << registry[c].name << ',' << csv::FormatNumber(rho) << ',' << conf.size()
            << '\n';
      }
    });
    summary.binarization_median_spearman = Median(rhos);

    std::size_t vote_for = *CharacteristicIndex("vote_for");
    bundle.Write("binarized_rates.csv", [&](std::ostream& out) {
      out << "characteristic,coordinated_rate,baseline_rate\n";
      for (std::size_t c = 0; c < kNumCharacteristics; ++c) {
        auto rates = ComputeBinarizedRates(corpus, table, coordinated, c,
                                           options.binarize_threshold);
        if (c == vote_for) {
          summary.vote_for_rate_coordinated = rates.coordinated;
          summary.vote_for_rate_baseline = rates.baseline;
        }
        out << registry[c].name << ',' << csv::FormatNumber(rates.coordinated) << ','
            << csv::FormatNumber(rates.baseline) << '\n';
      }
    });

    socio = {{"provenance",
              table.provenance() == Provenance::kLexicon ? "lexicon" : "external"},
             {"missing_values", table.missing_values()},
             {"uncovered_tweets", summary.uncovered_tweets},
             {"binarize_threshold", options.binarize_threshold},
             {"vote_for_rate_coordinated", Nullable(summary.vote_for_rate_coordinated)},
             {"vote_for_rate_baseline", Nullable(summary.vote_for_rate_baseline)},
             {"binarization_median_spearman",
              Nullable(summary.binarization_median_spearman)}};
  }

  json top_clusters = json::array();
  for (std::size_t k = 0; k < std::min<std::size_t>(5, clusters.size()); ++k)
    top_clusters.push_back(
        {{"id", clusters[k].id}, {"size", clusters[k].size()}, {"label", clusters[k].label}});

  bundle.Write("summary.json", [&](std::ostream& out) {
    json j;
    j["manifest_digest"] = digest;
    j["seed"] = options.seed;
    j["coordination_sources"] = sources;
    j["accounts"] = summary.accounts;
    j["coordinated_accounts"] = summary.coordinated_accounts;
    j["user_share"] = summary.user_share;
    j["story"] = {{"hashtags", options.story_hashtags},
                  {"tweets", story.total},
                  {"coordinated_tweets", story.coordinated},
                  {"share", Nullable(story.share)}};
    j["interactions"] = {{"intra_share", Nullable(ia.intra_share)},
                         {"intra_share_of_actions", Nullable(ia.intra_share_of_actions)}};
    j["clusters"] = {{"count", clusters.size()}, {"largest", top_clusters}};
    j["duplicates"] = duplicates;
    j["language"] = language;
    j["sociolinguistics"] = socio;
    j["retweet_quantile_base"] = "candidate pairs (nonzero similarity)";
    j["notices"] = summary.notices;
    out << j.dump(2) << '\n';
  });

  manifest.Write(bundle.Path("manifest.json"));
  return summary;
}

}  // namespace cibnet
