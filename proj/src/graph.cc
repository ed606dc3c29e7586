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

#include "graph.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_map>

#include "csv.h"
#include "error.h"
#include "union_find.h"

namespace cibnet {

CoordinationGraph::CoordinationGraph(std::vector<CoordinationEdge> edges)
    : edges_(std::move(edges)) {
  for (const auto& e : edges_) {
    if (e.a == e.b) throw ValidationError("self-loop on " + e.a);
    nodes_.push_back(e.a);
    nodes_.push_back(e.b);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
}

std::vector<Cluster> ConnectedComponents(const CoordinationGraph& graph) {
  const auto& nodes = graph.nodes();
  auto index_of = [&](const std::string& id) {
    return static_cast<std::size_t>(
        std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  UnionFind uf(nodes.size());
  for (const auto& e : graph.edges()) uf.Unite(index_of(e.a), index_of(e.b));

  std::unordered_map<std::size_t, std::size_t> root_to_cluster;
  std::vector<Cluster> clusters;
  // nodes are sorted, so members come out sorted and the first member is
  // the smallest id
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [it, inserted] = root_to_cluster.try_emplace(uf.Find(i), clusters.size());
    if (inserted) clusters.emplace_back();
    clusters[it->second].members.push_back(nodes[i]);
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& x, const Cluster& y) {
              if (x.size() != y.size()) return x.size() > y.size();
              return x.members.front() < y.members.front();
            });
  for (std::size_t i = 0; i < clusters.size(); ++i)
    clusters[i].id = static_cast<int>(i) + 1;
  return clusters;
}

std::string LabelCluster(const Cluster& cluster, const Corpus& corpus) {
  std::map<std::string, std::size_t> counts;
  const auto& index = corpus.account_index();
  for (const auto& member : cluster.members) {
    auto it = index.find(member);
    if (it == index.end()) continue;
    for (std::size_t i : it->second) {
      const TweetRecord& r = corpus[i];
      if (r.kind != TweetKind::kOriginal) continue;
      for (const auto& tag : r.hashtags) ++counts[tag];
    }
  }
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [tag, n] : counts) {
    if (n > best_count) {
      best = tag;
      best_count = n;
    }
  }
  return best;
}

void LabelClusters(std::vector<Cluster>& clusters, const Corpus& corpus) {
  for (auto& c : clusters) c.label = LabelCluster(c, corpus);
}

void WriteClustersCsv(const std::vector<Cluster>& clusters, std::ostream& out) {
  out << "cluster_id,size,label,member_ids...\n";
  for (const auto& c : clusters) {
    out << c.id << ',' << c.size() << ',' << csv::Escape(c.label);
    for (const auto& m : c.members) out << ',' << csv::Escape(m);
    out << '\n';
  }
}

RetweetInteractions ComputeRetweetInteractions(const Corpus& corpus,
                                               const AccountSet& coordinated) {
  RetweetInteractions out;
  for (const auto& r : corpus.records()) {
    bool author_in = coordinated.count(r.account_id) > 0;
    if (r.kind == TweetKind::kRetweet) {
      if (author_in) ++out.coordinated_retweet_actions;
      if (r.retweeted_account_id && coordinated.count(*r.retweeted_account_id)) {
        ++out.coordinated_content_retweets;
        if (author_in)
          ++out.intra_retweets;
        else
          ++out.retweets_from_outside;
      }
    } else if (r.kind == TweetKind::kReply && !author_in && !r.mentions.empty() &&
               coordinated.count(r.mentions.front())) {
      ++out.replies_from_outside;
    }
  }
  if (out.coordinated_content_retweets > 0)
    out.intra_share = static_cast<double>(out.intra_retweets) /
                      static_cast<double>(out.coordinated_content_retweets);
  if (out.coordinated_retweet_actions > 0)
    out.intra_share_of_actions = static_cast<double>(out.intra_retweets) /
                                 static_cast<double>(out.coordinated_retweet_actions);
  return out;
}

std::vector<DailyShares> ComputeActivityShares(const Corpus& corpus,
                                               const AccountSet& coordinated) {
  std::vector<DailyShares> series;
  for (const auto& [day, idx] : corpus.day_index()) {
    std::array<std::size_t, kNumTweetKinds> total{}, coord{};
    for (std::size_t i : idx) {
      const TweetRecord& r = corpus[i];
      auto k = static_cast<std::size_t>(r.kind);
      ++total[k];
      if (coordinated.count(r.account_id)) ++coord[k];
    }
    DailyShares s{day, {}};
    for (std::size_t k = 0; k < kNumTweetKinds; ++k)
      if (total[k] > 0)
        s.share[k] = static_cast<double>(coord[k]) / static_cast<double>(total[k]);
    series.push_back(s);
  }
  return series;
}

void WriteActivitySharesCsv(const std::vector<DailyShares>& series,
                            std::ostream& out) {
  out << "day,original,reply,retweet\n";
  for (const auto& s : series)
    out << FormatDay(s.day) << ',' << csv::FormatNumber(s.share[0]) << ','
        << csv::FormatNumber(s.share[1]) << ',' << csv::FormatNumber(s.share[2])
        << '\n';
}

std::vector<DuplicateShare> ComputeDuplicateShares(
    const Corpus& corpus, const AccountSet& accounts,
    const NormalizeOptions& normalization, DuplicateScope scope) {
  std::unordered_map<std::string, std::size_t> corpus_counts;
  if (scope == DuplicateScope::kCorpus) {
    for (const auto& r : corpus.records())
      if (r.kind == TweetKind::kOriginal)
        ++corpus_counts[NormalizeText(r.text, normalization)];
  }

  std::vector<DuplicateShare> out;
  const auto& index = corpus.account_index();
  for (const auto& account : accounts) {
    DuplicateShare row{account, std::nullopt, 0};
    auto it = index.find(account);
    if (it != index.end()) {
      std::vector<std::string> texts;
      for (std::size_t i : it->second)
        if (corpus[i].kind == TweetKind::kOriginal)
          texts.push_back(NormalizeText(corpus[i].text, normalization));
      row.n_originals = texts.size();
      if (!texts.empty()) {
        std::size_t dup = 0;
        if (scope == DuplicateScope::kCorpus) {
          for (const auto& t : texts) dup += corpus_counts[t] >= 2 ? 1 : 0;
        } else {
          std::unordered_map<std::string, std::size_t> local;
          for (const auto& t : texts) ++local[t];
          for (const auto& t : texts) dup += local[t] >= 2 ? 1 : 0;
        }
        row.share = static_cast<double>(dup) / static_cast<double>(texts.size());
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

void WriteDuplicateSharesCsv(const std::vector<DuplicateShare>& shares,
                             std::ostream& out) {
  out << "account_id,share,n_originals\n";
  for (const auto& s : shares)
    out << csv::Escape(s.account_id) << ',' << csv::FormatNumber(s.share) << ','
        << s.n_originals << '\n';
}

}  // namespace cibnet
