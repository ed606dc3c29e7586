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

#ifndef CIBNET_GRAPH_H_
#define CIBNET_GRAPH_H_

#include <array>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corpus.h"
#include "detectors.h"
#include "text.h"

namespace cibnet {

using AccountSet = std::set<std::string>;

// Undirected coordination graph. Nodes are the edge endpoints.
class CoordinationGraph {
 public:
  CoordinationGraph() = default;
  explicit CoordinationGraph(std::vector<CoordinationEdge> edges);

  const std::vector<std::string>& nodes() const { return nodes_; }  // sorted
  const std::vector<CoordinationEdge>& edges() const { return edges_; }

 private:
  std::vector<std::string> nodes_;
  std::vector<CoordinationEdge> edges_;
};

struct Cluster {
  int id = 0;
  std::vector<std::string> members;  // sorted
  std::string label;

  std::size_t size() const { return members.size(); }
};

// Components sorted by size descending, then by smallest member id; ids
// follow that order starting at 0. Labels are left empty.
std::vector<Cluster> ConnectedComponents(const CoordinationGraph& graph);

// Most frequent hashtag over members' original tweets; ties go to the
// lexicographically smallest tag, "" when there are none.
std::string LabelCluster(const Cluster& cluster, const Corpus& corpus);

void LabelClusters(std::vector<Cluster>& clusters, const Corpus& corpus);

void WriteClustersCsv(const std::vector<Cluster>& clusters, std::ostream& out);

struct RetweetInteractions {
  std::size_t coordinated_content_retweets = 0;  // retweets of coordinated authors
  std::size_t intra_retweets = 0;         // ...made by coordinated accounts
  std::size_t retweets_from_outside = 0;  // ...made by everyone else
  std::size_t replies_from_outside = 0;   // replies to coordinated accounts
  std::size_t coordinated_retweet_actions = 0;  // all retweets by coordinated
  std::optional<double> intra_share;      // intra / coordinated_content
  std::optional<double> intra_share_of_actions;  // intra / coordinated actions
};

// A reply's target is its first mention.
RetweetInteractions ComputeRetweetInteractions(const Corpus& corpus,
                                               const AccountSet& coordinated);

struct DailyShares {
  Day day;
  std::array<std::optional<double>, kNumTweetKinds> share;  // by TweetKind
};

std::vector<DailyShares> ComputeActivityShares(const Corpus& corpus,
                                               const AccountSet& coordinated);

void WriteActivitySharesCsv(const std::vector<DailyShares>& series,
                            std::ostream& out);

enum class DuplicateScope { kAccount, kCorpus };

struct DuplicateShare {
  std::string account_id;
  std::optional<double> share;  // null without original tweets
  std::size_t n_originals = 0;
};

// Fraction of each account's original tweets whose normalized text occurs at
// least twice, counted within the account or across the whole corpus.
std::vector<DuplicateShare> ComputeDuplicateShares(
    const Corpus& corpus, const AccountSet& accounts,
    const NormalizeOptions& normalization,
    DuplicateScope scope = DuplicateScope::kAccount);

void WriteDuplicateSharesCsv(const std::vector<DuplicateShare>& shares,
                             std::ostream& out);

}  // namespace cibnet

#endif  // CIBNET_GRAPH_H_
