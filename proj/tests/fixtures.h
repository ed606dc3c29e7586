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

// Record builders and synthetic corpora shared by the unit and acceptance
// tests.

#ifndef CIBNET_TESTS_FIXTURES_H_
#define CIBNET_TESTS_FIXTURES_H_

#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "corpus.h"

namespace fixture {

using cibnet::TweetKind;
using cibnet::TweetRecord;

// 2017-05-01T00:00:00Z.
inline constexpr std::int64_t kMay1 = 1493596800;

inline TweetRecord Original(std::string id, std::string account, std::int64_t ts,
                            std::vector<std::string> tags = {}, std::string text = "",
                            std::string language = "fr") {
  TweetRecord r;
  r.tweet_id = std::move(id);
  r.account_id = std::move(account);
  r.timestamp = ts;
  r.kind = TweetKind::kOriginal;
  r.hashtags = std::move(tags);
  r.text = std::move(text);
  r.language = std::move(language);
  return r;
}

inline TweetRecord Retweet(std::string id, std::string account, std::int64_t ts,
                           std::string target_tweet, std::string target_account = "") {
  TweetRecord r;
  r.tweet_id = std::move(id);
  r.account_id = std::move(account);
  r.timestamp = ts;
  r.kind = TweetKind::kRetweet;
  r.text = "RT";
  r.retweeted_tweet_id = std::move(target_tweet);
  if (!target_account.empty()) r.retweeted_account_id = std::move(target_account);
  return r;
}

inline TweetRecord Reply(std::string id, std::string account, std::int64_t ts,
                         std::vector<std::string> mentions, std::string text = "") {
  TweetRecord r;
  r.tweet_id = std::move(id);
  r.account_id = std::move(account);
  r.timestamp = ts;
  r.kind = TweetKind::kReply;
  r.mentions = std::move(mentions);
  r.text = std::move(text);
  return r;
}

// Random corpus with enough structure for every detector to fire: shared
// hashtag runs, overlapping retweet pools, and account pairs with copied
// posting schedules.
inline std::vector<TweetRecord> RandomCorpus(std::uint64_t seed, int n_accounts) {
  std::mt19937_64 gen(seed);
  auto below = [&](int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); };
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::vector<std::vector<std::string>> motifs;
  for (int m = 0; m < 6; ++m) {
    std::vector<std::string> tags;
    int len = 5 + below(3);
    for (int t = 0; t < len; ++t) tags.push_back(vocab[below(static_cast<int>(vocab.size()))]);
    motifs.push_back(tags);
  }
  std::vector<TweetRecord> out;
  int next_id = 0;
  auto id = [&] { return "t" + std::to_string(next_id++); };
  std::vector<std::vector<std::int64_t>> schedules(n_accounts), extra(n_accounts);
  for (int a = 0; a < n_accounts; ++a) {
    std::string acc = "acct" + std::to_string(1000 + a);
    bool copy = a > 0 && below(4) == 0;
    if (copy) {
      schedules[a] = schedules[a - 1];
      extra[a] = extra[a - 1];
    } else {
      int n = 8 + below(10);
      for (int i = 0; i < n; ++i) schedules[a].push_back(kMay1 + below(48) * 1800 + below(1800));
      for (int i = 8 + below(8); i > 0; --i) extra[a].push_back(kMay1 + 200000 + below(100000));
    }
    int pool = 10 + below(30);
    for (std::int64_t ts : schedules[a]) {
      int kind = below(3);
      if (kind == 0) {
        std::vector<std::string> tags;
        if (below(2) == 0) {
          const auto& m = motifs[below(static_cast<int>(motifs.size()))];
          int start = below(static_cast<int>(m.size()) - 4);
          tags.assign(m.begin() + start, m.begin() + start + 5 + below(static_cast<int>(m.size()) - 4 - start));
        } else {
          int len = below(7);
          for (int t = 0; t < len; ++t) tags.push_back(vocab[below(static_cast<int>(vocab.size()))]);
        }
        out.push_back(Original(id(), acc, ts, tags));
      } else if (kind == 1) {
        out.push_back(Reply(id(), acc, ts, {"acct" + std::to_string(1000 + below(n_accounts))}));
      } else {
        out.push_back(Retweet(id(), acc, ts, "src" + std::to_string(below(pool))));
      }
    }
    for (std::int64_t ts : extra[a])
      out.push_back(Retweet(id(), acc, ts, "src" + std::to_string(below(pool))));
    // A reposted original makes the hashtag detector see the same account twice.
    if (below(5) == 0) {
      const auto& m = motifs[below(static_cast<int>(motifs.size()))];
      out.push_back(Original(id(), acc, kMay1 + 400000, m));
      out.push_back(Original(id(), acc, kMay1 + 400001, m));
    }
  }
  return out;
}

struct Planted {
  std::vector<TweetRecord> records;
  std::vector<std::vector<std::string>> clusters;  // planted member lists
  std::vector<std::string> background;
};

// n_accounts accounts; the first sum(sizes) form clusters whose members each
// post their cluster's private 5-tag run. Everyone else posts tags drawn from
// a shared pool of 4-tag runs, which can never produce a 5-window match.
inline Planted PlantedClusters(const std::vector<int>& sizes, int n_accounts,
                               std::uint64_t seed, int tweets_per_account = 2) {
  std::mt19937_64 gen(seed);
  Planted p;
  int next_account = 0, next_tweet = 0;
  auto account = [&] {
    char buf[16];
    std::snprintf(buf, sizeof buf, "u%06d", next_account++);
    return std::string(buf);
  };
  auto tweet = [&] { return "p" + std::to_string(next_tweet++); };
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    std::vector<std::string> run;
    for (int t = 0; t < 5; ++t) run.push_back("c" + std::to_string(c) + "tag" + std::to_string(t));
    std::vector<std::string> members;
    for (int m = 0; m < sizes[c]; ++m) {
      auto acc = account();
      members.push_back(acc);
      p.records.push_back(Original(tweet(), acc, kMay1 + static_cast<std::int64_t>(gen() % 86400),
                                   run, "campaign"));
      for (int k = 1; k < tweets_per_account; ++k)
        p.records.push_back(Original(tweet(), acc,
                                     kMay1 + static_cast<std::int64_t>(gen() % 864000),
                                     {"shared" + std::to_string(gen() % 50)}, "chatter"));
    }
    p.clusters.push_back(members);
  }
  // Background: runs of at most 4 consecutive tags per tweet, separated by a
  // tag unique to the tweet, so two accounts can share at most 4 in order.
  while (next_account < n_accounts) {
    auto acc = account();
    p.background.push_back(acc);
    for (int k = 0; k < tweets_per_account; ++k) {
      std::vector<std::string> tags;
      std::uint64_t base = gen() % 40;
      for (int t = 0; t < 4; ++t) tags.push_back("bg" + std::to_string(base + t));
      auto id = tweet();
      tags.push_back("own" + id);
      for (int t = 0; t < 4; ++t) tags.push_back("bg" + std::to_string((base + t) % 40));
      p.records.push_back(Original(id, acc, kMay1 + static_cast<std::int64_t>(gen() % 864000),
                                   tags, "background"));
    }
  }
  return p;
}

}  // namespace fixture

#endif  // CIBNET_TESTS_FIXTURES_H_
