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

// Brute-force reference implementations used only by the tests. They are
// written from the definitions, not from the library code paths: all pairs
// instead of inverted indexes, dense vectors instead of sparse ones, O(n^2)
// rank and pair counts instead of sorting.

#ifndef CIBNET_TESTS_ORACLES_H_
#define CIBNET_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "corpus.h"

namespace oracle {

using Pair = std::pair<std::string, std::string>;
using Triple = std::tuple<std::string, std::string, std::string>;

inline Pair Canonical(const std::string& x, const std::string& y) {
  return x < y ? Pair{x, y} : Pair{y, x};
}

// Every (a, b, key) where both accounts have an original tweet containing the
// k-window `key`. Compares all account pairs.
inline std::set<Triple> HashtagTriples(const std::vector<cibnet::TweetRecord>& records,
                                       int k) {
  std::map<std::string, std::set<std::string>> keys;
  for (const auto& r : records) {
    keys[r.account_id];
    if (r.kind != cibnet::TweetKind::kOriginal) continue;
    for (std::size_t s = 0; s + k <= r.hashtags.size(); ++s) {
      std::string key;
      for (int t = 0; t < k; ++t) key += (t ? "|" : "") + r.hashtags[s + t];
      keys[r.account_id].insert(key);
    }
  }
  std::vector<std::string> accounts;
  for (const auto& [a, _] : keys) accounts.push_back(a);
  std::set<Triple> out;
  for (std::size_t i = 0; i < accounts.size(); ++i)
    for (std::size_t j = 0; j < accounts.size(); ++j) {
      if (i == j) continue;
      for (const auto& key : keys[accounts[i]])
        if (keys[accounts[j]].count(key)) {
          auto [a, b] = Canonical(accounts[i], accounts[j]);
          out.insert({a, b, key});
        }
    }
  return out;
}

// Dense tf-idf matrix. Columns are the distinct terms in ascending order, which
// is also the summation order of every dot product below.
struct Dense {
  std::vector<std::string> accounts;
  std::vector<std::vector<double>> rows;
};

inline Dense BuildDense(const std::map<std::string, std::map<std::string, long>>& tf_by_account,
                        const std::map<std::string, long>& events, long min_events,
                        bool numeric_terms) {
  Dense d;
  std::vector<const std::map<std::string, long>*> docs;
  for (const auto& [a, tf] : tf_by_account) {
    auto it = events.find(a);
    if (it == events.end() || it->second <= min_events) continue;
    d.accounts.push_back(a);
    docs.push_back(&tf);
  }
  auto term_less = [numeric_terms](const std::string& x, const std::string& y) {
    return numeric_terms ? std::stoll(x) < std::stoll(y) : x < y;
  };
  std::vector<std::string> terms;
  for (const auto* tf : docs)
    for (const auto& [t, _] : *tf) terms.push_back(t);
  std::sort(terms.begin(), terms.end(), term_less);
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  const double n = static_cast<double>(docs.size());
  for (const auto* tf : docs) {
    std::vector<double> row(terms.size(), 0.0);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      auto it = tf->find(terms[t]);
      if (it == tf->end()) continue;
      double df = 0;
      for (const auto* other : docs) df += other->count(terms[t]);
      row[t] = static_cast<double>(it->second) * std::log((1.0 + n) / (1.0 + df));
    }
    d.rows.push_back(std::move(row));
  }
  return d;
}

inline Dense RetweetDense(const std::vector<cibnet::TweetRecord>& records, long retweet_min) {
  std::map<std::string, std::map<std::string, long>> tf;
  std::map<std::string, long> events;
  for (const auto& r : records) {
    if (r.kind != cibnet::TweetKind::kRetweet) continue;
    ++tf[r.account_id][*r.retweeted_tweet_id];
    ++events[r.account_id];
  }
  return BuildDense(tf, events, retweet_min, false);
}

inline Dense TimeDense(const std::vector<cibnet::TweetRecord>& records, long bin_minutes,
                       long time_min) {
  std::map<std::string, std::map<std::string, long>> tf;
  std::map<std::string, long> events;
  const double width = static_cast<double>(bin_minutes * 60);
  for (const auto& r : records) {
    long long bin = static_cast<long long>(std::floor(static_cast<double>(r.timestamp) / width));
    ++tf[r.account_id][std::to_string(bin)];
    ++events[r.account_id];
  }
  return BuildDense(tf, events, time_min, true);
}

inline double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double DotDense(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0.0 && v[i] != 0.0) s += u[i] * v[i];
  return s;
}

struct ScoredPair {
  Pair pair;
  double dot;
  double cosine;
};

// All pairs with both norms positive.
inline std::vector<ScoredPair> AllPairs(const Dense& d) {
  std::vector<ScoredPair> out;
  for (std::size_t i = 0; i < d.rows.size(); ++i)
    for (std::size_t j = i + 1; j < d.rows.size(); ++j) {
      double ni = Norm(d.rows[i]), nj = Norm(d.rows[j]);
      if (ni == 0.0 || nj == 0.0) continue;
      double dot = DotDense(d.rows[i], d.rows[j]);
      double c = std::clamp(dot / (ni * nj), 0.0, 1.0);
      out.push_back({Canonical(d.accounts[i], d.accounts[j]), dot, c});
    }
  return out;
}

// Pairs whose similarity is among the top `frac` of nonzero-similarity pairs,
// nearest rank on the descending list, ties at the cutoff included.
inline std::set<Pair> RetweetPairs(const std::vector<cibnet::TweetRecord>& records,
                                   long retweet_min, double frac) {
  std::vector<ScoredPair> nonzero;
  for (const auto& p : AllPairs(RetweetDense(records, retweet_min)))
    if (p.dot > 0.0) nonzero.push_back(p);
  std::set<Pair> out;
  if (nonzero.empty()) return out;
  std::vector<double> sims;
  for (const auto& p : nonzero) sims.push_back(p.cosine);
  std::sort(sims.rbegin(), sims.rend());
  std::size_t k = 1;
  while (static_cast<double>(k) < frac * static_cast<double>(sims.size()) - 1e-9) ++k;
  double cutoff = sims[std::min(k, sims.size()) - 1];
  for (const auto& p : nonzero)
    if (p.cosine >= cutoff) out.insert(p.pair);
  return out;
}

inline std::set<Pair> TimePairs(const std::vector<cibnet::TweetRecord>& records,
                                long bin_minutes, long time_min, double threshold) {
  std::set<Pair> out;
  for (const auto& p : AllPairs(TimeDense(records, bin_minutes, time_min)))
    if (p.dot > 0.0 && p.cosine > threshold) out.insert(p.pair);
  return out;
}

// Components by repeated graph search from every unvisited node.
inline std::set<std::set<std::string>> Components(const std::vector<Pair>& edges) {
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& [a, b] : edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::set<std::string> seen;
  std::set<std::set<std::string>> out;
  for (const auto& [start, _] : adj) {
    if (seen.count(start)) continue;
    std::set<std::string> comp;
    std::vector<std::string> stack = {start};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      if (!seen.insert(v).second) continue;
      comp.insert(v);
      for (const auto& w : adj[v]) stack.push_back(w);
    }
    out.insert(comp);
  }
  return out;
}

// Rank = 1 + #smaller + (#equal - 1) / 2.
inline std::vector<double> Ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double smaller = 0, equal = 0;
    for (double y : x) {
      smaller += y < x[i];
      equal += y == x[i];
    }
    r[i] = 1.0 + smaller + (equal - 1.0) / 2.0;
  }
  return r;
}

inline double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// U of sample a: pairs (a_i, b_j) with a_i > b_j, ties counted one half.
inline double PairU(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0;
  for (double x : a)
    for (double y : b) u += x > y ? 1.0 : x == y ? 0.5 : 0.0;
  return u;
}

inline double PairAuc(const std::vector<double>& s, const std::vector<int>& l) {
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < s.size(); ++i) (l[i] ? pos : neg).push_back(s[i]);
  return PairU(pos, neg) / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

// Exact two-sided p of U for untied samples: enumerate every way to choose
// which na of the pooled positions belong to a.
inline double EnumeratedMannWhitneyP(const std::vector<double>& a,
                                     const std::vector<double>& b) {
  std::vector<double> pool(a);
  pool.insert(pool.end(), b.begin(), b.end());
  const std::size_t n = pool.size(), na = a.size();
  const double u_obs = PairU(a, b);
  double le = 0, ge = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != na) continue;
    std::vector<double> xa, xb;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? xa : xb).push_back(pool[i]);
    double u = PairU(xa, xb);
    total += 1;
    le += u <= u_obs;
    ge += u >= u_obs;
  }
  return std::min(1.0, 2.0 * std::min(le / total, ge / total));
}

inline double Kappa2x2(double n11, double n10, double n01, double n00) {
  double n = n11 + n10 + n01 + n00;
  double po = (n11 + n00) / n;
  double pe = ((n11 + n10) * (n11 + n01) + (n01 + n00) * (n10 + n00)) / (n * n);
  return (po - pe) / (1 - pe);
}

}  // namespace oracle

#endif  // CIBNET_TESTS_ORACLES_H_
