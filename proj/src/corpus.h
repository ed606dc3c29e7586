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

#ifndef CIBNET_CORPUS_H_
#define CIBNET_CORPUS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cibnet {

enum class TweetKind : std::uint8_t { kOriginal = 0, kReply = 1, kRetweet = 2 };

inline constexpr std::size_t kNumTweetKinds = 3;

std::string_view KindName(TweetKind kind);
std::optional<TweetKind> ParseKind(std::string_view name);

// UTC seconds since the epoch.
using Timestamp = std::int64_t;
// UTC days since the epoch.
using Day = std::int64_t;

Day DayOf(Timestamp ts);
std::string FormatDay(Day day);                // YYYY-MM-DD
std::optional<Day> ParseDay(std::string_view text);

// Accepts epoch seconds (integer or decimal string) or ISO-8601
// "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|+HH:MM|-HH:MM]" (a bare date is midnight).
std::optional<Timestamp> ParseTimestamp(std::string_view text);
std::string FormatTimestamp(Timestamp ts);     // YYYY-MM-DDTHH:MM:SSZ

struct TweetRecord {
  std::string tweet_id;
  std::string account_id;
  Timestamp timestamp = 0;
  TweetKind kind = TweetKind::kOriginal;
  std::string text;
  std::vector<std::string> hashtags;  // lowercased, in-text order
  std::string language = "und";
  std::optional<std::string> retweeted_tweet_id;
  std::optional<std::string> retweeted_account_id;
  std::vector<std::string> mentions;

  bool operator==(const TweetRecord&) const = default;
};

// Parses one JSONL line. Throws ValidationError on schema violations.
TweetRecord ParseRecord(std::string_view line);

// Canonical single-line JSON; ParseRecord(SerializeRecord(r)) == r.
std::string SerializeRecord(const TweetRecord& record);

struct ParseReport {
  std::size_t lines = 0;    // non-blank lines seen
  std::size_t records = 0;
  std::size_t skipped = 0;  // malformed lines dropped in lenient mode
  std::vector<std::string> errors;  // first few messages, for diagnostics
};

struct ParseOptions {
  bool strict = false;
  int threads = 1;
  std::size_t batch_lines = 1 << 15;
};

// Streams records in input order. In strict mode the first malformed line
// throws ParseError carrying its 1-based line number.
void ForEachRecord(std::istream& in, const ParseOptions& opts,
                   const std::function<void(TweetRecord&&)>& sink,
                   ParseReport* report = nullptr);

// Immutable record store with per-account and per-day indices.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<TweetRecord> records);

  const std::vector<TweetRecord>& records() const { return records_; }
  const TweetRecord& operator[](std::size_t i) const { return records_[i]; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const std::map<std::string, std::vector<std::size_t>>& account_index() const {
    return account_index_;
  }
  const std::map<Day, std::vector<std::size_t>>& day_index() const {
    return day_index_;
  }

 private:
  std::vector<TweetRecord> records_;
  std::map<std::string, std::vector<std::size_t>> account_index_;
  std::map<Day, std::vector<std::size_t>> day_index_;
};

Corpus ParseCorpus(std::istream& in, const ParseOptions& opts,
                   ParseReport* report = nullptr);
Corpus LoadCorpus(const std::string& path, const ParseOptions& opts,
                  ParseReport* report = nullptr);
void WriteCorpus(const Corpus& corpus, std::ostream& out);

struct DailyVolume {
  Day day;
  std::array<std::size_t, kNumTweetKinds> counts{};  // indexed by TweetKind

  std::size_t total() const { return counts[0] + counts[1] + counts[2]; }
};

std::vector<DailyVolume> ComputeDailyVolume(const Corpus& corpus);
void WriteDailyVolumeCsv(const std::vector<DailyVolume>& series,
                         std::ostream& out);

}  // namespace cibnet

#endif  // CIBNET_CORPUS_H_
