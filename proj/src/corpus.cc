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

#include "corpus.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include "error.h"
#include "json.hpp"
#include "text.h"

namespace cibnet {
namespace {

using nlohmann::json;

constexpr std::int64_t kSecondsPerDay = 86400;
constexpr std::size_t kMaxReportedErrors = 20;

std::int64_t FloorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool ReadDigits(std::string_view s, std::size_t& pos, std::size_t count,
                int& value) {
  if (pos + count > s.size()) return false;
  value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  pos += count;
  return true;
}

bool Expect(std::string_view s, std::size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c) return false;
  ++pos;
  return true;
}

std::optional<Timestamp> ParseIso8601(std::string_view s) {
  using namespace std::chrono;
  std::size_t pos = 0;
  int y, mo, d;
  if (!ReadDigits(s, pos, 4, y) || !Expect(s, pos, '-') ||
      !ReadDigits(s, pos, 2, mo) || !Expect(s, pos, '-') ||
      !ReadDigits(s, pos, 2, d))
    return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  std::int64_t secs =
      static_cast<std::int64_t>(sys_days{ymd}.time_since_epoch().count()) *
      kSecondsPerDay;
  if (pos == s.size()) return secs;
  if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
  ++pos;
  int hh, mm, ss;
  if (!ReadDigits(s, pos, 2, hh) || !Expect(s, pos, ':') ||
      !ReadDigits(s, pos, 2, mm) || !Expect(s, pos, ':') ||
      !ReadDigits(s, pos, 2, ss))
    return std::nullopt;
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  secs += hh * 3600 + mm * 60 + ss;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return std::nullopt;
  }
  if (pos == s.size()) return secs;
  if (s[pos] == 'Z' && pos + 1 == s.size()) return secs;
  if (s[pos] == '+' || s[pos] == '-') {
    int sign = s[pos] == '+' ? 1 : -1;
    ++pos;
    int oh, om = 0;
    if (!ReadDigits(s, pos, 2, oh)) return std::nullopt;
    if (pos < s.size()) {
      Expect(s, pos, ':');
      if (!ReadDigits(s, pos, 2, om)) return std::nullopt;
    }
    if (pos != s.size() || oh > 23 || om > 59) return std::nullopt;
    return secs - sign * (oh * 3600 + om * 60);
  }
  return std::nullopt;
}

std::string RequireId(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null())
    throw ValidationError(std::string("missing field '") + field + "'");
  if (it->is_string()) {
    auto value = it->get<std::string>();
    if (value.empty())
      throw ValidationError(std::string("empty field '") + field + "'");
    return value;
  }
  if (it->is_number_integer()) return it->dump();
  throw ValidationError(std::string("field '") + field +
                        "' must be a string or integer");
}

std::optional<std::string> OptionalId(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return RequireId(obj, field);
}

std::vector<std::string> StringList(const json& obj, const char* field) {
  std::vector<std::string> out;
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array())
    throw ValidationError(std::string("field '") + field +
                          "' must be an array");
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string())
      throw ValidationError(std::string("field '") + field +
                            "' must contain strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

TweetRecord ParseLineOrThrow(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ValidationError("record is not a JSON object");

  TweetRecord r;
  r.tweet_id = RequireId(obj, "tweet_id");
  r.account_id = RequireId(obj, "account_id");

  auto ts = obj.find("timestamp");
  if (ts == obj.end() || ts->is_null())
    throw ValidationError("missing field 'timestamp'");
  std::optional<Timestamp> parsed;
  if (ts->is_number_integer()) {
    parsed = ts->get<std::int64_t>();
  } else if (ts->is_number_float()) {
    double v = ts->get<double>();
    if (std::isfinite(v)) parsed = static_cast<Timestamp>(std::floor(v));
  } else if (ts->is_string()) {
    parsed = ParseTimestamp(ts->get<std::string>());
  }
  if (!parsed) throw ValidationError("unparseable timestamp " + ts->dump());
  r.timestamp = *parsed;

  auto kind = obj.find("kind");
  if (kind == obj.end() || !kind->is_string())
    throw ValidationError("missing field 'kind'");
  auto k = ParseKind(kind->get<std::string>());
  if (!k) throw ValidationError("unknown kind '" + kind->get<std::string>() + "'");
  r.kind = *k;

  auto text = obj.find("text");
  if (text != obj.end() && !text->is_null()) {
    if (!text->is_string()) throw ValidationError("field 'text' must be a string");
    r.text = text->get<std::string>();
  }

  for (auto& tag : StringList(obj, "hashtags")) {
    std::size_t start = tag.find_first_not_of('#');
    if (start == std::string::npos)
      throw ValidationError("empty hashtag");
    r.hashtags.push_back(FoldCase(std::string_view(tag).substr(start)));
  }

  auto lang = obj.find("language");
  if (lang != obj.end() && !lang->is_null()) {
    if (!lang->is_string())
      throw ValidationError("field 'language' must be a string");
    r.language = lang->get<std::string>();
    if (r.language.empty()) r.language = "und";
  }

  r.retweeted_tweet_id = OptionalId(obj, "retweeted_tweet_id");
  r.retweeted_account_id = OptionalId(obj, "retweeted_account_id");
  r.mentions = StringList(obj, "mentions");

  bool is_retweet = r.kind == TweetKind::kRetweet;
  if (is_retweet != r.retweeted_tweet_id.has_value())
    throw ValidationError(
        "kind 'retweet' requires retweeted_tweet_id and vice versa");
  if (!is_retweet && r.retweeted_account_id)
    throw ValidationError("retweeted_account_id set on a non-retweet");
  return r;
}

}  // namespace

std::string_view KindName(TweetKind kind) {
  switch (kind) {
    case TweetKind::kOriginal: return "original";
    case TweetKind::kReply: return "reply";
    case TweetKind::kRetweet: return "retweet";
  }
  return "original";
}

std::optional<TweetKind> ParseKind(std::string_view name) {
  if (name == "original") return TweetKind::kOriginal;
  if (name == "reply") return TweetKind::kReply;
  if (name == "retweet") return TweetKind::kRetweet;
  return std::nullopt;
}

Day DayOf(Timestamp ts) { return FloorDiv(ts, kSecondsPerDay); }

std::string FormatDay(Day d) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{days{d}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

std::optional<Day> ParseDay(std::string_view text) {
  if (text.size() != 10) return std::nullopt;
  auto ts = ParseIso8601(text);
  if (!ts) return std::nullopt;
  return DayOf(*ts);
}

std::optional<Timestamp> ParseTimestamp(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string_view body = text.front() == '-' ? text.substr(1) : text;
  bool numeric = !body.empty() && body.find_first_not_of("0123456789.") ==
                                      std::string_view::npos;
  if (!numeric) return ParseIso8601(text);
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    return std::nullopt;
  return static_cast<Timestamp>(std::floor(v));
}

std::string FormatTimestamp(Timestamp ts) {
  Day d = DayOf(ts);
  std::int64_t rem = ts - d * kSecondsPerDay;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", FormatDay(d).c_str(),
                int(rem / 3600), int(rem / 60 % 60), int(rem % 60));
  return buf;
}

TweetRecord ParseRecord(std::string_view line) { return ParseLineOrThrow(line); }

std::string SerializeRecord(const TweetRecord& r) {
  json obj = json::object();
  obj["tweet_id"] = r.tweet_id;
  obj["account_id"] = r.account_id;
  obj["timestamp"] = r.timestamp;
  obj["kind"] = std::string(KindName(r.kind));
  obj["text"] = r.text;
  obj["hashtags"] = r.hashtags;
  obj["language"] = r.language;
  obj["retweeted_tweet_id"] =
      r.retweeted_tweet_id ? json(*r.retweeted_tweet_id) : json(nullptr);
  obj["retweeted_account_id"] =
      r.retweeted_account_id ? json(*r.retweeted_account_id) : json(nullptr);
  obj["mentions"] = r.mentions;
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

void ForEachRecord(std::istream& in, const ParseOptions& opts,
                   const std::function<void(TweetRecord&&)>& sink,
                   ParseReport* report) {
  ParseReport local;
  ParseReport& rep = report ? *report : local;
  const std::size_t batch_size = std::max<std::size_t>(1, opts.batch_lines);
  const int threads = std::max(1, opts.threads);

  struct Slot {
    std::optional<TweetRecord> record;
    std::string error;
  };
  std::vector<std::string> lines;
  std::vector<std::size_t> line_numbers;
  std::vector<Slot> slots;
  std::size_t line_no = 0;
  std::string line;
  bool eof = false;

  while (!eof) {
    lines.clear();
    line_numbers.clear();
    while (lines.size() < batch_size) {
      if (!std::getline(in, line)) {
        eof = true;
        break;
      }
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      lines.push_back(std::move(line));
      line_numbers.push_back(line_no);
    }
    if (in.bad()) throw IoError("read failure after line " + std::to_string(line_no));
    if (lines.empty()) continue;

    slots.assign(lines.size(), Slot{});
    auto parse_range = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          slots[i].record = ParseLineOrThrow(lines[i]);
        } catch (const ValidationError& e) {
          slots[i].error = e.what();
        }
      }
    };
    std::size_t workers = std::min<std::size_t>(threads, lines.size());
    if (workers <= 1) {
      parse_range(0, lines.size());
    } else {
      std::vector<std::thread> pool;
      std::size_t chunk = (lines.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        std::size_t b = w * chunk, e = std::min(lines.size(), b + chunk);
        if (b < e) pool.emplace_back(parse_range, b, e);
      }
      for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < slots.size(); ++i) {
      ++rep.lines;
      if (slots[i].record) {
        ++rep.records;
        sink(std::move(*slots[i].record));
        continue;
      }
      if (opts.strict) throw ParseError(line_numbers[i], slots[i].error);
      ++rep.skipped;
      if (rep.errors.size() < kMaxReportedErrors)
        rep.errors.push_back("line " + std::to_string(line_numbers[i]) + ": " +
                             slots[i].error);
    }
  }
}

Corpus::Corpus(std::vector<TweetRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    account_index_[records_[i].account_id].push_back(i);
    day_index_[DayOf(records_[i].timestamp)].push_back(i);
  }
}

Corpus ParseCorpus(std::istream& in, const ParseOptions& opts,
                   ParseReport* report) {
  std::vector<TweetRecord> records;
  ForEachRecord(in, opts,
                [&](TweetRecord&& r) { records.push_back(std::move(r)); },
                report);
  return Corpus(std::move(records));
}

Corpus LoadCorpus(const std::string& path, const ParseOptions& opts,
                  ParseReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return ParseCorpus(in, opts, report);
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& r : corpus.records()) out << SerializeRecord(r) << '\n';
}

std::vector<DailyVolume> ComputeDailyVolume(const Corpus& corpus) {
  std::vector<DailyVolume> series;
  series.reserve(corpus.day_index().size());
  for (const auto& [day, idx] : corpus.day_index()) {
    DailyVolume v{day, {}};
    for (std::size_t i : idx) ++v.counts[static_cast<int>(corpus[i].kind)];
    series.push_back(v);
  }
  return series;
}

void WriteDailyVolumeCsv(const std::vector<DailyVolume>& series,
                         std::ostream& out) {
  out << "day,original,reply,retweet\n";
  for (const auto& v : series)
    out << FormatDay(v.day) << ',' << v.counts[0] << ',' << v.counts[1] << ','
        << v.counts[2] << '\n';
}

}  // namespace cibnet
