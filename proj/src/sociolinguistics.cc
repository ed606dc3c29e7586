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

#include "sociolinguistics.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "csv.h"
#include "error.h"
#include "text.h"

namespace cibnet {
namespace {

using G = CharacteristicGroup;

constexpr std::array<CharacteristicInfo, kNumCharacteristics> kRegistry = {{
    {G::kAttitude, "vote_for"},
    {G::kAttitude, "vote_against"},
    {G::kAttitude, "moral"},
    {G::kAttitude, "immoral"},
    {G::kConcern, "economy"},
    {G::kConcern, "terrorism"},
    {G::kConcern, "religion"},
    {G::kConcern, "immigration"},
    {G::kConcern, "international_alliances"},
    {G::kConcern, "russia_relations"},
    {G::kConcern, "national_identity"},
    {G::kConcern, "environment"},
    {G::kConcern, "misinformation"},
    {G::kConcern, "democracy"},
    {G::kEmotion, "anger_hate"},
    {G::kEmotion, "embarrassment_shame"},
    {G::kEmotion, "admiration_love"},
    {G::kEmotion, "optimism_hope"},
    {G::kEmotion, "joy_happiness"},
    {G::kEmotion, "pride_national"},
    {G::kEmotion, "fear_pessimism"},
    {G::kEmotion, "amusement"},
    {G::kEmotion, "positive_other"},
    {G::kEmotion, "negative_other"},
}};

std::string Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

std::string_view GroupName(CharacteristicGroup group) {
  switch (group) {
    case G::kAttitude: return "attitude";
    case G::kConcern: return "concern";
    case G::kEmotion: return "emotion";
  }
  return "attitude";
}

const std::array<CharacteristicInfo, kNumCharacteristics>& Characteristics() {
  return kRegistry;
}

std::optional<std::size_t> CharacteristicIndex(std::string_view name) {
  if (name == "sarcasm") name = "amusement";
  for (std::size_t i = 0; i < kRegistry.size(); ++i)
    if (kRegistry[i].name == name) return i;
  return std::nullopt;
}

void CharacteristicTable::Add(std::string tweet_id, const ConfidenceVector& values) {
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (!(values[c] >= 0.0 && values[c] <= 1.0))
      throw ValidationError("tweet " + tweet_id + ", column " +
                            std::string(kRegistry[c].name) + ": value " +
                            csv::FormatNumber(values[c]) + " outside [0, 1]");
  }
  auto [it, inserted] = index_.try_emplace(tweet_id, ids_.size());
  if (!inserted) throw ValidationError("duplicate tweet_id " + tweet_id);
  ids_.push_back(std::move(tweet_id));
  rows_.push_back(values);
}

const ConfidenceVector* CharacteristicTable::Find(std::string_view tweet_id) const {
  auto it = index_.find(std::string(tweet_id));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

CharacteristicTable LoadConfidences(std::istream& in) {
  CharacteristicTable table(Provenance::kExternal);
  std::vector<std::string> row;
  if (!csv::ReadRow(in, row)) throw ValidationError("confidence file is empty");
  if (row.empty() || Trim(row[0]) != "tweet_id")
    throw ValidationError("confidence header must start with tweet_id");

  std::vector<std::size_t> column_of(row.size(), 0);
  std::vector<bool> seen(kNumCharacteristics, false);
  for (std::size_t i = 1; i < row.size(); ++i) {
    std::string name = Trim(row[i]);
    auto idx = CharacteristicIndex(name);
    if (!idx || name == "sarcasm")
      throw ValidationError("unknown column '" + name + "'");
    if (seen[*idx]) throw ValidationError("duplicate column '" + name + "'");
    seen[*idx] = true;
    column_of[i] = *idx;
  }
  std::string absent;
  for (std::size_t c = 0; c < kNumCharacteristics; ++c)
    if (!seen[c]) absent += (absent.empty() ? "" : ", ") + std::string(kRegistry[c].name);
  if (!absent.empty()) throw ValidationError("missing columns: " + absent);

  std::size_t line = 1;
  while (csv::ReadRow(in, row)) {
    ++line;
    if (row.size() == 1 && Trim(row[0]).empty()) continue;
    if (row.size() != kNumCharacteristics + 1)
      throw ParseError(line, "expected " + std::to_string(kNumCharacteristics + 1) +
                                 " columns, got " + std::to_string(row.size()));
    ConfidenceVector values{};
    std::size_t missing = 0;
    for (std::size_t i = 1; i < row.size(); ++i) {
      const auto& name = kRegistry[column_of[i]].name;
      if (Trim(row[i]).empty()) {
        ++missing;
        continue;
      }
      auto v = csv::ParseNumber(row[i]);
      if (!v)
        throw ParseError(line, "column " + std::string(name) + ": not a number '" +
                                   row[i] + "'");
      if (!(*v >= 0.0 && *v <= 1.0))
        throw ParseError(line, "column " + std::string(name) + ": value " + row[i] +
                                   " outside [0, 1]");
      values[column_of[i]] = *v;
    }
    std::string id = Trim(row[0]);
    if (id.empty()) throw ParseError(line, "empty tweet_id");
    if (table.Find(id)) throw ParseError(line, "duplicate tweet_id " + id);
    table.Add(std::move(id), values);
    table.add_missing_values(missing);
  }
  return table;
}

CharacteristicTable LoadConfidencesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return LoadConfidences(in);
}

void WriteConfidencesCsv(const CharacteristicTable& table, std::ostream& out) {
  out << "tweet_id";
  for (const auto& c : kRegistry) out << ',' << c.name;
  out << '\n';
  for (std::size_t r = 0; r < table.size(); ++r) {
    out << csv::Escape(table.tweet_ids()[r]);
    for (double v : table.rows()[r]) out << ',' << csv::FormatNumber(v);
    out << '\n';
  }
}

std::vector<std::string> MatchTokens(std::string_view text) {
  NormalizeOptions opts;
  opts.strip_urls = true;
  opts.replace_mentions = true;
  opts.strip_hashtag_marks = true;
  opts.lowercase = true;
  std::string s = NormalizeText(text, opts);
  for (char& ch : s) {
    auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::ispunct(c) && c != '@') ch = ' ';
  }
  std::vector<std::string> tokens;
  for (auto t : SplitWhitespace(s)) tokens.emplace_back(t);
  return tokens;
}

void Lexicon::Add(std::size_t characteristic, std::string_view phrase,
                  double weight, std::string language) {
  if (characteristic >= kNumCharacteristics)
    throw ValidationError("characteristic index out of range");
  if (!(weight > 0.0 && weight <= 1.0))
    throw ValidationError("lexicon weight for '" + std::string(phrase) +
                          "' must be in (0, 1]");
  auto tokens = MatchTokens(phrase);
  if (tokens.empty())
    throw ValidationError("lexicon phrase '" + std::string(phrase) + "' is empty");
  entries_.push_back({characteristic, std::move(tokens), weight, std::move(language)});
}

Lexicon Lexicon::FromCsv(std::istream& in) {
  Lexicon lex;
  std::vector<std::string> row;
  if (!csv::ReadRow(in, row)) return lex;
  if (row.size() < 3 || Trim(row[0]) != "characteristic" ||
      Trim(row[1]) != "phrase" || Trim(row[2]) != "weight")
    throw ValidationError(
        "lexicon header must be characteristic,phrase,weight[,language]");
  std::size_t line = 1;
  while (csv::ReadRow(in, row)) {
    ++line;
    if (row.size() == 1 && Trim(row[0]).empty()) continue;
    if (row.size() < 3 || row.size() > 4)
      throw ParseError(line, "expected 3 or 4 columns");
    auto idx = CharacteristicIndex(Trim(row[0]));
    if (!idx) throw ParseError(line, "unknown characteristic '" + row[0] + "'");
    auto w = csv::ParseNumber(row[2]);
    if (!w) throw ParseError(line, "weight is not a number");
    try {
      lex.Add(*idx, row[1], *w, row.size() == 4 ? Trim(row[3]) : std::string());
    } catch (const ValidationError& e) {
      throw ParseError(line, e.what());
    }
  }
  return lex;
}

Lexicon Lexicon::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return FromCsv(in);
}

extern const char kDefaultLexiconCsv[];

Lexicon Lexicon::Default() {
  std::istringstream in(kDefaultLexiconCsv);
  return FromCsv(in);
}

ConfidenceVector LexiconScore(const TweetRecord& tweet, const Lexicon& lexicon) {
  // Accumulate prod(1 - w) per characteristic.
  ConfidenceVector keep;
  keep.fill(1.0);
  auto tokens = MatchTokens(tweet.text);
  for (const auto& entry : lexicon.entries()) {
    if (!entry.language.empty() && entry.language != tweet.language) continue;
    const auto& phrase = entry.tokens;
    if (phrase.size() > tokens.size()) continue;
    auto hit = std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end());
    if (hit != tokens.end()) keep[entry.characteristic] *= 1.0 - entry.weight;
  }
  ConfidenceVector out;
  for (std::size_t c = 0; c < kNumCharacteristics; ++c) out[c] = 1.0 - keep[c];
  return out;
}

CharacteristicTable ScoreCorpus(const Corpus& corpus, const Lexicon& lexicon,
                                int threads) {
  std::vector<ConfidenceVector> scores(corpus.size());
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      scores[i] = LexiconScore(corpus[i], lexicon);
  };
  std::size_t workers =
      std::min<std::size_t>(std::max(1, threads), std::max<std::size_t>(1, corpus.size()));
  if (workers <= 1) {
    run(0, corpus.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (corpus.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t b = w * chunk, e = std::min(corpus.size(), b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
    for (auto& t : pool) t.join();
  }
  CharacteristicTable table(Provenance::kLexicon);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    // Duplicate tweet ids keep their first score.
    if (!table.Find(corpus[i].tweet_id)) table.Add(corpus[i].tweet_id, scores[i]);
  }
  return table;
}

LabelVector Binarize(const ConfidenceVector& confidences, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw ValidationError("binarization threshold must be in (0, 1)");
  LabelVector labels{};
  for (std::size_t c = 0; c < kNumCharacteristics; ++c)
    labels[c] = confidences[c] >= threshold ? 1 : 0;
  return labels;
}

std::vector<LabelVector> Binarize(const CharacteristicTable& table,
                                  double threshold) {
  std::vector<LabelVector> out;
  out.reserve(table.size());
  for (const auto& row : table.rows()) out.push_back(Binarize(row, threshold));
  return out;
}

}  // namespace cibnet
