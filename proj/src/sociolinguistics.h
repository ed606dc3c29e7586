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

#ifndef CIBNET_SOCIOLINGUISTICS_H_
#define CIBNET_SOCIOLINGUISTICS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpus.h"

namespace cibnet {

enum class CharacteristicGroup : std::uint8_t { kAttitude, kConcern, kEmotion };

std::string_view GroupName(CharacteristicGroup group);

struct CharacteristicInfo {
  CharacteristicGroup group;
  std::string_view name;
};

inline constexpr std::size_t kNumCharacteristics = 24;

// Fixed registry; its order is the column order of every confidence file.
const std::array<CharacteristicInfo, kNumCharacteristics>& Characteristics();

// Also resolves the alias "sarcasm" to amusement.
std::optional<std::size_t> CharacteristicIndex(std::string_view name);

using ConfidenceVector = std::array<double, kNumCharacteristics>;
using LabelVector = std::array<std::uint8_t, kNumCharacteristics>;

enum class Provenance { kExternal, kLexicon };

// Per-tweet confidences in [0, 1], kept in insertion order.
class CharacteristicTable {
 public:
  explicit CharacteristicTable(Provenance provenance = Provenance::kExternal)
      : provenance_(provenance) {}

  // Throws ValidationError on a duplicate id or a value outside [0, 1].
  void Add(std::string tweet_id, const ConfidenceVector& values);

  const ConfidenceVector* Find(std::string_view tweet_id) const;

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& tweet_ids() const { return ids_; }
  const std::vector<ConfidenceVector>& rows() const { return rows_; }
  Provenance provenance() const { return provenance_; }

  // Blank cells read as 0.0 and are counted here.
  std::size_t missing_values() const { return missing_values_; }
  void add_missing_values(std::size_t n) { missing_values_ += n; }

 private:
  Provenance provenance_;
  std::vector<std::string> ids_;
  std::vector<ConfidenceVector> rows_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t missing_values_ = 0;
};

// CSV with header tweet_id plus all 24 characteristic columns in any order.
CharacteristicTable LoadConfidences(std::istream& in);
CharacteristicTable LoadConfidencesFile(const std::string& path);
void WriteConfidencesCsv(const CharacteristicTable& table, std::ostream& out);

struct LexiconEntry {
  std::size_t characteristic;
  std::vector<std::string> tokens;  // normalized phrase
  double weight;                    // (0, 1]
  std::string language;             // empty matches any language
};

class Lexicon {
 public:
  void Add(std::size_t characteristic, std::string_view phrase, double weight,
           std::string language = {});

  const std::vector<LexiconEntry>& entries() const { return entries_; }

  // CSV `characteristic,phrase,weight[,language]` with a header row.
  static Lexicon FromCsv(std::istream& in);
  static Lexicon FromFile(const std::string& path);
  // Small built-in French/English phrase list.
  static Lexicon Default();

 private:
  std::vector<LexiconEntry> entries_;
};

// Tokens used for phrase matching: URLs dropped, mentions replaced, hashtag
// marks removed, case folded, ASCII punctuation treated as a separator.
std::vector<std::string> MatchTokens(std::string_view text);

// Noisy-OR over distinct matched phrases: 1 - prod(1 - weight).
ConfidenceVector LexiconScore(const TweetRecord& tweet, const Lexicon& lexicon);

CharacteristicTable ScoreCorpus(const Corpus& corpus, const Lexicon& lexicon,
                                int threads = 1);

// label = confidence >= threshold; threshold must lie in (0, 1).
LabelVector Binarize(const ConfidenceVector& confidences, double threshold = 0.5);
std::vector<LabelVector> Binarize(const CharacteristicTable& table,
                                  double threshold = 0.5);

}  // namespace cibnet

#endif  // CIBNET_SOCIOLINGUISTICS_H_
