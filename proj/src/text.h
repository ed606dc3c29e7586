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

#ifndef CIBNET_TEXT_H_
#define CIBNET_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace cibnet {

// Text clean-up applied before duplicate detection and lexicon matching.
// Enabled steps always run in declaration order; whitespace is collapsed to
// single spaces and trimmed at the end.
struct NormalizeOptions {
  bool strip_urls = false;
  bool replace_mentions = false;     // "@name" -> "@user"
  bool strip_hashtag_marks = false;  // "#tag" -> "tag"
  bool lowercase = false;            // ASCII and Latin-1 letters
  bool strip_punct_nonascii = false;

  static NormalizeOptions All();

  // Bit i corresponds to the i-th field above.
  unsigned ToFlags() const;
  static NormalizeOptions FromFlags(unsigned flags);
};

std::string NormalizeText(std::string_view text, const NormalizeOptions& opts);

// Lowercases ASCII letters and the two-byte UTF-8 Latin-1 capitals
// (U+00C0..U+00DE except U+00D7). Other bytes pass through.
std::string FoldCase(std::string_view text);

// Splits on ASCII whitespace.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

}  // namespace cibnet

#endif  // CIBNET_TEXT_H_
