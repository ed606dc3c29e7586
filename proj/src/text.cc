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

#include "text.h"

#include <cctype>

namespace cibnet {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsAsciiWord(unsigned char c) { return std::isalnum(c) || c == '_'; }

// Hashtags may carry accented letters, so any non-ASCII byte counts.
bool IsTagChar(unsigned char c) { return IsAsciiWord(c) || c >= 0x80; }

bool StartsWithNoCase(std::string_view s, std::size_t pos,
                      std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i])
      return false;
  }
  return true;
}

std::string StripUrls(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    bool boundary =
        i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1]));
    if (boundary && (StartsWithNoCase(s, i, "http://") ||
                     StartsWithNoCase(s, i, "https://") ||
                     StartsWithNoCase(s, i, "www."))) {
      while (i < s.size() && !IsSpace(s[i])) ++i;
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::string ReplaceMentions(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '@' && i + 1 < s.size() && IsAsciiWord(s[i + 1])) {
      out += "@user";
      ++i;
      while (i < s.size() && IsAsciiWord(s[i])) ++i;
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

// A run of '#' directly before a tag character is dropped as a whole, unless
// the run follows '@' (dropping it there would manufacture a new mention).
std::string StripHashtagMarks(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '#') {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t end = i;
    while (end < s.size() && s[end] == '#') ++end;
    bool after_at = i > 0 && s[i - 1] == '@';
    bool before_tag = end < s.size() && IsTagChar(s[end]);
    if (!before_tag || after_at) out.append(s.substr(i, end - i));
    i = end;
  }
  return out;
}

// '@' survives only when it still introduces a word, so "@user" is kept.
std::string StripPunctNonAscii(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c >= 0x80) continue;
    if (c == '@') {
      if (i + 1 < s.size() && std::isalnum(static_cast<unsigned char>(s[i + 1])))
        out.push_back('@');
      continue;
    }
    if (std::ispunct(c)) continue;
    out.push_back(static_cast<char>(c));
  }
  return out;
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char ch : s) {
    if (IsSpace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

}  // namespace

NormalizeOptions NormalizeOptions::All() {
  return {true, true, true, true, true};
}

unsigned NormalizeOptions::ToFlags() const {
  return (strip_urls ? 1u : 0u) | (replace_mentions ? 2u : 0u) |
         (strip_hashtag_marks ? 4u : 0u) | (lowercase ? 8u : 0u) |
         (strip_punct_nonascii ? 16u : 0u);
}

NormalizeOptions NormalizeOptions::FromFlags(unsigned flags) {
  return {(flags & 1u) != 0, (flags & 2u) != 0, (flags & 4u) != 0,
          (flags & 8u) != 0, (flags & 16u) != 0};
}

std::string FoldCase(std::string_view text) {
  std::string out(text);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + ('a' - 'A'));
    } else if (c == 0xC3 && i + 1 < out.size()) {
      auto next = static_cast<unsigned char>(out[i + 1]);
      if (next >= 0x80 && next <= 0x9E && next != 0x97)
        out[i + 1] = static_cast<char>(next + 0x20);
      ++i;
    }
  }
  return out;
}

namespace {

std::string NormalizeOnce(std::string_view text, const NormalizeOptions& opts) {
  std::string s(text);
  if (opts.strip_urls) s = StripUrls(s);
  if (opts.replace_mentions) s = ReplaceMentions(s);
  if (opts.strip_hashtag_marks) s = StripHashtagMarks(s);
  if (opts.lowercase) s = FoldCase(s);
  if (opts.strip_punct_nonascii) s = StripPunctNonAscii(s);
  return CollapseWhitespace(s);
}

}  // namespace

// Later steps can splice characters onto a replaced mention or rebuild a URL
// prefix, so the single pass is repeated until it stops changing the text.
std::string NormalizeText(std::string_view text, const NormalizeOptions& opts) {
  std::string s = NormalizeOnce(text, opts);
  for (std::string next; (next = NormalizeOnce(s, opts)) != s;) s = std::move(next);
  return s;
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) parts.push_back(text.substr(start, i - start));
  }
  return parts;
}

}  // namespace cibnet
