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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "text.h"

using cibnet::NormalizeOptions;
using cibnet::NormalizeText;

TEST_CASE("normalize: worked examples") {
  CHECK(NormalizeText("Vote! http://x.co @alice", NormalizeOptions::All()) == "vote @user");
  NormalizeOptions keep_punct = NormalizeOptions::All();
  keep_punct.strip_punct_nonascii = false;
  CHECK(NormalizeText("Vote! http://x.co @alice", keep_punct) == "vote! @user");
  CHECK(NormalizeText("", NormalizeOptions::All()).empty());
  NormalizeOptions lower;
  lower.lowercase = true;
  CHECK(NormalizeText("BONJOUR", lower) == "bonjour");
  CHECK(NormalizeText("ÉLYSÉE", lower) == "élysée");
}

TEST_CASE("normalize: individual steps") {
  NormalizeOptions o;
  o.strip_urls = true;
  CHECK(NormalizeText("see https://t.co/x and WWW.foo.fr now", o) == "see and now");
  CHECK(NormalizeText("nothttp://a", o) == "nothttp://a");
  o = {};
  o.replace_mentions = true;
  CHECK(NormalizeText("hi @bob_1, @ alone", o) == "hi @user, @ alone");
  o = {};
  o.strip_hashtag_marks = true;
  CHECK(NormalizeText("#MacronLeaks ## #", o) == "MacronLeaks ## #");
  o = {};
  o.strip_punct_nonascii = true;
  CHECK(NormalizeText("a,b! c—d @x", o) == "ab cd @x");
  CHECK(NormalizeText("  a \t b\n", NormalizeOptions{}) == "a b");
}

TEST_CASE("normalize: flags round trip") {
  for (unsigned f = 0; f < 32; ++f) CHECK(NormalizeOptions::FromFlags(f).ToFlags() == f);
  CHECK(NormalizeOptions::All().ToFlags() == 31u);
}

TEST_CASE("normalize: idempotent for every option set") {
  const std::vector<std::string> pieces = {
      "a", "Z", "É", "ç", "é", "😀", " ", "  ", "\t", "@", "@@", "#", "##", "_", "1", "!",
      ",", ".", "http://", "https://", "www.", "HTTP://", "x", "@ab", "#tag", "-", "'", "/"};
  std::mt19937_64 gen(20170507);
  int failures = 0;
  for (unsigned flags = 0; flags < 32; ++flags) {
    auto opts = NormalizeOptions::FromFlags(flags);
    for (int trial = 0; trial < 1500; ++trial) {
      std::string s;
      int len = static_cast<int>(gen() % 14);
      for (int i = 0; i < len; ++i) s += pieces[gen() % pieces.size()];
      auto once = NormalizeText(s, opts);
      auto twice = NormalizeText(once, opts);
      if (once != twice) {
        if (++failures < 5) INFO("flags=" << flags << " input='" << s << "'");
        CHECK(once == twice);
      }
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("fold case and whitespace split") {
  CHECK(cibnet::FoldCase("MarIne2017 ÀÉÎ") == "marine2017 àéî");
  auto parts = cibnet::SplitWhitespace("  a  bc\td ");
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "a");
  CHECK(parts[1] == "bc");
  CHECK(parts[2] == "d");
}
