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

#include <sstream>
#include <string>
#include <vector>

#include "corpus.h"
#include "doctest.h"
#include "error.h"
#include "fixtures.h"

using namespace cibnet;

namespace {

std::string Line(const std::string& id, const std::string& account, const std::string& ts,
                 const std::string& kind, const std::string& extra = "") {
  return R"({"tweet_id":")" + id + R"(","account_id":")" + account + R"(","timestamp":)" + ts +
         R"(,"kind":")" + kind + R"(","text":"t","hashtags":[],"mentions":[])" + extra + "}\n";
}

Corpus Parse(const std::string& text, bool strict = false, ParseReport* rep = nullptr,
             int threads = 1, std::size_t batch = 1 << 15) {
  std::istringstream in(text);
  ParseOptions o;
  o.strict = strict;
  o.threads = threads;
  o.batch_lines = batch;
  return ParseCorpus(in, o, rep);
}

}  // namespace

TEST_CASE("parse: empty stream") {
  ParseReport rep;
  auto c = Parse("", false, &rep);
  CHECK(c.empty());
  CHECK(c.account_index().empty());
  CHECK(c.day_index().empty());
  CHECK(rep.skipped == 0);
}

TEST_CASE("parse: lenient skips, strict reports the line") {
  std::string text = Line("1", "a", "1494000000", "original") +
                     Line("2", "a", "1494000001", "original") + "{not json\n" +
                     Line("3", "b", "1494000002", "original");
  ParseReport rep;
  auto c = Parse(text, false, &rep);
  CHECK(c.size() == 3);
  CHECK(rep.skipped == 1);
  CHECK(rep.records == 3);
  try {
    Parse(text, true);
    FAIL("strict parse accepted a malformed line");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("parse: schema violations") {
  auto bad = [](const std::string& line) {
    std::istringstream in(line);
    ParseOptions o;
    o.strict = true;
    CHECK_THROWS_AS(ParseCorpus(in, o), ParseError);
  };
  bad(Line("1", "a", "1494000000", "retweet"));  // retweet without target
  bad(Line("1", "a", "1494000000", "original", R"(,"retweeted_tweet_id":"9")"));
  bad(Line("1", "a", "\"yesterday\"", "original"));
  bad(Line("1", "a", "1494000000", "quote"));
  bad(R"({"account_id":"a","timestamp":1,"kind":"original","text":"","hashtags":[]})");
  bad(Line("1", "", "1494000000", "original"));
}

TEST_CASE("parse: field handling") {
  auto c = Parse(
      R"({"tweet_id":17,"account_id":"a","timestamp":"2017-05-07T12:30:00+02:00","kind":"retweet","text":"RT","hashtags":["#Macron","LePen","macron"],"mentions":["x"],"retweeted_tweet_id":5,"retweeted_account_id":"b","extra":{"ignored":true}})"
      "\n");
  REQUIRE(c.size() == 1);
  const auto& r = c[0];
  CHECK(r.tweet_id == "17");
  CHECK(r.timestamp == 1494153000);
  CHECK(r.hashtags == std::vector<std::string>{"macron", "lepen", "macron"});
  CHECK(r.language == "und");
  CHECK(*r.retweeted_tweet_id == "5");
  CHECK(*r.retweeted_account_id == "b");
}

TEST_CASE("timestamps") {
  CHECK(*ParseTimestamp("1494158400") == 1494158400);
  CHECK(*ParseTimestamp("1494158400.9") == 1494158400);
  CHECK(*ParseTimestamp("2017-05-07T12:00:00Z") == 1494158400);
  CHECK(*ParseTimestamp("2017-05-07 12:00:00") == 1494158400);
  CHECK(*ParseTimestamp("2017-05-07T14:00:00.250+02:00") == 1494158400);
  CHECK(*ParseTimestamp("2017-05-07") == 1494115200);
  CHECK_FALSE(ParseTimestamp("2017-02-30T00:00:00Z"));
  CHECK_FALSE(ParseTimestamp("07/05/2017"));
  CHECK_FALSE(ParseTimestamp(""));
  CHECK(FormatTimestamp(1494158400) == "2017-05-07T12:00:00Z");
  CHECK(FormatDay(DayOf(1494158400)) == "2017-05-07");
  CHECK(FormatDay(DayOf(-1)) == "1969-12-31");
  CHECK(*ParseDay("2017-05-07") == DayOf(1494158400));
}

TEST_CASE("indices and daily volume on a hand-counted fixture") {
  // 10 records, accounts a and b, 2017-05-06 and 2017-05-07.
  using namespace fixture;
  const std::int64_t d6 = 1494028800, d7 = d6 + 86400;
  std::vector<TweetRecord> recs = {
      Original("1", "a", d6 + 10), Original("2", "a", d6 + 20),
      Retweet("3", "b", d6 + 30, "1"), Reply("4", "b", d6 + 40, {"a"}),
      Original("5", "b", d7 + 1), Retweet("6", "a", d7 + 2, "5"),
      Retweet("7", "a", d7 + 3, "5"), Reply("8", "a", d7 + 4, {"b"}),
      Original("9", "b", d7 + 86399), Retweet("10", "b", d7 + 5, "1")};
  Corpus c(recs);
  CHECK(c.account_index().size() == 2);
  CHECK(c.day_index().size() == 2);
  std::size_t covered = 0;
  for (const auto& [_, idx] : c.account_index()) covered += idx.size();
  CHECK(covered == 10);
  covered = 0;
  for (const auto& [_, idx] : c.day_index()) covered += idx.size();
  CHECK(covered == 10);

  auto vol = ComputeDailyVolume(c);
  REQUIRE(vol.size() == 2);
  CHECK(vol[0].counts == std::array<std::size_t, 3>{2, 1, 1});
  CHECK(vol[1].counts == std::array<std::size_t, 3>{2, 1, 3});
  CHECK(vol[0].total() + vol[1].total() == c.size());

  std::ostringstream csv;
  WriteDailyVolumeCsv(vol, csv);
  CHECK(csv.str() == "day,original,reply,retweet\n2017-05-06,2,1,1\n2017-05-07,2,1,3\n");
  CHECK(ComputeDailyVolume(Corpus{}).empty());
}

TEST_CASE("round trip through the canonical line format") {
  auto recs = fixture::RandomCorpus(7, 40);
  recs[0].text = "quote \" backslash \\ newline \n unicode é 😀";
  recs[0].mentions = {"m1", "m2"};
  recs[1].language = "en";
  Corpus c(recs);
  std::ostringstream out;
  WriteCorpus(c, out);
  auto back = Parse(out.str(), true);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(back[i] == c[i]);
  std::ostringstream again;
  WriteCorpus(back, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("parallel parsing matches sequential parsing") {
  auto recs = fixture::RandomCorpus(11, 60);
  std::ostringstream out;
  WriteCorpus(Corpus(recs), out);
  std::string text = out.str() + "garbage\n" + out.str();
  ParseReport r1, r4;
  auto seq = Parse(text, false, &r1, 1, 1 << 15);
  auto par = Parse(text, false, &r4, 4, 37);
  REQUIRE(seq.size() == par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) CHECK(seq[i] == par[i]);
  CHECK(r1.skipped == 1);
  CHECK(r4.skipped == 1);
  CHECK(r1.lines == r4.lines);
}
