// lmaug/corpus-test.cc

// Copyright 2026  lmaug authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include "doctest.h"
#include "lmaug/corpus.h"
#include "lmaug/error.h"
#include "test-util.h"

using namespace lmaug;

namespace {

// Character-class reference: keep a byte iff it is an ASCII letter, split
// on spaces and tabs.  Only valid for ASCII input.
Corpus AsciiLettersReference(const std::string &raw) {
  Corpus out;
  std::istringstream is(raw);
  std::string line;
  while (std::getline(is, line)) {
    Sentence s;
    std::string tok;
    for (char c : line) {
      if (c == ' ' || c == '\t' || c == '\r') {
        if (!tok.empty()) s.push_back(tok);
        tok.clear();
      } else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
        tok += c;
      }
    }
    if (!tok.empty()) s.push_back(tok);
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

Vocabulary VocabOf(std::initializer_list<const char *> words) {
  Vocabulary v;
  for (const char *w : words) v.Add(w);
  return v;
}

}  // namespace

TEST_CASE("normalize strips punctuation and digits") {
  NormalizationPolicy latin = NormalizationPolicy::Latin();
  CHECK(NormalizeText("abc, def!", latin) == Corpus{{"abc", "def"}});
  CHECK(NormalizeText("", latin).empty());
  CHECK(NormalizeText("a1b  c", latin) == Corpus{{"ab", "c"}});
  CHECK(NormalizeText("\n\n 12 \n", latin).empty());
}

TEST_CASE("normalize agrees with a character-class reference") {
  Rng rng(11);
  const std::string alphabet = "abcXYZ019 ,.!\t\n";
  NormalizationPolicy latin = NormalizationPolicy::Latin();
  for (int trial = 0; trial < 300; ++trial) {
    std::string raw;
    std::size_t len = rng.Below(60);
    for (std::size_t i = 0; i < len; ++i)
      raw += alphabet[rng.Below(alphabet.size())];
    Corpus got = NormalizeText(raw, latin);
    CHECK(got == AsciiLettersReference(raw));
    // Idempotence.
    std::ostringstream os;
    WriteCorpus(os, got);
    CHECK(NormalizeText(os.str(), latin) == got);
  }
}

TEST_CASE("normalize keeps Telugu vowel signs and drops Telugu digits") {
  NormalizationPolicy te = NormalizationPolicy::Telugu();
  // "telugu" with a vowel sign and virama, then a Telugu digit one.
  std::string word = "\xE0\xB0\xA4\xE0\xB1\x86\xE0\xB0\xB2\xE0\xB1\x81";
  std::string digit = "\xE0\xB1\xA7";
  CHECK(NormalizeText(word + digit + " x", te) == Corpus{{word}});
}

TEST_CASE("normalize reports the byte offset of invalid UTF-8") {
  NormalizationPolicy latin = NormalizationPolicy::Latin();
  try {
    NormalizeText("ab\xC3", latin);
    FAIL("expected a decoding error");
  } catch (const DecodingError &e) {
    CHECK(e.ByteOffset() == 2);
  }
  CHECK_THROWS_AS(NormalizeText("a\xFF", latin), DecodingError);
  CHECK_THROWS_AS(NormalizeText("\xC0\x80", latin), DecodingError);
}

TEST_CASE("policy from JSON") {
  NormalizationPolicy p = NormalizationPolicy::FromJson(
      R"({"name": "ab", "ranges": [["U+0061", "U+0062"], [48, 48]]})");
  CHECK(p.Retains(U'a'));
  CHECK(p.Retains(U'0'));
  CHECK_FALSE(p.Retains(U'c'));
  CHECK(NormalizeText("abc 0x", p) == Corpus{{"ab", "0"}});
  CHECK_THROWS_AS(NormalizationPolicy::FromJson("{}"), FormatError);
  CHECK_THROWS_AS(NormalizationPolicy::FromJson(R"({"ranges": [[5, 1]]})"),
                  FormatError);
}

TEST_CASE("vocabulary counts") {
  Vocabulary v = BuildVocabulary({{"a", "b", "a"}});
  CHECK(v.Size() == 2);
  CHECK(v.CountOf("a") == 2);
  CHECK(v.CountOf("b") == 1);
  CHECK(v.TotalTokens() == 3);
  CHECK(v.Id("a") == 0);
  CHECK(v.Id("b") == 1);
  CHECK(v.Id("z") == -1);
  CHECK(BuildVocabulary({}).TotalTokens() == 0);

  Rng rng(3);
  Corpus c = testing::RandomCorpus(&rng, 1000, 30, 12);
  std::size_t tokens = 0;
  std::map<std::string, Count> scan;
  for (const Sentence &s : c)
    for (const std::string &w : s) {
      ++tokens;
      ++scan[w];
    }
  Vocabulary big = BuildVocabulary(c);
  CHECK(big.TotalTokens() == tokens);
  CHECK(big.Size() == scan.size());
  Count sum = 0;
  for (std::size_t id = 0; id < big.Size(); ++id) {
    const std::string &w = big.Word(static_cast<std::int32_t>(id));
    CHECK(big.Id(w) == static_cast<std::int32_t>(id));
    CHECK(big.CountOf(w) == scan[w]);
    sum += big.CountOf(w);
  }
  CHECK(sum == big.TotalTokens());
}

TEST_CASE("OOT report is the set difference") {
  OotReport r = ComputeOot(VocabOf({"a", "b"}), {{"a", "c", "c"}});
  CHECK(r.oot_words == std::map<std::string, Count>{{"c", 2}});
  CHECK(ComputeOot(VocabOf({"a", "b"}), {{"a", "b", "a"}}).oot_words.empty());

  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Corpus base = testing::RandomCorpus(&rng, 5, 12, 5);
    Corpus larger = testing::RandomCorpus(&rng, 20, 20, 6);
    Vocabulary bv = BuildVocabulary(base);
    std::map<std::string, Count> expect;
    for (const Sentence &s : larger)
      for (const std::string &w : s)
        if (!bv.Contains(w)) ++expect[w];
    OotReport got = ComputeOot(bv, larger);
    CHECK(got.oot_words == expect);
    for (const auto &kv : got.oot_words) CHECK_FALSE(bv.Contains(kv.first));
    CHECK(got.base_vocab_size == bv.Size());
  }
}

TEST_CASE("agglutination merge") {
  CHECK(AgglutinationMerge({"AADEESHAALA", "MERAKU"},
                           VocabOf({"AADEESHAALAMERAKU"})) ==
        Sentence{"AADEESHAALAMERAKU"});
  CHECK(AgglutinationMerge({"a", "b"}, VocabOf({"a", "b"})) ==
        Sentence{"a", "b"});
  CHECK(AgglutinationMerge({"a", "b", "c"}, VocabOf({"ab", "abc"})) ==
        Sentence{"abc"});
  CHECK(AgglutinationMerge({"a", "b", "c"}, VocabOf({"bc"})) ==
        Sentence{"a", "bc"});
}

TEST_CASE("agglutination merge matches an exhaustive greedy check") {
  // Every vocabulary drawn from the concatenations of 3-token inputs.
  const std::vector<std::string> pieces = {"a", "b", "c"};
  for (const std::string &x : pieces)
    for (const std::string &y : pieces)
      for (const std::string &z : pieces) {
        Sentence in = {x, y, z};
        std::vector<std::string> candidates = {x + y, y + z, x + y + z};
        for (int mask = 0; mask < 8; ++mask) {
          Vocabulary v;
          for (int b = 0; b < 3; ++b)
            if (mask & (1 << b)) v.Add(candidates[b]);
          Sentence expect;
          if (v.Contains(x + y + z))
            expect = {x + y + z};
          else if (v.Contains(x + y))
            expect = {x + y, z};
          else if (v.Contains(y + z))
            expect = {x, y + z};
          else
            expect = in;
          Sentence got = AgglutinationMerge(in, v);
          CHECK(got == expect);
          CHECK(got.size() <= in.size());
          CHECK(JoinTokens(got, "") == JoinTokens(in, ""));
        }
      }
}

TEST_CASE("corpus round trip") {
  Corpus c = {{"a", "b"}, {"c"}};
  std::ostringstream os;
  WriteCorpus(os, c);
  std::istringstream is(os.str() + "\n  \n");
  CHECK(ReadCorpus(is) == c);
}
