// lmaug/ngram-lm-test.cc

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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lmaug/arpa.h"
#include "lmaug/error.h"
#include "lmaug/witten-bell.h"
#include "test-util.h"

using namespace lmaug;
using testing::Gram;

namespace {

// Sum of P(w | h) over the predicted vocabulary and <unk>.
double MassOf(const BackoffModel &m, const NGram &h) {
  std::vector<std::string> words = m.PredictedWords();
  if (std::find(words.begin(), words.end(), kUnk) == words.end())
    words.push_back(kUnk);
  double sum = 0.0;
  for (const std::string &w : words) sum += m.Prob(h, w);
  return sum;
}

BackoffModel Train(const Corpus &c, int order, bool pad = true) {
  CountOptions opts;
  opts.pad_sentences = pad;
  return TrainWittenBell(CountNGrams(c, order, opts));
}

}  // namespace

TEST_CASE("counts of a single sentence") {
  NGramCountTable t = CountNGrams({{"a", "b"}}, 2);
  CHECK(t.Get(NGram{kBos, "a"}) == 1);
  CHECK(t.Get(NGram{"a", "b"}) == 1);
  CHECK(t.Get(NGram{"b", kEos}) == 1);
  CHECK(t.Get(NGram{"a"}) == 1);
  CHECK(t.Get(NGram{"b"}) == 1);
  CHECK(t.Get(NGram{kEos}) == 1);
  CHECK(t.Get(NGram{kBos}) == 0);
  CHECK(CountNGrams({}, 3).Empty());
  CHECK_THROWS_AS(CountNGrams({}, 0), std::invalid_argument);
}

TEST_CASE("counts equal a sliding-window counter") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    int order = 1 + static_cast<int>(rng.Below(4));
    bool pad = rng.Below(4) != 0;
    Corpus c = testing::RandomCorpus(&rng, 1 + rng.Below(15), 8, 7);
    CountOptions opts;
    opts.pad_sentences = pad;
    NGramCountTable t = CountNGrams(c, order, opts);
    testing::GramCounts expect = testing::WindowCounts(c, order, pad);
    std::size_t stored = 0;
    for (int n = 1; n <= order; ++n)
      for (const auto &[g, count] : t.OfOrder(n)) {
        ++stored;
        CHECK(count >= 1);
        CHECK(expect[g] == count);
      }
    CHECK(stored == expect.size());
    // Adding a sentence never removes an n-gram.
    NGramCountTable more = t;
    more.AddSentence(testing::RandomCorpus(&rng, 1, 8, 7)[0], pad);
    for (int n = 1; n <= order; ++n)
      for (const auto &[g, count] : t.OfOrder(n)) CHECK(more.Get(g) >= count);
  }
}

TEST_CASE("Witten-Bell worked example") {
  // Unpadded counts: c(a) = 2 with continuations {b, c}; unigrams a:2 b:1
  // c:1 with 3 types over 4 tokens, uniform 1/4.
  BackoffModel m = Train({{"a", "b", "a", "c"}}, 2, false);
  CHECK(m.Prob(NGram{"a"}, "b") == doctest::Approx(0.375).epsilon(1e-12));
  // With sentence markers the extra </s> continuation changes the unigram.
  BackoffModel padded = Train({{"a", "b", "a", "c"}}, 2, true);
  CHECK(padded.Prob(NGram{"a"}, "b") == doctest::Approx(0.35).epsilon(1e-12));
}

TEST_CASE("single-word corpus") {
  // One type, one token: lambda = 1/2, uniform over {a, <unk>}.
  BackoffModel m = Train({{"a"}}, 1, false);
  CHECK(m.Prob(NGram{}, "a") == doctest::Approx(0.5 + 0.5 * 0.5));
  CHECK(m.Prob(NGram{}, "zzz") == doctest::Approx(0.25));
}

TEST_CASE("training rejects empty counts") {
  CHECK_THROWS_AS(TrainWittenBell(NGramCountTable(3)), TrainingError);
}

TEST_CASE("model equals the recurrence on every history and word") {
  Corpus toy = {{"the", "cat", "sat"}, {"the", "dog", "sat", "down"},
                {"a", "cat", "ran"}};
  for (int order = 1; order <= 3; ++order) {
    BackoffModel m = Train(toy, order);
    testing::WittenBellOracle oracle(toy, order);
    std::vector<std::string> words = {"the", "cat", "sat", "dog", "down",
                                      "a",   "ran", kEos,  kUnk,  "zebra"};
    std::vector<Gram> hists = {{}};
    for (const std::string &u : words) {
      hists.push_back({u});
      for (const std::string &v : words) hists.push_back({u, v});
    }
    hists.push_back({kBos});
    hists.push_back({kBos, kBos});
    hists.push_back({kBos, "the"});
    for (const Gram &h : hists)
      for (const std::string &w : words)
        CHECK(m.Prob(h, w) == doctest::Approx(oracle.Prob(h, w))
                                  .epsilon(1e-12));
  }
}

TEST_CASE("normalization and positivity on random corpora") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    int order = 1 + static_cast<int>(rng.Below(3));
    Corpus c = testing::RandomCorpus(&rng, 1 + rng.Below(10), 10, 6);
    BackoffModel m = Train(c, order);
    for (int n = 1; n < order; ++n)
      for (const auto &kv : m.Entries(n))
        CHECK(MassOf(m, kv.first) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(MassOf(m, NGram{}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.Prob(NGram{"nope", "never"}, "unseen") > 0.0);
  }
}

TEST_CASE("sentence log-probability and perplexity") {
  Corpus train = {{"x", "y", "z"}};
  BackoffModel m = Train(train, 3);
  double lp_empty = SentenceLog10Prob(m, {});
  CHECK(lp_empty == doctest::Approx(m.Log10Prob(NGram{kBos, kBos}, kEos)));

  // The training sentence beats every other permutation of its words.
  Sentence s = train[0];
  double best = SentenceLog10Prob(m, s);
  std::sort(s.begin(), s.end());
  do {
    if (s != train[0]) CHECK(SentenceLog10Prob(m, s) < best);
  } while (std::next_permutation(s.begin(), s.end()));

  // Uniform model: perplexity is the vocabulary size plus one.
  BackoffModel u = BackoffModel::Uniform({"p", "q", "r"});
  CHECK(Perplexity(u, {{"p", "q"}, {"r"}}) == doctest::Approx(5.0));

  Corpus toy = {{"a", "b", "a"}, {"b", "a", "c"}};
  BackoffModel tm = Train(toy, 2);
  Corpus held = {{"c", "b", "b"}, {"a", "a", "c"}};
  CHECK(Perplexity(tm, toy) <= Perplexity(tm, held));
  Corpus rev = {toy[1], toy[0]};
  CHECK(Perplexity(tm, toy) == doctest::Approx(Perplexity(tm, rev)));
  CHECK_THROWS(Perplexity(tm, {}));
}

TEST_CASE("ARPA round trip") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Corpus c = testing::RandomCorpus(&rng, 6, 9, 6);
    BackoffModel m = Train(c, 3);
    std::stringstream ss;
    WriteArpa(ss, m);
    BackoffModel r = ReadArpa(ss);
    REQUIRE(r.Order() == 3);
    for (int n = 1; n <= 3; ++n) {
      REQUIRE(r.NumEntries(n) == m.NumEntries(n));
      for (const auto &[g, e] : m.Entries(n)) {
        const NGramEntry *f = r.Find(g);
        REQUIRE(f != nullptr);
        CHECK(std::abs(f->log10_prob - e.log10_prob) <= 1e-6);
        CHECK(std::abs(f->log10_backoff - e.log10_backoff) <= 1e-6);
      }
    }
  }
}

TEST_CASE("hand-written ARPA fixture") {
  BackoffModel m = ReadArpaFile(LMAUG_TEST_DATA "/toy.arpa");
  CHECK(m.Order() == 2);
  CHECK(m.NumEntries(1) == 4);
  CHECK(m.NumEntries(2) == 3);
  CHECK(m.Prob(NGram{kBos}, "a") == doctest::Approx(0.75).epsilon(1e-6));
  CHECK(m.Prob(NGram{kBos}, kEos) == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(m.Prob(NGram{"a"}, "zz") ==
        doctest::Approx(std::pow(10.0, -0.1760913 - 0.69897)).epsilon(1e-6));
}

TEST_CASE("ARPA with an empty bigram section") {
  BackoffModel m = Train({{"a"}}, 1);
  BackoffModel two(2);
  for (const auto &[g, e] : m.Entries(1)) two.SetEntry(g, e);
  std::stringstream ss;
  WriteArpa(ss, two);
  CHECK(ss.str().find("ngram 2=0") != std::string::npos);
  BackoffModel r = ReadArpa(ss);
  CHECK(r.Order() == 2);
  CHECK(r.NumEntries(2) == 0);
}

TEST_CASE("ARPA reader rejects malformed input") {
  auto parse = [](const std::string &text) {
    std::istringstream is(text);
    return ReadArpa(is);
  };
  CHECK_THROWS_AS(parse("junk\n"), FormatError);
  CHECK_THROWS_AS(parse("\\data\\\nngram 1=2\n\n\\1-grams:\n-1\ta\n\n\\end\\\n"),
                  FormatError);
  CHECK_THROWS_AS(parse("\\data\\\nngram 1=1\n\n\\1-grams:\n-1\ta\n"),
                  FormatError);
  CHECK_THROWS_AS(parse("\\data\\\nngram 1=1\n\n\\3-grams:\n-1\ta\n\n\\end\\\n"),
                  FormatError);
  CHECK_THROWS_AS(parse("\\data\\\nngram 1=1\n\n\\1-grams:\nxyz\ta\n\n\\end\\\n"),
                  FormatError);
}
