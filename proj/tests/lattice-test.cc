// lmaug/lattice-test.cc

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

#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "lmaug/decode-sim.h"
#include "lmaug/error.h"
#include "lmaug/lattice.h"
#include "lmaug/witten-bell.h"
#include "test-util.h"

using namespace lmaug;

namespace {

Lattice Chain(const Sentence &words) {
  Lattice lat("chain");
  lat.AddState();
  for (const std::string &w : words) {
    std::int32_t s = lat.AddState();
    lat.AddArc(s - 1, {s, w, 0.5, 1.0});
  }
  lat.SetFinal(lat.NumStates() - 1, 0.0);
  return lat;
}

Lattice Diamond() {
  Lattice lat("diamond");
  for (int i = 0; i < 4; ++i) lat.AddState();
  lat.AddArc(0, {1, "a", 1.0, 0.0});
  lat.AddArc(0, {2, "b", 0.0, 1.0});
  lat.AddArc(1, {3, "c", 0.0, 0.0});
  lat.AddArc(2, {3, "c", 0.0, 0.0});
  lat.SetFinal(3, 0.0);
  return lat;
}

// Edit distance of a path against the reference.
std::size_t Edits(const PathHypothesis &p, const Sentence &ref) {
  return testing::LevenshteinOracle(ref, p.words);
}

}  // namespace

TEST_CASE("best path on simple lattices") {
  PathHypothesis p = BestPath(Chain({"x", "y"}));
  CHECK(p.words == Sentence{"x", "y"});
  CHECK(p.am_cost == doctest::Approx(1.0));
  CHECK(p.lm_cost == doctest::Approx(2.0));
  CHECK(p.total_cost == doctest::Approx(3.0));
  // Tie at total 1.0: "a c" < "b c".
  CHECK(BestPath(Diamond()).words == Sentence{"a", "c"});
  CHECK(BestPath(Diamond(), 1.0, 0.0).words == Sentence{"b", "c"});
  CHECK(BestPath(Diamond(), 0.0, 1.0).words == Sentence{"a", "c"});
  Lattice dead("dead");
  dead.AddState();
  dead.AddState();
  dead.AddArc(0, {1, "a", 0, 0});
  CHECK_THROWS_AS(BestPath(dead), StructuralError);
}

TEST_CASE("best path equals the enumeration minimum") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    Lattice lat = testing::RandomLattice(&rng, 3 + rng.Below(9), 4);
    double am = rng.Below(3) * 0.5, lm = rng.Below(3) * 0.5;
    if (am == 0 && lm == 0) am = 1;
    std::vector<PathHypothesis> paths = EnumeratePaths(lat, 10000, am, lm);
    CHECK(paths.size() == CountPaths(lat));
    PathHypothesis best = BestPath(lat, am, lm);
    const PathHypothesis *expect = nullptr;
    for (const PathHypothesis &p : paths) {
      CHECK(best.total_cost <= p.total_cost + 1e-9);
      if (expect == nullptr || p.total_cost < expect->total_cost - 1e-9 ||
          (std::abs(p.total_cost - expect->total_cost) <= 1e-9 &&
           p.words < expect->words))
        expect = &p;
    }
    REQUIRE(expect != nullptr);
    CHECK(best.words == expect->words);
    CHECK(best.total_cost == doctest::Approx(expect->total_cost));
  }
}

TEST_CASE("path enumeration and counting") {
  CHECK(EnumeratePaths(Chain({"a"}), 10).size() == 1);
  CHECK(EnumeratePaths(Diamond(), 10).size() == 2);
  CHECK(CountPaths(Diamond()) == 2);
  CHECK_THROWS_AS(EnumeratePaths(Diamond(), 1), StructuralError);
  // 2^40 paths would not fit in memory but are counted exactly.
  Lattice wide("wide");
  wide.AddState();
  for (int i = 0; i < 40; ++i) {
    std::int32_t s = wide.AddState();
    wide.AddArc(s - 1, {s, "p", 0, 0});
    wide.AddArc(s - 1, {s, "q", 0, 0});
  }
  wide.SetFinal(40, 0);
  CHECK(CountPaths(wide) == (std::uint64_t{1} << 40));
}

TEST_CASE("oracle path") {
  Lattice d = Diamond();
  OraclePathResult r = OraclePath(d, {"b", "c"});
  CHECK(r.edit_distance == 0);
  CHECK(r.path.words == Sentence{"b", "c"});
  CHECK(OraclePath(d, {"zz", "c"}).edit_distance >= 1);

  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    Lattice lat = testing::RandomLattice(&rng, 3 + rng.Below(7), 4);
    Sentence ref;
    std::vector<std::string> words = testing::WordList(5);
    for (std::size_t i = 0, n = rng.Below(6); i < n; ++i)
      ref.push_back(words[rng.Below(words.size())]);
    std::vector<PathHypothesis> paths = EnumeratePaths(lat, 10000);
    std::size_t best_e = std::numeric_limits<std::size_t>::max();
    double best_c = 0;
    for (const PathHypothesis &p : paths) {
      std::size_t e = Edits(p, ref);
      if (e < best_e || (e == best_e && p.total_cost < best_c)) {
        best_e = e;
        best_c = p.total_cost;
      }
    }
    OraclePathResult got = OraclePath(lat, ref);
    CHECK(got.edit_distance == best_e);
    CHECK(Edits(got.path, ref) == best_e);
    CHECK(got.path.total_cost == doctest::Approx(best_c));
  }
}

TEST_CASE("pruning") {
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    Lattice lat = testing::RandomLattice(&rng, 3 + rng.Below(9), 4);
    double beam = rng.Uniform() * 6.0;
    Lattice pruned = Prune(lat, beam);
    PathHypothesis best = BestPath(lat);
    CHECK(BestPath(pruned).words == best.words);
    std::vector<PathHypothesis> all = EnumeratePaths(lat, 100000);
    std::vector<PathHypothesis> kept = EnumeratePaths(pruned, 100000);
    auto lang = testing::Language(all);
    auto kept_lang = testing::Language(kept);
    // Pruned language is a subset of the original.
    for (const auto &entry : kept_lang) CHECK(lang.count(entry) >= 1);
    // Every path within the beam survives, and every surviving arc lies on
    // one of them.
    for (const PathHypothesis &p : all)
      if (p.total_cost <= best.total_cost + beam - 1e-9)
        CHECK(kept_lang.count({p.words, p.am_cost}) >= 1);
    double worst_kept = 0;
    for (const PathHypothesis &p : kept)
      worst_kept = std::max(worst_kept, p.total_cost);
    std::set<std::string> within;
    for (const PathHypothesis &p : all)
      if (p.total_cost <= best.total_cost + beam + 1e-9)
        within.insert(p.words.begin(), p.words.end());
    for (const std::string &w : pruned.Labels()) CHECK(within.count(w) == 1);
    // An unbounded beam keeps everything.
    Lattice same = Prune(lat, std::numeric_limits<double>::infinity());
    CHECK(same.NumArcs() == lat.NumArcs());
    CHECK(CountPaths(same) == CountPaths(lat));
  }
}

TEST_CASE("lattice text format") {
  std::ifstream is(LMAUG_TEST_DATA "/fixture.lat");
  std::vector<Lattice> lats = ReadLattices(is);
  REQUIRE(lats.size() == 2);
  CHECK(lats[0].Id() == "diamond");
  CHECK(lats[0].NumStates() == 3);
  CHECK(lats[0].NumArcs() == 3);
  PathHypothesis p = BestPath(lats[0]);
  CHECK(p.words == Sentence{"b", "c"});
  CHECK(p.am_cost == doctest::Approx(0.5));
  CHECK(p.lm_cost == doctest::Approx(1.75));
  CHECK(BestPath(lats[1]).words == Sentence{"x", "y"});

  std::ostringstream os;
  for (const Lattice &l : lats) WriteLattice(os, l);
  std::ifstream again(LMAUG_TEST_DATA "/fixture.lat");
  std::string original((std::istreambuf_iterator<char>(again)),
                       std::istreambuf_iterator<char>());
  CHECK(os.str() == original);

  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    Lattice lat = testing::RandomLattice(&rng, 2 + rng.Below(8), 5);
    std::stringstream ss;
    WriteLattice(ss, lat);
    std::vector<Lattice> back = ReadLattices(ss);
    REQUIRE(back.size() == 1);
    std::ostringstream a, b;
    WriteLattice(a, lat);
    WriteLattice(b, back[0]);
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("lattice reader rejects bad input") {
  auto parse = [](const std::string &text) {
    std::istringstream is(text);
    return ReadLattices(is);
  };
  CHECK_THROWS_AS(parse("UTT c\n0 1 a 0 0\n1 0 b 0 0\n1 0\n\n"),
                  StructuralError);
  CHECK_THROWS_AS(parse("0 1 a 0 0\n"), FormatError);
  CHECK_THROWS_AS(parse("UTT x\n0 1 a zz 0\n\n"), FormatError);
  CHECK_THROWS_AS(parse("UTT x\n0 1 a\n\n"), FormatError);
}

TEST_CASE("normalized edit distance") {
  CHECK(NormalizedEditDistance("abc", "abc") == 0.0);
  CHECK(NormalizedEditDistance("abc", "abd") == doctest::Approx(1.0 / 3));
  CHECK(NormalizedEditDistance("", "ab") == 1.0);
  CHECK(NormalizedEditDistance("", "") == 0.0);
  // Code points, not bytes.
  CHECK(NormalizedEditDistance("\xC3\xA9t\xC3\xA9", "\xC3\xA9t\xC3\xA0") ==
        doctest::Approx(1.0 / 3));
}

TEST_CASE("decode simulator") {
  Corpus train = {{"ab", "cd", "a"}, {"b", "cd", "ef"}, {"ab", "ef", "b"}};
  BackoffModel lm = TrainWittenBell(CountNGrams(train, 3));
  DecodeSimConfig cfg;

  SUBCASE("in-vocabulary reference without confusions is a single path") {
    DecodeSimConfig c = cfg;
    c.k_confusions = 0;
    c.allow_splits = false;
    Lattice lat = SimulateDecode({"ab", "cd", "ef"}, lm, c);
    CHECK(CountPaths(lat) == 1);
    CHECK(BestPath(lat).words == Sentence{"ab", "cd", "ef"});
  }
  SUBCASE("labels stay inside the decode vocabulary") {
    Lattice lat = SimulateDecode({"ab", "zq", "cdx", "ef"}, lm, cfg);
    std::set<std::string> vocab;
    for (const std::string &w : lm.PredictedWords()) vocab.insert(w);
    for (const std::string &w : lat.Labels()) CHECK(vocab.count(w) == 1);
    CHECK(lat.Labels().count("zq") == 0);
  }
  SUBCASE("splits put both halves on one path") {
    Lattice lat = SimulateDecode({"cd", "ab", "cd"}, lm, cfg);
    Lattice split = SimulateDecode({"cdab"}, lm, cfg);
    bool found = false;
    for (const PathHypothesis &p : EnumeratePaths(split, 10000))
      for (std::size_t i = 0; i + 1 < p.words.size(); ++i)
        found |= p.words[i] == "cd" && p.words[i + 1] == "ab";
    CHECK(found);
    CHECK(CountPaths(lat) >= 1);
  }
  SUBCASE("deterministic") {
    std::ostringstream a, b;
    WriteLattice(a, SimulateDecode({"ab", "zz", "efb"}, lm, cfg));
    WriteLattice(b, SimulateDecode({"ab", "zz", "efb"}, lm, cfg));
    CHECK(a.str() == b.str());
  }
  SUBCASE("candidates") {
    DecodeSimulator sim(lm, cfg);
    std::vector<Candidate> c = sim.Candidates("ab");
    REQUIRE_FALSE(c.empty());
    CHECK(c[0].word == "ab");
    CHECK(c[0].am_cost == 0.0);
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i].second.empty())
        CHECK(NormalizedEditDistance("ab", c[i].word) <= cfg.edit_threshold);
    // Nothing within the threshold: nearest words are used.
    std::vector<Candidate> far = sim.Candidates("zzzzzzzz");
    CHECK(far.size() == static_cast<std::size_t>(cfg.k_confusions));
    DecodeSimulator ext(lm, cfg, {"zq"});
    CHECK(ext.InLexicon("zq"));
    CHECK(ext.Candidates("zq")[0].word == "zq");
    CHECK_THROWS_AS(sim.Decode({}), std::invalid_argument);
  }
}
