// lmaug/rescore-test.cc

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

#include <cmath>

#include "doctest.h"
#include "lmaug/decode-sim.h"
#include "lmaug/rescore.h"
#include "lmaug/witten-bell.h"
#include "test-util.h"

using namespace lmaug;
using testing::Gram;

namespace {

double OracleCost(const Sentence &s, const testing::WittenBellOracle &o) {
  return testing::SentenceCostOracle(
      s, 3, [&](const Gram &h, const std::string &w) { return o.Prob(h, w); });
}

Lattice SharedSuffix() {
  // a|b then c into the same state, then d.
  Lattice lat("d");
  for (int i = 0; i < 4; ++i) lat.AddState();
  lat.AddArc(0, {1, "a", 1.0, 0.0});
  lat.AddArc(0, {1, "b", 2.0, 0.0});
  lat.AddArc(1, {2, "c", 0.5, 0.0});
  lat.AddArc(2, {3, "d", 0.25, 0.0});
  lat.SetFinal(3, 0.0);
  return lat;
}

}  // namespace

TEST_CASE("context expansion splits shared states") {
  Lattice lat = SharedSuffix();
  ContextExpansion e = ExpandForContext(lat, 3);
  // States 1 and 2 split by the first word; state 3 only sees "c d".
  CHECK(e.lattice.NumStates() == 6);
  CHECK(testing::Language(EnumeratePaths(e.lattice, 100)) ==
        testing::Language(EnumeratePaths(lat, 100)));
  CHECK(CountPaths(e.lattice) == CountPaths(lat));
  for (std::int32_t s = 0; s < e.lattice.NumStates(); ++s)
    CHECK(e.history[s].size() == 2);
  // A bigram history only depends on the last word: c and d states merge.
  CHECK(ExpandForContext(lat, 2).lattice.NumStates() == 5);
  // Expanding again changes nothing.
  ContextExpansion twice = ExpandForContext(e.lattice, 3);
  CHECK(twice.lattice.NumStates() == e.lattice.NumStates());
  CHECK(twice.lattice.NumArcs() == e.lattice.NumArcs());
}

TEST_CASE("expansion preserves language on random lattices") {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    Lattice lat = testing::RandomLattice(&rng, 3 + rng.Below(8), 4);
    for (int order = 1; order <= 3; ++order) {
      ContextExpansion e = ExpandForContext(lat, order);
      CHECK(CountPaths(e.lattice) == CountPaths(lat));
      CHECK(testing::Language(EnumeratePaths(e.lattice, 10000)) ==
            testing::Language(EnumeratePaths(lat, 10000)));
    }
  }
}

TEST_CASE("rescoring contract") {
  Rng rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    Corpus c = testing::RandomCorpus(&rng, 6, 4, 5);
    BackoffModel lm = TrainWittenBell(CountNGrams(c, 3));
    testing::WittenBellOracle oracle(c, 3);
    Lattice lat = testing::RandomLattice(&rng, 3 + rng.Below(8), 5);
    Lattice out = Rescore(lat, lm);
    std::vector<PathHypothesis> before = EnumeratePaths(lat, 10000);
    std::vector<PathHypothesis> after = EnumeratePaths(out, 10000);
    REQUIRE(before.size() == after.size());
    CHECK(testing::Language(before) == testing::Language(after));
    CHECK(out.Labels() == lat.Labels());
    for (const PathHypothesis &p : after)
      CHECK(std::abs(p.lm_cost - OracleCost(p.words, oracle)) <= 1e-9);
    // Fixed point: rescoring with the same model changes nothing.
    std::vector<PathHypothesis> again = EnumeratePaths(Rescore(out, lm), 10000);
    std::map<std::pair<Sentence, double>, double> lm_of;
    for (const PathHypothesis &p : after) lm_of[{p.words, p.am_cost}] = p.lm_cost;
    for (const PathHypothesis &p : again)
      CHECK(std::abs(lm_of[{p.words, p.am_cost}] - p.lm_cost) <= 1e-9);
    // Best path after rescoring is the enumeration argmin.
    PathHypothesis best = BestPath(out);
    for (const PathHypothesis &p : after)
      CHECK(best.total_cost <= p.total_cost + 1e-9);
  }
}

TEST_CASE("single path rescoring matches sentence scoring") {
  Corpus c = {{"a", "b", "c"}, {"b", "c"}};
  BackoffModel lm = TrainWittenBell(CountNGrams(c, 3));
  Lattice lat("one");
  for (int i = 0; i < 4; ++i) lat.AddState();
  lat.AddArc(0, {1, "b", 0.1, 7.0});
  lat.AddArc(1, {2, "a", 0.2, 7.0});
  lat.AddArc(2, {3, "c", 0.3, 7.0});
  lat.SetFinal(3, 7.0);
  PathHypothesis p = BestPath(Rescore(lat, lm));
  CHECK(p.am_cost == doctest::Approx(0.6));
  CHECK(p.lm_cost == doctest::Approx(-std::log(10.0) *
                                     SentenceLog10Prob(lm, {"b", "a", "c"}))
                         .epsilon(1e-12));
}

TEST_CASE("rescoring cannot add a missing word") {
  Corpus base = {{"aa", "bb"}, {"bb", "cc"}};
  Corpus big = {{"aa", "bb", "zzz"}, {"zzz", "cc"}};
  BackoffModel small = TrainWittenBell(CountNGrams(base, 3));
  BackoffModel large = TrainWittenBell(CountNGrams(big, 3));
  Lattice lat = SimulateDecode({"aa", "zzz", "cc"}, small, DecodeSimConfig());
  CHECK(lat.Labels().count("zzz") == 0);
  Lattice out = Rescore(lat, large);
  CHECK(out.Labels().count("zzz") == 0);
  CHECK(out.Labels() == lat.Labels());
}
