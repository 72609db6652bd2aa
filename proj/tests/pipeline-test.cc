// lmaug/pipeline-test.cc

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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lmaug/pipeline.h"
#include "lmaug/witten-bell.h"

using namespace lmaug;

namespace {

SyntheticSpec Small(std::uint64_t seed) {
  SyntheticSpec s;
  s.seed = seed;
  s.train_sentences = 20;
  s.larger_sentences = 80;
  s.test_sentences = 30;
  s.vocab_size = 200;
  return s;
}

std::string Slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("synthetic generator is deterministic") {
  SyntheticData a = GenerateSynthetic(Small(3));
  SyntheticData b = GenerateSynthetic(Small(3));
  CHECK(a.train == b.train);
  CHECK(a.larger == b.larger);
  CHECK(a.test == b.test);
  SyntheticData c = GenerateSynthetic(Small(4));
  CHECK(c.test != a.test);
}

TEST_CASE("synthetic OOV rate hits the target") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SyntheticSpec spec = Small(seed);
    spec.target_oov_rate = 0.2;
    SyntheticData d = GenerateSynthetic(spec);
    // Recount independently.
    Vocabulary train = BuildVocabulary(d.train);
    Vocabulary larger = BuildVocabulary(d.larger);
    std::size_t n = 0, oov = 0, oov_in_larger = 0;
    for (const Sentence &s : d.test)
      for (const std::string &w : s) {
        ++n;
        if (!train.Contains(w)) {
          ++oov;
          oov_in_larger += larger.Contains(w);
        }
      }
    double rate = 100.0 * oov / n;
    CHECK(rate >= 18.0);
    CHECK(rate <= 22.0);
    CHECK(d.achieved_oov_rate == doctest::Approx(static_cast<double>(oov) / n));
    CHECK(100.0 * oov_in_larger / oov >= 95.0);
  }
  SyntheticSpec zero = Small(9);
  zero.target_oov_rate = 0.0;
  SyntheticData z = GenerateSynthetic(zero);
  Vocabulary train = BuildVocabulary(z.train);
  for (const Sentence &s : z.test)
    for (const std::string &w : s) CHECK(train.Contains(w));
}

TEST_CASE("unsatisfiable synthetic spec") {
  SyntheticSpec s = Small(1);
  s.target_oov_rate = 1.5;
  CHECK_THROWS_AS(GenerateSynthetic(s), std::invalid_argument);
  s = Small(1);
  s.vocab_size = 0;
  CHECK_THROWS_AS(GenerateSynthetic(s), std::invalid_argument);
  s = Small(1);
  s.min_sentence_length = 9;
  s.max_sentence_length = 3;
  CHECK_THROWS_AS(GenerateSynthetic(s), std::invalid_argument);
}

TEST_CASE("baseline arm equals hand composition") {
  SyntheticSpec spec = Small(5);
  spec.target_oov_rate = 0.0;
  SyntheticData d = GenerateSynthetic(spec);
  ExperimentConfig cfg;
  cfg.arms = {Arm::kBaselineDecode};
  cfg.merge_agglutination = false;
  cfg.lexicon_extension = false;
  ExperimentResult r = RunExperiment(cfg, d.train, d.larger, d.test);
  const ArmResult *arm = r.Find("none", Arm::kBaselineDecode);
  REQUIRE(arm != nullptr);

  BackoffModel lm = TrainWittenBell(CountNGrams(d.train, 3));
  DecodeSimulator sim(lm, cfg.decode);
  Corpus hyps;
  for (std::size_t u = 0; u < d.test.size(); ++u)
    hyps.push_back(BestPath(sim.Decode(d.test[u], "u")).words);
  EvalReport expect = Evaluate(d.test, hyps, BuildVocabulary(d.train));
  CHECK(arm->report.hyps == hyps);
  CHECK(arm->report.wer == doctest::Approx(expect.wer));
  CHECK(arm->report.counts.oov_total == 0);
  CHECK(arm->decode_lm_entries == lm.NumEntries());
}

TEST_CASE("threads do not change results and reports are reproducible") {
  SyntheticData d = GenerateSynthetic(Small(6));
  ExperimentConfig cfg;
  cfg.selections = {"none", "random"};
  ExperimentResult one = RunExperiment(cfg, d.train, d.larger, d.test);
  cfg.threads = 4;
  ExperimentResult four = RunExperiment(cfg, d.train, d.larger, d.test);
  CHECK(ReportCsv(one) == ReportCsv(four));
  CHECK(ReportJson(one) == ReportJson(four));
  CHECK(one.arms.size() == 10);
  for (const ArmResult &a : one.arms) CHECK(a.error.empty());

  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lmaug-pipeline-test";
  fs::remove_all(dir);
  WriteReports(one, cfg, (dir / "a").string());
  WriteReports(four, cfg, (dir / "b").string());
  std::size_t files = 0;
  for (const auto &e : fs::directory_iterator(dir / "a")) {
    ++files;
    CHECK(Slurp(e.path()) == Slurp(dir / "b" / e.path().filename()));
  }
  CHECK(files > 2);
  CHECK(fs::exists(dir / "a" / "report.csv"));
  CHECK(fs::exists(dir / "a" / "report.json"));
  fs::remove_all(dir);
}

TEST_CASE("OWALM entry count and arm failures") {
  SyntheticData d = GenerateSynthetic(Small(2));
  ExperimentConfig cfg;
  cfg.arms = {Arm::kBaselineDecode, Arm::kOwalmDecode};
  ExperimentResult r = RunExperiment(cfg, d.train, d.larger, d.test);
  CHECK(r.models.at("owalm").total_entries ==
        r.models.at("baseline").total_entries + r.oot_words);
  cfg.selections = {"bogus"};
  cfg.arms = {Arm::kFullAugDecode, Arm::kBaselineDecode};
  ExperimentResult bad = RunExperiment(cfg, d.train, d.larger, d.test);
  REQUIRE(bad.arms.size() == 2);
  CHECK_FALSE(bad.arms[0].error.empty());
  CHECK(bad.arms[1].error.empty());
  CHECK_THROWS_AS(RunExperiment(cfg, {}, d.larger, d.test),
                  std::invalid_argument);
}

TEST_CASE("config parsing") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lmaug-config-test";
  fs::create_directories(dir);
  for (const char *f : {"t.txt", "l.txt", "x.txt"})
    std::ofstream(dir / f) << "a b\n";
  ExperimentConfig c = ExperimentConfig::FromJson(
      R"({"train": "t.txt", "larger": "l.txt", "test": "x.txt",
          "order": 2, "beta_oot": 0.5, "selections": ["none", "entropy"],
          "decode": {"k_confusions": 3, "beam": 4.5},
          "arms": ["baseline_decode", "rescore_after_owalm"], "threads": 2})",
      dir.string());
  CHECK(c.train_path == (dir / "t.txt").string());
  CHECK(c.order == 2);
  CHECK(c.beta_oot == 0.5);
  CHECK(c.selections.size() == 2);
  CHECK(c.decode.k_confusions == 3);
  CHECK(c.decode.beam == 4.5);
  CHECK(c.arms == std::vector<Arm>{Arm::kBaselineDecode,
                                   Arm::kRescoreAfterOwalm});
  CHECK(c.threads == 2);
  ExperimentConfig s = ExperimentConfig::FromJson(
      R"({"synthetic": {"seed": 11, "test_sentences": 7}})");
  REQUIRE(s.synthetic.has_value());
  CHECK(s.synthetic->seed == 11);
  CHECK(s.synthetic->test_sentences == 7);
  CHECK(s.synthetic->train_sentences == 50);
  CHECK_THROWS_AS(ExperimentConfig::FromJson("[1]"), std::invalid_argument);
  CHECK_THROWS(ExperimentConfig::FromJson(R"({"arms": ["nope"]})"));
  CHECK_THROWS(ExperimentConfig::FromJson(R"({"train": "missing.txt",
      "larger": "l.txt", "test": "x.txt"})", dir.string()));
  CHECK(ParseArm(ArmName(Arm::kOwalmDecode)) == Arm::kOwalmDecode);
  fs::remove_all(dir);
}
