// lmaug/pipeline.h

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

#ifndef LMAUG_PIPELINE_H_
#define LMAUG_PIPELINE_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lmaug/decode-sim.h"
#include "lmaug/lm-combine.h"
#include "lmaug/metrics.h"
#include "lmaug/synthetic.h"
#include "lmaug/text-select.h"

namespace lmaug {

// The five experimental arms:
//   baseline_decode          decode with the training-text LM
//   owalm_decode             decode with the OOT-word augmented LM
//   full_aug_decode          decode with train + larger corpus count-merged
//   rescore_after_baseline   baseline lattices rescored with the full LM
//   rescore_after_owalm      OWALM lattices rescored with the full LM
enum class Arm {
  kBaselineDecode,
  kOwalmDecode,
  kFullAugDecode,
  kRescoreAfterBaseline,
  kRescoreAfterOwalm
};

Arm ParseArm(const std::string &name);
std::string ArmName(Arm arm);
std::vector<Arm> AllArms();

struct ExperimentConfig {
  // Either the three corpus paths or a synthetic spec.
  std::string train_path, larger_path, test_path;
  std::optional<SyntheticSpec> synthetic;

  int order = 3;
  double beta_base = 1.0;
  double beta_larger = 1.0;
  double beta_oot = 1.0;
  /// Selection methods for the augmentation corpus; "none" uses all of it.
  std::vector<std::string> selections = {"none"};
  double selection_fraction = 0.5;
  std::uint64_t selection_seed = 1;
  bool entropy_joint = false;

  DecodeSimConfig decode;
  double am_scale = 1.0;
  double lm_scale = 1.0;

  std::vector<Arm> arms = AllArms();
  bool merge_agglutination = true;
  bool merge_reference = true;
  /// Also score every arm with the decode lexicon extended by all words of
  /// the larger corpus.
  bool lexicon_extension = true;
  bool write_lattices = false;
  int threads = 1;
  std::string output_dir;

  /// Parses the JSON config; relative paths resolve against `base_dir`.
  /// Throws std::invalid_argument on a bad document.
  static ExperimentConfig FromJson(const std::string &json_text,
                                   const std::string &base_dir = "");
};

struct ArmResult {
  std::string selection;
  Arm arm = Arm::kBaselineDecode;
  /// Empty on success, else the diagnostic that aborted the arm.
  std::string error;
  EvalReport report;
  std::optional<double> wer_lexicon_extended;
  std::size_t decode_lm_entries = 0;
  std::size_t final_lm_entries = 0;
  std::vector<Lattice> lattices;  // kept only when lattices are written
};

struct ExperimentResult {
  std::vector<ArmResult> arms;
  std::map<std::string, ModelStats> models;
  double test_oov_rate = 0.0;
  std::size_t oot_words = 0;

  /// First successful result for (selection, arm), or null.
  const ArmResult *Find(const std::string &selection, Arm arm) const;
};

/// Runs every configured arm on in-memory corpora.  A failing arm is
/// reported through ArmResult::error and does not stop the others.
ExperimentResult RunExperiment(const ExperimentConfig &cfg,
                               const Corpus &train, const Corpus &larger,
                               const Corpus &test);
/// Loads or generates the corpora, runs, and writes reports when
/// cfg.output_dir is set.
ExperimentResult RunExperiment(const ExperimentConfig &cfg);

std::string ReportCsv(const ExperimentResult &result);
std::string ReportJson(const ExperimentResult &result);
/// report.csv, report.json and per-arm hypothesis, alignment and score
/// files (plus lattices when requested).
void WriteReports(const ExperimentResult &result, const ExperimentConfig &cfg,
                  const std::string &dir);

}  // namespace lmaug

#endif  // LMAUG_PIPELINE_H_
