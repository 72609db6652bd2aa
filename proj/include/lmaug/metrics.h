// lmaug/metrics.h

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

#ifndef LMAUG_METRICS_H_
#define LMAUG_METRICS_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lmaug/corpus.h"

namespace lmaug {

enum class EditOp { kMatch, kSubstitution, kDeletion, kInsertion };

const char *EditOpName(EditOp op);

struct AlignedPair {
  EditOp op = EditOp::kMatch;
  std::optional<std::string> ref;  // absent for insertions
  std::optional<std::string> hyp;  // absent for deletions
};

struct Alignment {
  std::vector<AlignedPair> ops;
  std::size_t matches = 0, substitutions = 0, deletions = 0, insertions = 0;

  std::size_t Errors() const { return substitutions + deletions + insertions; }
};

/// Minimum unit-cost edit alignment.  The backtrace prefers match, then
/// substitution, then deletion, then insertion.
Alignment Align(const Sentence &ref, const Sentence &hyp);

struct EvalCounts {
  std::size_t substitutions = 0, deletions = 0, insertions = 0;
  std::size_t ref_tokens = 0;
  std::size_t oov_total = 0, oov_correct = 0;
  std::size_t iv_total = 0, iv_correct = 0;

  EvalCounts &operator+=(const EvalCounts &o);
};

struct EvalOptions {
  bool merge_agglutination = false;
  /// Whether the merge is also applied to the references.
  bool merge_reference = true;
  /// Vocabulary consulted by the merge; the base vocabulary when null.
  const Vocabulary *merge_vocab = nullptr;
};

struct EvalReport {
  EvalCounts counts;
  double wer = 0.0;             // percent, not clamped
  double oov_recognized = 0.0;  // percent; 0 when there are no OOV tokens
  double iv_recognized = 0.0;   // percent; 0 when there are no IV tokens
  std::vector<Sentence> refs;   // after optional merging
  std::vector<Sentence> hyps;
  std::vector<Alignment> alignments;
};

/// Counts of one aligned utterance.  A reference token is recognized when it
/// is aligned as a match; it is OOV when absent from `base_vocab`.
EvalCounts CountAlignment(const Alignment &alignment,
                          const Vocabulary &base_vocab);

/// Throws std::invalid_argument when the corpora differ in length.
EvalReport Evaluate(const Corpus &refs, const Corpus &hyps,
                    const Vocabulary &base_vocab,
                    const EvalOptions &opts = EvalOptions());

/// Fills the percentages of `report` from its counts.
void FinalizeReport(EvalReport *report);

std::string EvalReportJson(const EvalReport &report);
/// One op per line: "<utt>\t<op>\t<ref>\t<hyp>", "*" for a missing side.
void WriteAlignmentDump(std::ostream &os, const EvalReport &report);

}  // namespace lmaug

#endif  // LMAUG_METRICS_H_
