// lmaug/text-select.h

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

#ifndef LMAUG_TEXT_SELECT_H_
#define LMAUG_TEXT_SELECT_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lmaug/backoff-model.h"
#include "lmaug/corpus.h"
#include "lmaug/lm-combine.h"
#include "lmaug/witten-bell.h"

namespace lmaug {

// Sentence scoring for LM augmentation.  All scores use natural logs.
// Trigrams are taken over "<s> <s> w1 .. wn </s>", one per predicted
// position, so a sentence of n tokens has n + 1 trigrams.

std::vector<NGram> SentenceTrigrams(const Sentence &sentence);

/// Mean over trigrams of ln P(w | uv; in_domain) - ln P(w | uv; general).
/// `in_domain` is the train+large interpolated model, `general` the model
/// of the large corpus alone.
double ScoreContrastive(const Sentence &sentence,
                        const BackoffModel &in_domain,
                        const BackoffModel &general);

/// Mean over trigrams of -P ln P under the transcript model.  P is the
/// conditional P(w | uv); with `joint` it is P(u) P(v | u) P(w | uv), start
/// symbols contributing probability one.
double ScoreEntropy(const Sentence &sentence, const BackoffModel &target,
                    bool joint = false);

/// Change in the target corpus log-likelihood when one sentence is removed
/// from the augmented corpus:
///
///   dS_i = sum_{uvw} N_target(uvw) ln [ P(w | uv) / P_{A_i}(w | uv) ]
///
/// P_{A_i} is evaluated exactly from the augmented counts minus sentence i's
/// counts (no retraining).  Every target trigram is visited because removing
/// a sentence also shifts the lower-order distributions.
class DeltaLikelihoodScorer {
 public:
  /// `augmented_counts` must be the order-3 padded counts of a corpus that
  /// contains every sentence of `candidates`; both must outlive the scorer.
  DeltaLikelihoodScorer(const Corpus &candidates,
                        const NGramCountTable &target_counts,
                        const NGramCountTable &augmented_counts);

  /// Throws std::out_of_range for a bad index and std::invalid_argument if
  /// the sentence's counts are not contained in the augmented counts.
  double Score(std::size_t i) const;
  std::size_t Size() const { return candidates_.size(); }

 private:
  const Corpus &candidates_;
  WittenBellEstimator estimator_;
  std::vector<std::pair<NGram, Count>> target_trigrams_;
  std::vector<double> full_log_probs_;  // ln P(w | uv) per target trigram
};

enum class SelectionMethod { kContrastive, kDeltaLikelihood, kEntropy, kRandom };

SelectionMethod ParseSelectionMethod(const std::string &name);
std::string SelectionMethodName(SelectionMethod m);

struct SelectionConfig {
  SelectionMethod method = SelectionMethod::kRandom;
  double fraction = 0.5;  // in (0, 1]
  std::uint64_t seed = 0;
  bool entropy_joint = false;
};

/// Models each method needs; only the ones used by the configured method
/// have to be set.
struct SelectionInputs {
  const BackoffModel *in_domain = nullptr;  // contrastive: D
  const BackoffModel *general = nullptr;    // contrastive: B
  const BackoffModel *target = nullptr;     // entropy: T
  const DeltaLikelihoodScorer *delta = nullptr;
};

struct ScoredSentence {
  std::size_t index = 0;  // position in the input corpus
  Sentence sentence;
  double score = 0.0;
  std::size_t trigram_count = 0;
};

/// Scores every sentence and keeps the top ceil(fraction * N) by descending
/// score, ties going to the earlier sentence.  The random method shuffles
/// with the seed and keeps a prefix (score = 0).  Output is in rank order.
std::vector<ScoredSentence> SelectSentences(const Corpus &corpus,
                                            const SelectionConfig &cfg,
                                            const SelectionInputs &inputs);

/// rank \t score \t sentence, rank starting at 1.
/// Keeps the top ceil(fraction * N) sentences by descending score; equal
/// scores keep corpus order.  Throws std::invalid_argument on a size
/// mismatch or a fraction outside (0, 1].
std::vector<ScoredSentence> RankByScore(const Corpus &corpus,
                                        const std::vector<double> &scores,
                                        double fraction);

void WriteSelectionTsv(std::ostream &os,
                       const std::vector<ScoredSentence> &selected);

}  // namespace lmaug

#endif  // LMAUG_TEXT_SELECT_H_
