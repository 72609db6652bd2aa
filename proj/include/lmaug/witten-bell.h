// lmaug/witten-bell.h

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

#ifndef LMAUG_WITTEN_BELL_H_
#define LMAUG_WITTEN_BELL_H_

#include "lmaug/backoff-model.h"
#include "lmaug/ngram-counts.h"

namespace lmaug {

/// Interpolated Witten-Bell estimates computed directly from a count table:
///
///   P(w | h) = (c(h, w) + T(h) P(w | h')) / (c(h) + T(h))   if c(h) > 0
///            = P(w | h')                                    otherwise
///
/// where c(h) sums the continuations of h, T(h) counts their distinct types
/// and h' drops the oldest word of h.  The unigram level interpolates with
/// the uniform distribution over the predicted vocabulary plus <unk>.
///
/// The estimator can also evaluate the model that would result from
/// removing a sub-multiset of the counts (a sentence, typically) without
/// retraining; see Removal.
class WittenBellEstimator {
 public:
  /// Keeps a reference to `counts`, which must outlive the estimator.
  explicit WittenBellEstimator(const NGramCountTable &counts);

  /// Counts that are subtracted from the table.  Built by MakeRemoval();
  /// holds references to the removed table.
  class Removal {
   public:
    const NGramCountTable &removed() const { return *removed_; }

   private:
    friend class WittenBellEstimator;
    const NGramCountTable *removed_ = nullptr;
    // Per history: number of continuation types whose count drops to zero.
    std::vector<NGramMap<std::size_t>> vanished_types_;
    std::size_t vanished_words_ = 0;  // predicted unigram types that vanish
    bool unk_word_vanishes_ = false;
  };

  /// Throws std::invalid_argument unless every count in `removed` is at most
  /// the corresponding count in the table.
  Removal MakeRemoval(const NGramCountTable &removed) const;

  double Prob(WordSpan history, const std::string &word) const;
  double ProbWithout(const Removal &removal, WordSpan history,
                     const std::string &word) const;

  /// |predicted vocabulary ∪ {<unk>}|, the uniform base denominator.
  std::size_t UniformSize() const;
  /// 1 - lambda(h) = T(h) / (c(h) + T(h)); 1 for histories without counts.
  double BackoffMass(WordSpan history) const;

  const NGramCountTable &counts() const { return counts_; }

 private:
  double ProbImpl(const Removal *removal, WordSpan history,
                  const std::string &word) const;
  Count CountOf(const Removal *removal, WordSpan ngram) const;
  HistoryStats StatsOf(const Removal *removal, WordSpan history) const;
  bool Known(const Removal *removal, const std::string &word) const;

  const NGramCountTable &counts_;
  std::size_t predicted_types_ = 0;  // unigram types excluding <s>
  bool has_unk_word_ = false;
};

/// Trains an interpolated Witten-Bell model and converts it to backoff form:
/// every counted n-gram gets its interpolated probability and every history
/// gets backoff weight T(h) / (c(h) + T(h)).  Histories that are never
/// themselves predicted (the start symbol, "<s> <s>") are stored with
/// probability kLog10Impossible.  Throws TrainingError on empty counts.
BackoffModel TrainWittenBell(const NGramCountTable &counts);

}  // namespace lmaug

#endif  // LMAUG_WITTEN_BELL_H_
