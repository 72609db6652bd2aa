// lmaug/backoff-model.h

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

#ifndef LMAUG_BACKOFF_MODEL_H_
#define LMAUG_BACKOFF_MODEL_H_

#include <string>
#include <vector>

#include "lmaug/corpus.h"
#include "lmaug/ngram-counts.h"

namespace lmaug {

// log10 value stored for events that can never be predicted (the start
// symbol, and histories such as "<s> <s>" that exist only to carry a
// backoff weight).
constexpr double kLog10Impossible = -99.0;

struct NGramEntry {
  double log10_prob = 0.0;
  double log10_backoff = 0.0;
};

/// ARPA-style backoff n-gram model.  P(w | h) is the stored probability of
/// (h, w) when present, otherwise bow(h) * P(w | h') with h' = h minus its
/// oldest word.  Words without a unigram entry are scored as <unk>.
/// Immutable after construction; concurrent readers are safe.
class BackoffModel {
 public:
  explicit BackoffModel(int order = 1);

  int Order() const { return order_; }

  void SetEntry(WordSpan ngram, const NGramEntry &entry);
  const NGramEntry *Find(WordSpan ngram) const;
  const NGramMap<NGramEntry> &Entries(int n) const { return entries_.at(n - 1); }

  std::size_t NumEntries() const;
  std::size_t NumEntries(int n) const { return entries_.at(n - 1).size(); }

  bool InVocabulary(const std::string &word) const;
  /// Words the model can predict: every unigram except the start symbol.
  /// Includes </s> and <unk> when present.
  std::vector<std::string> PredictedWords() const;

  /// log10 P(word | history); histories longer than order-1 are truncated
  /// to their most recent words.
  double Log10Prob(WordSpan history, const std::string &word) const;
  double Prob(WordSpan history, const std::string &word) const;

  /// Unigram model assigning 1 / (|words ∪ {</s>}| + 1) to each word, </s>
  /// and <unk>.
  static BackoffModel Uniform(const std::vector<std::string> &words);

 private:
  int order_;
  std::vector<NGramMap<NGramEntry>> entries_;
};

/// Start-of-sentence history for a model of the given order: order-1 start
/// symbols.
NGram InitialHistory(int order);

/// Sum of log10 P over the padded sentence, including the end symbol.
double SentenceLog10Prob(const BackoffModel &model, const Sentence &sentence);

/// 10^(-total log10 prob / tokens), tokens counting one end symbol per
/// sentence.  Throws std::invalid_argument on an empty corpus.
double Perplexity(const BackoffModel &model, const Corpus &corpus);

}  // namespace lmaug

#endif  // LMAUG_BACKOFF_MODEL_H_
