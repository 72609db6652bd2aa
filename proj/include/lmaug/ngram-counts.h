// lmaug/ngram-counts.h

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

#ifndef LMAUG_NGRAM_COUNTS_H_
#define LMAUG_NGRAM_COUNTS_H_

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lmaug/corpus.h"

namespace lmaug {

extern const std::string kBos;  // "<s>"
extern const std::string kEos;  // "</s>"
extern const std::string kUnk;  // "<unk>"

typedef std::vector<std::string> NGram;
typedef std::span<const std::string> WordSpan;

// Lexicographic order over word sequences; transparent so that maps keyed by
// NGram can be probed with a span without copying.
struct NGramLess {
  using is_transparent = void;
  bool operator()(WordSpan a, WordSpan b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                        b.end());
  }
};

template <class T>
using NGramMap = std::map<NGram, T, NGramLess>;

struct HistoryStats {
  Count total = 0;       // sum over w of c(h, w)
  std::size_t types = 0;  // number of distinct w with c(h, w) > 0
};

/// Calls `fn(ngram)` for every n-gram event of one sentence: for each
/// predicted position (each token, then the end symbol when padding), the
/// k-grams ending at that position for k = 1..order.  With padding the
/// sentence is prefixed by order-1 start symbols; without padding the raw
/// token window is used and no boundary symbols appear.
void ForEachNGramEvent(const Sentence &sentence, int order, bool pad,
                       const std::function<void(WordSpan)> &fn);

/// Raw n-gram occurrence counts for orders 1..order, together with the
/// history statistics c(h) and T(h) needed for Witten-Bell estimation.
class NGramCountTable {
 public:
  explicit NGramCountTable(int order);

  int Order() const { return order_; }

  /// Adds `count` to an n-gram of length 1..order.  Zero counts are ignored.
  void Add(WordSpan ngram, Count count = 1);
  void AddSentence(const Sentence &sentence, bool pad = true);
  /// Adds every count of `other`; its order must not exceed this order.
  void Merge(const NGramCountTable &other);

  Count Get(WordSpan ngram) const;
  /// Entries of length n (1-based).
  const NGramMap<Count> &OfOrder(int n) const { return counts_.at(n - 1); }
  /// Statistics of history h over the n-grams of length |h| + 1.  The empty
  /// history describes the unigram level.
  HistoryStats History(WordSpan history) const;
  const NGramMap<HistoryStats> &Histories(int n) const {
    return histories_.at(n - 1);
  }

  std::size_t Size() const;
  bool Empty() const { return Size() == 0; }

 private:
  int order_;
  std::vector<NGramMap<Count>> counts_;
  std::vector<NGramMap<HistoryStats>> histories_;  // indexed by |h|
};

struct CountOptions {
  bool pad_sentences = true;
};

/// Throws std::invalid_argument when order < 1.
NGramCountTable CountNGrams(const Corpus &corpus, int order,
                            const CountOptions &opts = CountOptions());

}  // namespace lmaug

#endif  // LMAUG_NGRAM_COUNTS_H_
