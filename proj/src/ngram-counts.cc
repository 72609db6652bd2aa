// lmaug/ngram-counts.cc

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

#include "lmaug/ngram-counts.h"

#include <stdexcept>

namespace lmaug {

const std::string kBos = "<s>";
const std::string kEos = "</s>";
const std::string kUnk = "<unk>";

void ForEachNGramEvent(const Sentence &sentence, int order, bool pad,
                       const std::function<void(WordSpan)> &fn) {
  std::vector<std::string> seq;
  std::size_t first_predicted = 0;
  if (pad) {
    seq.assign(order - 1, kBos);
    first_predicted = seq.size();
    seq.insert(seq.end(), sentence.begin(), sentence.end());
    seq.push_back(kEos);
  } else {
    seq = sentence;
  }
  for (std::size_t pos = first_predicted; pos < seq.size(); ++pos) {
    for (int k = 1; k <= order; ++k) {
      if (static_cast<std::size_t>(k) > pos + 1) break;
      fn(WordSpan(seq.data() + pos + 1 - k, k));
    }
  }
}

NGramCountTable::NGramCountTable(int order) : order_(order) {
  if (order < 1) throw std::invalid_argument("n-gram order must be >= 1");
  counts_.resize(order);
  histories_.resize(order);
}

void NGramCountTable::Add(WordSpan ngram, Count count) {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_)
    throw std::invalid_argument("n-gram length outside 1..order");
  if (count == 0) return;
  auto &table = counts_[ngram.size() - 1];
  auto it = table.find(ngram);
  bool is_new = (it == table.end());
  if (is_new)
    table.emplace(NGram(ngram.begin(), ngram.end()), count);
  else
    it->second += count;

  WordSpan history = ngram.first(ngram.size() - 1);
  auto &hist = histories_[history.size()];
  auto hit = hist.find(history);
  if (hit == hist.end())
    hit = hist.emplace(NGram(history.begin(), history.end()), HistoryStats())
              .first;
  hit->second.total += count;
  if (is_new) ++hit->second.types;
}

void NGramCountTable::AddSentence(const Sentence &sentence, bool pad) {
  ForEachNGramEvent(sentence, order_, pad, [this](WordSpan g) { Add(g); });
}

void NGramCountTable::Merge(const NGramCountTable &other) {
  if (other.order_ > order_)
    throw std::invalid_argument("cannot merge a higher-order count table");
  for (const auto &table : other.counts_)
    for (const auto &kv : table) Add(kv.first, kv.second);
}

Count NGramCountTable::Get(WordSpan ngram) const {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) return 0;
  const auto &table = counts_[ngram.size() - 1];
  auto it = table.find(ngram);
  return it == table.end() ? 0 : it->second;
}

HistoryStats NGramCountTable::History(WordSpan history) const {
  if (static_cast<int>(history.size()) >= order_) return HistoryStats();
  const auto &hist = histories_[history.size()];
  auto it = hist.find(history);
  return it == hist.end() ? HistoryStats() : it->second;
}

std::size_t NGramCountTable::Size() const {
  std::size_t n = 0;
  for (const auto &t : counts_) n += t.size();
  return n;
}

NGramCountTable CountNGrams(const Corpus &corpus, int order,
                            const CountOptions &opts) {
  NGramCountTable table(order);
  for (const Sentence &s : corpus) table.AddSentence(s, opts.pad_sentences);
  return table;
}

}  // namespace lmaug
