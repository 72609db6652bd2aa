// lmaug/backoff-model.cc

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

#include "lmaug/backoff-model.h"

#include <cmath>
#include <set>
#include <stdexcept>

namespace lmaug {

BackoffModel::BackoffModel(int order) : order_(order) {
  if (order < 1) throw std::invalid_argument("model order must be >= 1");
  entries_.resize(order);
}

void BackoffModel::SetEntry(WordSpan ngram, const NGramEntry &entry) {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_)
    throw std::invalid_argument("n-gram length outside 1..order");
  auto &table = entries_[ngram.size() - 1];
  auto it = table.find(ngram);
  if (it == table.end())
    table.emplace(NGram(ngram.begin(), ngram.end()), entry);
  else
    it->second = entry;
}

const NGramEntry *BackoffModel::Find(WordSpan ngram) const {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) return nullptr;
  const auto &table = entries_[ngram.size() - 1];
  auto it = table.find(ngram);
  return it == table.end() ? nullptr : &it->second;
}

std::size_t BackoffModel::NumEntries() const {
  std::size_t n = 0;
  for (const auto &t : entries_) n += t.size();
  return n;
}

bool BackoffModel::InVocabulary(const std::string &word) const {
  return entries_[0].count(WordSpan(&word, 1)) > 0;
}

std::vector<std::string> BackoffModel::PredictedWords() const {
  std::vector<std::string> words;
  for (const auto &kv : entries_[0])
    if (kv.first[0] != kBos) words.push_back(kv.first[0]);
  return words;
}

double BackoffModel::Log10Prob(WordSpan history,
                               const std::string &word) const {
  if (static_cast<int>(history.size()) > order_ - 1)
    history = history.last(order_ - 1);
  // Unknown words (history or predicted) are looked up as <unk>.
  NGram gram;
  gram.reserve(history.size() + 1);
  for (const std::string &h : history)
    gram.push_back(InVocabulary(h) ? h : kUnk);
  gram.push_back(InVocabulary(word) ? word : kUnk);

  double backoff = 0.0;
  for (std::size_t start = 0; start < gram.size(); ++start) {
    WordSpan g(gram.data() + start, gram.size() - start);
    if (const NGramEntry *e = Find(g)) return backoff + e->log10_prob;
    if (const NGramEntry *h = Find(g.first(g.size() - 1)))
      backoff += h->log10_backoff;
  }
  // Only reachable when the model has no <unk> unigram.
  return kLog10Impossible;
}

double BackoffModel::Prob(WordSpan history, const std::string &word) const {
  return std::pow(10.0, Log10Prob(history, word));
}

BackoffModel BackoffModel::Uniform(const std::vector<std::string> &words) {
  std::set<std::string> vocab(words.begin(), words.end());
  vocab.erase(kBos);
  vocab.insert(kEos);
  vocab.insert(kUnk);
  BackoffModel model(1);
  double lp = -std::log10(static_cast<double>(vocab.size()));
  for (const std::string &w : vocab) model.SetEntry(WordSpan(&w, 1), {lp, 0.0});
  return model;
}

NGram InitialHistory(int order) { return NGram(order - 1, kBos); }

double SentenceLog10Prob(const BackoffModel &model, const Sentence &sentence) {
  NGram history = InitialHistory(model.Order());
  double total = 0.0;
  auto step = [&](const std::string &w) {
    total += model.Log10Prob(history, w);
    if (!history.empty()) {
      history.erase(history.begin());
      history.push_back(w);
    }
  };
  for (const std::string &w : sentence) step(w);
  step(kEos);
  return total;
}

double Perplexity(const BackoffModel &model, const Corpus &corpus) {
  if (corpus.empty())
    throw std::invalid_argument("perplexity of an empty corpus");
  double total = 0.0;
  std::size_t tokens = 0;
  for (const Sentence &s : corpus) {
    total += SentenceLog10Prob(model, s);
    tokens += s.size() + 1;
  }
  return std::pow(10.0, -total / static_cast<double>(tokens));
}

}  // namespace lmaug
