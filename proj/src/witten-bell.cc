// lmaug/witten-bell.cc

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

#include "lmaug/witten-bell.h"

#include <cmath>
#include <stdexcept>

#include "lmaug/error.h"

namespace lmaug {

WittenBellEstimator::WittenBellEstimator(const NGramCountTable &counts)
    : counts_(counts) {
  predicted_types_ = counts.OfOrder(1).size();
  has_unk_word_ = counts.Get(WordSpan(&kUnk, 1)) > 0;
}

WittenBellEstimator::Removal WittenBellEstimator::MakeRemoval(
    const NGramCountTable &removed) const {
  if (removed.Order() > counts_.Order())
    throw std::invalid_argument("removed counts have a higher order");
  Removal r;
  r.removed_ = &removed;
  r.vanished_types_.resize(counts_.Order());
  for (int n = 1; n <= removed.Order(); ++n) {
    for (const auto &kv : removed.OfOrder(n)) {
      Count have = counts_.Get(kv.first);
      if (kv.second > have)
        throw std::invalid_argument("removed counts exceed the table's");
      if (kv.second < have) continue;
      WordSpan g(kv.first);
      WordSpan history = g.first(g.size() - 1);
      auto &m = r.vanished_types_[history.size()];
      auto it = m.find(history);
      if (it == m.end())
        m.emplace(NGram(history.begin(), history.end()), 1);
      else
        ++it->second;
      if (n == 1) {
        ++r.vanished_words_;
        if (kv.first[0] == kUnk) r.unk_word_vanishes_ = true;
      }
    }
  }
  return r;
}

Count WittenBellEstimator::CountOf(const Removal *removal,
                                   WordSpan ngram) const {
  Count c = counts_.Get(ngram);
  if (removal != nullptr) c -= removal->removed_->Get(ngram);
  return c;
}

HistoryStats WittenBellEstimator::StatsOf(const Removal *removal,
                                          WordSpan history) const {
  HistoryStats st = counts_.History(history);
  if (removal != nullptr) {
    st.total -= removal->removed_->History(history).total;
    const auto &m = removal->vanished_types_[history.size()];
    auto it = m.find(history);
    if (it != m.end()) st.types -= it->second;
  }
  return st;
}

bool WittenBellEstimator::Known(const Removal *removal,
                                const std::string &word) const {
  if (word == kBos) return true;
  return CountOf(removal, WordSpan(&word, 1)) > 0;
}

std::size_t WittenBellEstimator::UniformSize() const {
  return predicted_types_ + (has_unk_word_ ? 0 : 1);
}

double WittenBellEstimator::BackoffMass(WordSpan history) const {
  HistoryStats st = StatsOf(nullptr, history);
  if (st.total == 0) return 1.0;
  return static_cast<double>(st.types) /
         static_cast<double>(st.total + st.types);
}

double WittenBellEstimator::ProbImpl(const Removal *removal, WordSpan history,
                                     const std::string &word) const {
  int max_hist = counts_.Order() - 1;
  if (static_cast<int>(history.size()) > max_hist)
    history = history.last(max_hist);
  NGram gram;
  gram.reserve(history.size() + 1);
  for (const std::string &h : history)
    gram.push_back(Known(removal, h) ? h : kUnk);
  gram.push_back(Known(removal, word) ? word : kUnk);

  std::size_t uniform = predicted_types_;
  bool unk_word = has_unk_word_;
  if (removal != nullptr) {
    uniform -= removal->vanished_words_;
    unk_word = unk_word && !removal->unk_word_vanishes_;
  }
  if (!unk_word) ++uniform;

  WordSpan all(gram);
  double p = 1.0 / static_cast<double>(uniform);
  HistoryStats top = StatsOf(removal, WordSpan());
  if (top.total > 0) {
    p = (static_cast<double>(CountOf(removal, all.last(1))) + top.types * p) /
        static_cast<double>(top.total + top.types);
  }
  for (std::size_t k = 1; k < gram.size(); ++k) {
    WordSpan g = all.last(k + 1);
    HistoryStats st = StatsOf(removal, g.first(k));
    if (st.total == 0) continue;
    p = (static_cast<double>(CountOf(removal, g)) + st.types * p) /
        static_cast<double>(st.total + st.types);
  }
  return p;
}

double WittenBellEstimator::Prob(WordSpan history,
                                 const std::string &word) const {
  return ProbImpl(nullptr, history, word);
}

double WittenBellEstimator::ProbWithout(const Removal &removal,
                                        WordSpan history,
                                        const std::string &word) const {
  return ProbImpl(&removal, history, word);
}

BackoffModel TrainWittenBell(const NGramCountTable &counts) {
  if (counts.OfOrder(1).empty())
    throw TrainingError("cannot train a model from empty counts");
  WittenBellEstimator est(counts);
  const int order = counts.Order();
  BackoffModel model(order);

  for (int n = 1; n <= order; ++n) {
    for (const auto &kv : counts.OfOrder(n)) {
      WordSpan g(kv.first);
      double p = est.Prob(g.first(n - 1), g.back());
      model.SetEntry(g, {std::log10(p), 0.0});
    }
  }
  if (model.Find(WordSpan(&kUnk, 1)) == nullptr)
    model.SetEntry(WordSpan(&kUnk, 1),
                   {std::log10(est.Prob(WordSpan(), kUnk)), 0.0});

  // Backoff weights.  Every history of order n+1 needs an order-n entry.
  for (int n = 1; n < order; ++n) {
    for (const auto &kv : counts.Histories(n + 1)) {
      WordSpan h(kv.first);
      const NGramEntry *e = model.Find(h);
      NGramEntry entry = e ? *e : NGramEntry{kLog10Impossible, 0.0};
      entry.log10_backoff = std::log10(est.BackoffMass(h));
      model.SetEntry(h, entry);
    }
  }
  return model;
}

}  // namespace lmaug
