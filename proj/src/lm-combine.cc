// lmaug/lm-combine.cc

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

#include "lmaug/lm-combine.h"

#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "lmaug/witten-bell.h"

namespace lmaug {

MixtureComponent MakeComponent(const std::string &id, const Corpus &corpus,
                               int order, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  MixtureComponent c;
  c.id = id;
  c.counts = CountNGrams(corpus, order);
  c.model = TrainWittenBell(c.counts);
  c.beta = beta;
  return c;
}

MixtureComponent MakeOotComponent(const OotReport &oot, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  MixtureComponent c;
  c.id = "oot";
  c.counts = NGramCountTable(1);
  for (const auto &kv : oot.oot_words)
    c.counts.Add(WordSpan(&kv.first, 1), kv.second);
  c.model = TrainWittenBell(c.counts);
  c.beta = beta;
  return c;
}

Count HistoryCount(const MixtureComponent &c, WordSpan history) {
  return c.counts.History(history).total;
}

std::optional<double> InterpolationWeight(
    std::span<const MixtureComponent> components, WordSpan history,
    std::size_t i) {
  if (i >= components.size())
    throw std::out_of_range("component index out of range");
  double denom = 0.0;
  for (const MixtureComponent &c : components)
    denom += c.beta * static_cast<double>(HistoryCount(c, history));
  if (denom <= 0.0) return std::nullopt;
  return components[i].beta *
         static_cast<double>(HistoryCount(components[i], history)) / denom;
}

namespace {

std::set<std::string> ModelVocab(const BackoffModel &m) {
  std::set<std::string> v;
  for (std::string &w : m.PredictedWords())
    if (w != kUnk) v.insert(std::move(w));
  return v;
}

std::size_t UnseenShare(const BackoffModel &m,
                        const std::vector<std::string> &merged) {
  std::size_t k = 0;
  for (const std::string &w : merged)
    if (w != kUnk && !m.InVocabulary(w)) ++k;
  return k + 1;
}

double LiftedProb(const BackoffModel &m, std::size_t unseen_share,
                  WordSpan history, const std::string &word) {
  if (word != kUnk && m.InVocabulary(word)) return m.Prob(history, word);
  return m.Prob(history, kUnk) / static_cast<double>(unseen_share);
}

using Conditional =
    std::function<double(WordSpan history, const std::string &word)>;

// Stores conditional(h, w) for every listed continuation and picks backoff
// weights so that each history's distribution sums to one over the
// vocabulary plus <unk>.  continuations[n-1] maps histories of length n-1 to
// the words stored after them; continuations[0] is ignored and the unigram
// level covers `vocab` ∪ {<unk>}.
BackoffModel BuildFromConditionals(
    int order, const std::vector<std::string> &vocab,
    const std::vector<NGramMap<std::set<std::string>>> &continuations,
    const Conditional &conditional) {
  BackoffModel model(order);
  const NGram empty;
  for (const std::string &w : vocab)
    model.SetEntry(WordSpan(&w, 1), {std::log10(conditional(empty, w)), 0.0});
  model.SetEntry(WordSpan(&kUnk, 1),
                 {std::log10(conditional(empty, kUnk)), 0.0});

  for (int n = 2; n <= order; ++n) {
    for (const auto &kv : continuations[n - 1]) {
      WordSpan h(kv.first);
      double seen_mass = 0.0, lower_mass = 0.0;
      std::vector<std::pair<std::string, double>> probs;
      for (const std::string &w : kv.second) {
        double p = conditional(h, w);
        probs.emplace_back(w, p);
        seen_mass += p;
        lower_mass += model.Prob(h.last(n - 2), w);
      }
      const NGramEntry *e = model.Find(h);
      NGramEntry hist = e ? *e : NGramEntry{kLog10Impossible, 0.0};
      double num = 1.0 - seen_mass, den = 1.0 - lower_mass;
      hist.log10_backoff = (num > 0.0 && den > 0.0) ? std::log10(num / den)
                                                    : kLog10Impossible;
      model.SetEntry(h, hist);
      NGram g(h.begin(), h.end());
      g.emplace_back();
      for (const auto &wp : probs) {
        g.back() = wp.first;
        model.SetEntry(g, {std::log10(wp.second), 0.0});
      }
    }
  }
  return model;
}

}  // namespace

std::vector<std::string> MergedVocabulary(
    std::span<const MixtureComponent> components) {
  std::set<std::string> v;
  for (const MixtureComponent &c : components) {
    std::set<std::string> cv = ModelVocab(c.model);
    v.insert(cv.begin(), cv.end());
  }
  return std::vector<std::string>(v.begin(), v.end());
}

ComponentConditional::ComponentConditional(
    const MixtureComponent &component,
    const std::vector<std::string> &merged_vocab)
    : component_(component),
      unseen_share_(UnseenShare(component.model, merged_vocab)) {}

double ComponentConditional::operator()(WordSpan history,
                                        const std::string &word,
                                        ConditionalKind kind) const {
  if (kind == ConditionalKind::kSmoothed)
    return LiftedProb(component_.model, unseen_share_, history, word);
  Count hc = HistoryCount(component_, history);
  if (hc == 0) return 0.0;
  NGram g(history.begin(), history.end());
  g.push_back(word);
  return static_cast<double>(component_.counts.Get(g)) /
         static_cast<double>(hc);
}

std::optional<double> CountMergeConditional(
    std::span<const MixtureComponent> components, WordSpan history,
    const std::string &word, ConditionalKind kind) {
  std::vector<std::string> merged = MergedVocabulary(components);
  double num = 0.0, den = 0.0;
  for (const MixtureComponent &c : components) {
    double weight = c.beta * static_cast<double>(HistoryCount(c, history));
    if (weight == 0.0) continue;
    num += weight * ComponentConditional(c, merged)(history, word, kind);
    den += weight;
  }
  if (den <= 0.0) return std::nullopt;
  return num / den;
}

MergedModel CountMerge(std::span<const MixtureComponent> components,
                       int order) {
  if (components.empty())
    throw std::invalid_argument("count merge needs at least one component");
  if (order < 1) throw std::invalid_argument("merged order must be >= 1");
  for (const MixtureComponent &c : components)
    if (!(c.beta > 0.0)) throw std::invalid_argument("beta must be positive");

  std::vector<std::string> vocab = MergedVocabulary(components);
  std::vector<ComponentConditional> conds;
  for (const MixtureComponent &c : components) conds.emplace_back(c, vocab);

  std::vector<NGramMap<std::set<std::string>>> continuations(order);
  for (const MixtureComponent &c : components) {
    for (int n = 2; n <= std::min(order, c.counts.Order()); ++n) {
      for (const auto &kv : c.counts.OfOrder(n)) {
        WordSpan g(kv.first);
        continuations[n - 1][NGram(g.begin(), g.end() - 1)].insert(g.back());
      }
    }
  }

  Conditional merged = [&](WordSpan h, const std::string &w) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
      double weight = components[i].beta *
                      static_cast<double>(HistoryCount(components[i], h));
      if (weight == 0.0) continue;
      num += weight * conds[i](h, w);
      den += weight;
    }
    return num / den;
  };

  MergedModel out;
  out.model = BuildFromConditionals(order, vocab, continuations, merged);
  for (const MixtureComponent &c : components) {
    out.component_ids.push_back(c.id);
    out.betas.push_back(c.beta);
  }
  return out;
}

MergedModel LinearInterpolate(std::span<const BackoffModel> models,
                              std::span<const double> weights) {
  if (models.empty() || models.size() != weights.size())
    throw std::invalid_argument("need one weight per model");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("negative interpolation weight");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("interpolation weights must sum to 1");

  int order = 0;
  std::set<std::string> vocab_set;
  for (const BackoffModel &m : models) {
    order = std::max(order, m.Order());
    std::set<std::string> v = ModelVocab(m);
    vocab_set.insert(v.begin(), v.end());
  }
  std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
  std::vector<std::size_t> shares;
  for (const BackoffModel &m : models) shares.push_back(UnseenShare(m, vocab));

  std::vector<NGramMap<std::set<std::string>>> continuations(order);
  for (const BackoffModel &m : models) {
    for (int n = 2; n <= m.Order(); ++n) {
      for (const auto &kv : m.Entries(n)) {
        WordSpan g(kv.first);
        if (g.back() == kBos) continue;  // history placeholders
        continuations[n - 1][NGram(g.begin(), g.end() - 1)].insert(g.back());
      }
    }
  }

  Conditional mix = [&](WordSpan h, const std::string &w) {
    double p = 0.0;
    for (std::size_t i = 0; i < models.size(); ++i)
      if (weights[i] > 0.0)
        p += weights[i] * LiftedProb(models[i], shares[i], h, w);
    return p;
  };

  MergedModel out;
  out.model = BuildFromConditionals(order, vocab, continuations, mix);
  for (std::size_t i = 0; i < models.size(); ++i) {
    out.component_ids.push_back("model" + std::to_string(i));
    out.betas.push_back(weights[i]);
  }
  return out;
}

MergedModel BuildOwalm(const MixtureComponent &base, const OotReport &oot,
                       double beta_oot) {
  if (oot.oot_words.empty()) {
    MergedModel out;
    out.model = base.model;
    out.component_ids = {base.id};
    out.betas = {base.beta};
    out.status = "warning: empty OOT report, base model returned unchanged";
    return out;
  }
  std::vector<MixtureComponent> comps;
  comps.push_back(base);
  comps.push_back(MakeOotComponent(oot, beta_oot));
  return CountMerge(comps, base.model.Order());
}

ModelStats ComputeModelStats(const BackoffModel &model) {
  ModelStats s;
  s.order = model.Order();
  for (int n = 1; n <= model.Order(); ++n) {
    std::size_t e = model.NumEntries(n);
    s.entries.push_back(e);
    s.total_entries += e;
    s.estimated_bytes += e * (4 * n + 8);
  }
  return s;
}

std::string ModelStatsJson(const ModelStats &stats) {
  nlohmann::ordered_json j;
  j["order"] = stats.order;
  j["entries"] = stats.entries;
  j["total_entries"] = stats.total_entries;
  j["estimated_bytes"] = stats.estimated_bytes;
  return j.dump();
}

}  // namespace lmaug
