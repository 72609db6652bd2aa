// lmaug/text-select.cc

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

#include "lmaug/text-select.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "lmaug/rng.h"

namespace lmaug {

std::vector<NGram> SentenceTrigrams(const Sentence &sentence) {
  std::vector<NGram> out;
  NGram window = {kBos, kBos};
  auto push = [&](const std::string &w) {
    out.push_back({window[0], window[1], w});
    window[0] = window[1];
    window[1] = w;
  };
  for (const std::string &w : sentence) push(w);
  push(kEos);
  return out;
}

double ScoreContrastive(const Sentence &sentence,
                        const BackoffModel &in_domain,
                        const BackoffModel &general) {
  std::vector<NGram> trigrams = SentenceTrigrams(sentence);
  double sum = 0.0;
  for (const NGram &t : trigrams) {
    WordSpan h(t.data(), 2);
    sum += std::log(in_domain.Prob(h, t[2])) - std::log(general.Prob(h, t[2]));
  }
  return sum / static_cast<double>(trigrams.size());
}

double ScoreEntropy(const Sentence &sentence, const BackoffModel &target,
                    bool joint) {
  std::vector<NGram> trigrams = SentenceTrigrams(sentence);
  double sum = 0.0;
  for (const NGram &t : trigrams) {
    double p = target.Prob(WordSpan(t.data(), 2), t[2]);
    if (joint) {
      if (t[1] != kBos) p *= target.Prob(WordSpan(t.data(), 1), t[1]);
      if (t[0] != kBos) p *= target.Prob(WordSpan(), t[0]);
    }
    sum += -p * std::log(p);
  }
  return sum / static_cast<double>(trigrams.size());
}

DeltaLikelihoodScorer::DeltaLikelihoodScorer(
    const Corpus &candidates, const NGramCountTable &target_counts,
    const NGramCountTable &augmented_counts)
    : candidates_(candidates), estimator_(augmented_counts) {
  const int n = target_counts.Order();
  for (const auto &kv : target_counts.OfOrder(n)) {
    target_trigrams_.emplace_back(kv.first, kv.second);
    WordSpan g(kv.first);
    full_log_probs_.push_back(
        std::log(estimator_.Prob(g.first(n - 1), g.back())));
  }
}

double DeltaLikelihoodScorer::Score(std::size_t i) const {
  if (i >= candidates_.size())
    throw std::out_of_range("sentence index out of range");
  NGramCountTable removed(estimator_.counts().Order());
  removed.AddSentence(candidates_[i], true);
  WittenBellEstimator::Removal removal = estimator_.MakeRemoval(removed);
  double delta = 0.0;
  for (std::size_t k = 0; k < target_trigrams_.size(); ++k) {
    WordSpan g(target_trigrams_[k].first);
    double p_without =
        estimator_.ProbWithout(removal, g.first(g.size() - 1), g.back());
    delta += static_cast<double>(target_trigrams_[k].second) *
             (full_log_probs_[k] - std::log(p_without));
  }
  return delta;
}

SelectionMethod ParseSelectionMethod(const std::string &name) {
  if (name == "contrastive") return SelectionMethod::kContrastive;
  if (name == "delta_likelihood" || name == "delta")
    return SelectionMethod::kDeltaLikelihood;
  if (name == "entropy") return SelectionMethod::kEntropy;
  if (name == "random") return SelectionMethod::kRandom;
  throw std::invalid_argument("unknown selection method '" + name + "'");
}

std::string SelectionMethodName(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::kContrastive: return "contrastive";
    case SelectionMethod::kDeltaLikelihood: return "delta_likelihood";
    case SelectionMethod::kEntropy: return "entropy";
    case SelectionMethod::kRandom: return "random";
  }
  return "unknown";
}

std::vector<ScoredSentence> SelectSentences(const Corpus &corpus,
                                            const SelectionConfig &cfg,
                                            const SelectionInputs &inputs) {
  if (corpus.empty()) throw std::invalid_argument("selection on empty corpus");
  if (!(cfg.fraction > 0.0 && cfg.fraction <= 1.0))
    throw std::invalid_argument("selection fraction must be in (0, 1]");
  const std::size_t n = corpus.size();
  const std::size_t keep = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::ceil(cfg.fraction * n - 1e-12)));

  if (cfg.method == SelectionMethod::kRandom) {
    std::vector<ScoredSentence> scored(n);
    for (std::size_t i = 0; i < n; ++i) {
      scored[i].index = i;
      scored[i].sentence = corpus[i];
      scored[i].trigram_count = corpus[i].size() + 1;
    }
    Rng rng(cfg.seed);
    rng.Shuffle(&scored);
    scored.resize(keep);
    return scored;
  }

  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (cfg.method) {
      case SelectionMethod::kContrastive:
        if (!inputs.in_domain || !inputs.general)
          throw std::invalid_argument("contrastive selection needs D and B");
        scores[i] =
            ScoreContrastive(corpus[i], *inputs.in_domain, *inputs.general);
        break;
      case SelectionMethod::kEntropy:
        if (!inputs.target)
          throw std::invalid_argument("entropy selection needs a target LM");
        scores[i] = ScoreEntropy(corpus[i], *inputs.target, cfg.entropy_joint);
        break;
      case SelectionMethod::kDeltaLikelihood:
        if (!inputs.delta || inputs.delta->Size() != n)
          throw std::invalid_argument(
              "delta-likelihood selection needs a scorer over the corpus");
        scores[i] = inputs.delta->Score(i);
        break;
      case SelectionMethod::kRandom:
        break;
    }
  }
  return RankByScore(corpus, scores, cfg.fraction);
}

std::vector<ScoredSentence> RankByScore(const Corpus &corpus,
                                        const std::vector<double> &scores,
                                        double fraction) {
  if (corpus.size() != scores.size())
    throw std::invalid_argument("one score per sentence required");
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("selection fraction must be in (0, 1]");
  const std::size_t n = corpus.size();
  const std::size_t keep = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::ceil(fraction * n - 1e-12)));
  std::vector<ScoredSentence> scored(n);
  for (std::size_t i = 0; i < n; ++i) {
    scored[i].index = i;
    scored[i].sentence = corpus[i];
    scored[i].score = scores[i];
    scored[i].trigram_count = corpus[i].size() + 1;
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredSentence &a, const ScoredSentence &b) {
                     return a.score > b.score;
                   });
  scored.resize(keep);
  return scored;
}

void WriteSelectionTsv(std::ostream &os,
                       const std::vector<ScoredSentence> &selected) {
  char buf[64];
  for (std::size_t r = 0; r < selected.size(); ++r) {
    std::snprintf(buf, sizeof(buf), "%.9g", selected[r].score);
    os << (r + 1) << '\t' << buf << '\t' << JoinTokens(selected[r].sentence)
       << '\n';
  }
}

}  // namespace lmaug
