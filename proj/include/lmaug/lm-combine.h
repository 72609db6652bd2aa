// lmaug/lm-combine.h

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

#ifndef LMAUG_LM_COMBINE_H_
#define LMAUG_LM_COMBINE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmaug/backoff-model.h"
#include "lmaug/corpus.h"
#include "lmaug/ngram-counts.h"

namespace lmaug {

/// One domain of a count-merged mixture: its counts, the Witten-Bell model
/// trained from them and its scaling factor beta (> 0).
struct MixtureComponent {
  std::string id;
  NGramCountTable counts{1};
  BackoffModel model{1};
  double beta = 1.0;
};

/// Counts `corpus` at `order` and trains the component's model.
MixtureComponent MakeComponent(const std::string &id, const Corpus &corpus,
                               int order, double beta = 1.0);
/// Unigram-only component over the OOT words of `oot`.
MixtureComponent MakeOotComponent(const OotReport &oot, double beta = 1.0);

struct MergedModel {
  BackoffModel model{1};
  std::vector<std::string> component_ids;
  std::vector<double> betas;
  /// Empty on success; a warning when the merge degenerated.
  std::string status;
};

/// c_i(h): total count of the continuations of h in the component.  For the
/// empty history this is the component's token total.
Count HistoryCount(const MixtureComponent &c, WordSpan history);

/// lambda_i(h) = beta_i c_i(h) / sum_j beta_j c_j(h).  Returns nullopt when
/// no component has seen h; callers then fall back to the shorter history.
std::optional<double> InterpolationWeight(
    std::span<const MixtureComponent> components, WordSpan history,
    std::size_t i);

enum class ConditionalKind { kSmoothed, kMaximumLikelihood };

/// Union of the words the components' models predict, without <unk>.
std::vector<std::string> MergedVocabulary(
    std::span<const MixtureComponent> components);

/// A component's conditional over the merged vocabulary.  Smoothed values
/// come from the component model; words the component has never seen share
/// its <unk> probability evenly with <unk> itself, so each component stays
/// a distribution over merged vocabulary ∪ {<unk>}.  Maximum-likelihood
/// values are c(h, w) / c(h).
class ComponentConditional {
 public:
  ComponentConditional(const MixtureComponent &component,
                       const std::vector<std::string> &merged_vocab);
  double operator()(WordSpan history, const std::string &word,
                    ConditionalKind kind = ConditionalKind::kSmoothed) const;

 private:
  const MixtureComponent &component_;
  std::size_t unseen_share_;  // |merged \ component vocab| + 1
};

/// sum_i lambda_i(h) p_i(w | h) evaluated directly for one (h, w).  Returns
/// nullopt when no component has seen h.
std::optional<double> CountMergeConditional(
    std::span<const MixtureComponent> components, WordSpan history,
    const std::string &word,
    ConditionalKind kind = ConditionalKind::kSmoothed);

/// Builds the count-merged backoff model.  For every history seen by some
/// component, each (h, w) seen by some component stores the merged
/// conditional; backoff weights renormalize the remaining mass onto the
/// merged (n-1)-order distribution.  Histories no component has seen back
/// off directly.  Throws std::invalid_argument for an empty component list.
MergedModel CountMerge(std::span<const MixtureComponent> components, int order);

/// P(w | h) = sum_i weights_i P_i(w | h) on the union of the models'
/// entries, renormalized through backoff weights.  Throws
/// std::invalid_argument when the weights do not sum to 1 within 1e-9.
MergedModel LinearInterpolate(std::span<const BackoffModel> models,
                              std::span<const double> weights);

/// Count-merges `base` with a unigram component built from the OOT counts.
/// An empty report returns the base model unchanged with a warning status.
MergedModel BuildOwalm(const MixtureComponent &base, const OotReport &oot,
                       double beta_oot = 1.0);

struct ModelStats {
  int order = 0;
  std::vector<std::size_t> entries;  // per order
  std::size_t total_entries = 0;
  std::size_t estimated_bytes = 0;
};

/// Resident-size estimate: each n-gram entry costs n 4-byte word ids plus a
/// 4-byte probability and a 4-byte backoff.
ModelStats ComputeModelStats(const BackoffModel &model);
std::string ModelStatsJson(const ModelStats &stats);

}  // namespace lmaug

#endif  // LMAUG_LM_COMBINE_H_
