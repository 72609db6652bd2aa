// lmaug/synthetic.cc

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

#include "lmaug/synthetic.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "lmaug/rng.h"

namespace lmaug {

namespace {

const char kConsonants[] = "kgcjtdnpbmyrlvs";
const char kVowels[] = "aeiou";
const char *const kSuffixes[] = {"", "lu", "ki", "ni", "du", "ku", "mu", "ga"};

// Weighted sampler over a fixed list of word ids.
struct Sampler {
  std::vector<std::size_t> ids;
  std::vector<double> cumulative;

  void Add(std::size_t id, double weight) {
    ids.push_back(id);
    cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) +
                         weight);
  }
  bool Empty() const { return ids.empty(); }
  std::size_t Draw(Rng *rng) const { return ids[rng->Pick(cumulative)]; }
};

class Language {
 public:
  Language(const SyntheticSpec &spec, Rng *rng) : spec_(spec), rng_(rng) {
    BuildLexicon();
    weights_.resize(words_.size());
    for (std::size_t r = 0; r < words_.size(); ++r) {
      weights_[r] = 1.0 / std::pow(static_cast<double>(r + 1),
                                   spec.zipf_exponent);
      all_.Add(r, weights_[r]);
    }
    successors_.resize(words_.size());
    for (auto &succ : successors_)
      for (std::size_t k = 0; k < spec.successors_per_word; ++k)
        succ.push_back(all_.Draw(rng_));
  }

  const std::string &Word(std::size_t id) const { return words_[id]; }
  std::size_t Size() const { return words_.size(); }
  double Weight(std::size_t id) const { return weights_[id]; }

  std::size_t Length() {
    return spec_.min_sentence_length +
           rng_->Below(spec_.max_sentence_length - spec_.min_sentence_length +
                       1);
  }

  // Next word given the previous one (or none), restricted to `allowed`
  // (null means the whole lexicon).
  std::size_t Next(const std::size_t *prev, const Sampler &pool,
                   const std::vector<char> *allowed) {
    if (prev != nullptr && rng_->Uniform() < spec_.follow_prob) {
      std::vector<std::size_t> options;
      for (std::size_t s : successors_[*prev])
        if (allowed == nullptr || (*allowed)[s]) options.push_back(s);
      if (!options.empty()) return options[rng_->Below(options.size())];
    }
    return pool.Draw(rng_);
  }

  Sentence Generate() {
    Sentence s;
    std::size_t len = Length();
    std::size_t prev = 0;
    for (std::size_t i = 0; i < len; ++i) {
      prev = Next(i == 0 ? nullptr : &prev, all_, nullptr);
      s.push_back(words_[prev]);
    }
    return s;
  }

 private:
  std::string Stem() {
    std::size_t n = spec_.min_stem_syllables +
                    rng_->Below(spec_.max_stem_syllables -
                                spec_.min_stem_syllables + 1);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
      out += kConsonants[rng_->Below(sizeof(kConsonants) - 1)];
      out += kVowels[rng_->Below(sizeof(kVowels) - 1)];
    }
    return out;
  }

  void BuildLexicon() {
    const std::size_t n_compound = static_cast<std::size_t>(
        std::llround(spec_.compound_prob * spec_.vocab_size));
    const std::size_t n_simple = spec_.vocab_size - n_compound;
    std::unordered_set<std::string> seen;
    const std::size_t n_suffixes = sizeof(kSuffixes) / sizeof(kSuffixes[0]);
    std::size_t attempts = 0;
    while (words_.size() < n_simple) {
      if (++attempts > 100 * spec_.vocab_size + 1000)
        throw std::invalid_argument(
            "synthetic spec: cannot draw enough distinct words");
      std::string stem = Stem();
      // Each stem inflects with a few suffixes, giving near-neighbour words.
      std::size_t forms = 1 + rng_->Below(4);
      for (std::size_t f = 0; f < forms && words_.size() < n_simple; ++f) {
        std::string w = stem + kSuffixes[rng_->Below(n_suffixes)];
        if (seen.insert(w).second) words_.push_back(w);
      }
    }
    attempts = 0;
    while (words_.size() < spec_.vocab_size) {
      if (++attempts > 100 * spec_.vocab_size + 1000 || n_simple < 2)
        throw std::invalid_argument(
            "synthetic spec: cannot draw enough distinct compounds");
      std::string w = words_[rng_->Below(n_simple)] +
                      words_[rng_->Below(n_simple)];
      if (seen.insert(w).second) words_.push_back(w);
    }
    // Frequency rank is independent of how a word was made.
    rng_->Shuffle(&words_);
  }

  const SyntheticSpec &spec_;
  Rng *rng_;
  std::vector<std::string> words_;
  std::vector<double> weights_;
  std::vector<std::vector<std::size_t>> successors_;
  Sampler all_;
};

void Validate(const SyntheticSpec &s) {
  if (!(s.target_oov_rate >= 0.0 && s.target_oov_rate < 1.0))
    throw std::invalid_argument("synthetic spec: target_oov_rate not in [0,1)");
  if (s.train_sentences == 0 || s.test_sentences == 0)
    throw std::invalid_argument("synthetic spec: empty train or test set");
  if (s.vocab_size < 2)
    throw std::invalid_argument("synthetic spec: vocab_size must be >= 2");
  if (s.min_sentence_length == 0 ||
      s.min_sentence_length > s.max_sentence_length)
    throw std::invalid_argument("synthetic spec: bad sentence lengths");
  if (s.min_stem_syllables == 0 || s.min_stem_syllables > s.max_stem_syllables)
    throw std::invalid_argument("synthetic spec: bad stem lengths");
  if (!(s.compound_prob >= 0.0 && s.compound_prob < 1.0))
    throw std::invalid_argument("synthetic spec: compound_prob not in [0,1)");
  if (!(s.follow_prob >= 0.0 && s.follow_prob <= 1.0))
    throw std::invalid_argument("synthetic spec: follow_prob not in [0,1]");
}

}  // namespace

SyntheticSpec SyntheticSpec::FromJson(const std::string &text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object())
    throw std::invalid_argument("synthetic spec must be a JSON object");
  SyntheticSpec s;
#define LMAUG_FIELD(name) \
  if (j.contains(#name)) j.at(#name).get_to(s.name)
  LMAUG_FIELD(seed);
  LMAUG_FIELD(train_sentences);
  LMAUG_FIELD(larger_sentences);
  LMAUG_FIELD(test_sentences);
  LMAUG_FIELD(target_oov_rate);
  LMAUG_FIELD(vocab_size);
  LMAUG_FIELD(min_stem_syllables);
  LMAUG_FIELD(max_stem_syllables);
  LMAUG_FIELD(min_sentence_length);
  LMAUG_FIELD(max_sentence_length);
  LMAUG_FIELD(compound_prob);
  LMAUG_FIELD(follow_prob);
  LMAUG_FIELD(successors_per_word);
  LMAUG_FIELD(zipf_exponent);
#undef LMAUG_FIELD
  return s;
}

std::string SyntheticSpec::ToJson() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["train_sentences"] = train_sentences;
  j["larger_sentences"] = larger_sentences;
  j["test_sentences"] = test_sentences;
  j["target_oov_rate"] = target_oov_rate;
  j["vocab_size"] = vocab_size;
  j["min_stem_syllables"] = min_stem_syllables;
  j["max_stem_syllables"] = max_stem_syllables;
  j["min_sentence_length"] = min_sentence_length;
  j["max_sentence_length"] = max_sentence_length;
  j["compound_prob"] = compound_prob;
  j["follow_prob"] = follow_prob;
  j["successors_per_word"] = successors_per_word;
  j["zipf_exponent"] = zipf_exponent;
  return j.dump(2);
}

SyntheticData GenerateSynthetic(const SyntheticSpec &spec) {
  Validate(spec);
  Rng rng(spec.seed);
  Language lang(spec, &rng);
  SyntheticData data;
  for (std::size_t i = 0; i < spec.train_sentences; ++i)
    data.train.push_back(lang.Generate());
  for (std::size_t i = 0; i < spec.larger_sentences; ++i)
    data.larger.push_back(lang.Generate());

  Vocabulary train_vocab = BuildVocabulary(data.train);
  Vocabulary larger_vocab = BuildVocabulary(data.larger);
  std::vector<char> in_train(lang.Size(), 0), oot(lang.Size(), 0);
  Sampler train_pool, oot_pool;
  for (std::size_t id = 0; id < lang.Size(); ++id) {
    if (train_vocab.Contains(lang.Word(id))) {
      in_train[id] = 1;
      train_pool.Add(id, lang.Weight(id));
    } else if (larger_vocab.Contains(lang.Word(id))) {
      oot[id] = 1;
      oot_pool.Add(id, lang.Weight(id));
    }
  }

  // Lengths first, so the number of OOV positions is fixed up front.
  std::vector<std::size_t> lengths;
  std::size_t total = 0;
  for (std::size_t i = 0; i < spec.test_sentences; ++i) {
    lengths.push_back(lang.Length());
    total += lengths.back();
  }
  const std::size_t n_oov = static_cast<std::size_t>(
      std::llround(spec.target_oov_rate * static_cast<double>(total)));
  if (n_oov > 0 && oot_pool.Empty())
    throw std::invalid_argument(
        "synthetic spec: the larger corpus adds no words beyond training, so "
        "the OOV target is unreachable");
  std::vector<char> is_oov(total, 0);
  for (std::size_t i = 0; i < n_oov; ++i) is_oov[i] = 1;
  rng.Shuffle(&is_oov);

  std::size_t pos = 0;
  for (std::size_t len : lengths) {
    Sentence s;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < len; ++i, ++pos) {
      const bool want_oov = is_oov[pos];
      prev = lang.Next(i == 0 ? nullptr : &prev,
                       want_oov ? oot_pool : train_pool,
                       want_oov ? &oot : &in_train);
      s.push_back(lang.Word(prev));
    }
    data.test.push_back(std::move(s));
  }

  std::set<std::string> oov_types;
  std::size_t oov_tokens = 0;
  for (const Sentence &s : data.test)
    for (const std::string &w : s)
      if (!train_vocab.Contains(w)) {
        ++oov_tokens;
        oov_types.insert(w);
      }
  data.achieved_oov_rate = static_cast<double>(oov_tokens) / total;
  std::size_t covered = 0;
  for (const std::string &w : oov_types)
    if (larger_vocab.Contains(w)) ++covered;
  data.larger_coverage =
      oov_types.empty() ? 1.0
                        : static_cast<double>(covered) / oov_types.size();
  return data;
}

}  // namespace lmaug
