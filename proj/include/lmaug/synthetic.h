// lmaug/synthetic.h

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

#ifndef LMAUG_SYNTHETIC_H_
#define LMAUG_SYNTHETIC_H_

#include <cstdint>
#include <string>

#include "lmaug/corpus.h"

namespace lmaug {

// Desk-scale stand-in for a low-resource language: words are stem+suffix
// strings over a small alphabet (so many words are near neighbours), some
// words are concatenations of two others, frequencies are Zipfian and each
// word prefers a few successors.
struct SyntheticSpec {
  std::uint64_t seed = 7;
  std::size_t train_sentences = 50;
  std::size_t larger_sentences = 500;
  std::size_t test_sentences = 100;
  double target_oov_rate = 0.20;
  std::size_t vocab_size = 600;
  std::size_t min_stem_syllables = 1;
  std::size_t max_stem_syllables = 3;
  std::size_t min_sentence_length = 5;
  std::size_t max_sentence_length = 10;
  /// Share of lexicon entries that are two-word compounds.
  double compound_prob = 0.08;
  /// Chance that the next word is drawn from the previous word's successors.
  double follow_prob = 0.7;
  std::size_t successors_per_word = 4;
  double zipf_exponent = 1.0;

  /// Parses a JSON object; absent keys keep their defaults.
  static SyntheticSpec FromJson(const std::string &json_text);
  std::string ToJson() const;
};

struct SyntheticData {
  Corpus train;
  Corpus larger;
  Corpus test;
  /// Share of test tokens missing from the training vocabulary.
  double achieved_oov_rate = 0.0;
  /// Share of test OOV types that occur in the larger corpus.
  double larger_coverage = 0.0;
};

/// Deterministic given the spec.  Exactly round(target * N) of the N test
/// tokens are out of the training vocabulary, all of them drawn from the
/// larger corpus.  Throws std::invalid_argument when the spec cannot be
/// met.
SyntheticData GenerateSynthetic(const SyntheticSpec &spec);

}  // namespace lmaug

#endif  // LMAUG_SYNTHETIC_H_
