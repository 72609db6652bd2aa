// lmaug/decode-sim.h

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

#ifndef LMAUG_DECODE_SIM_H_
#define LMAUG_DECODE_SIM_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lmaug/backoff-model.h"
#include "lmaug/lattice.h"

namespace lmaug {

// Stand-in for a real decoder: builds, from the reference transcript, the
// lattice an acoustic front end could plausibly have produced with a given
// lexicon.  Acoustic costs come from character edit distance only, so runs
// are replayable.
struct DecodeSimConfig {
  int k_confusions = 5;
  double edit_threshold = 0.5;
  /// Acoustic cost per unit of normalized edit distance.
  double acoustic_scale = 6.0;
  bool allow_splits = true;
  /// Acoustic cost of each arc of a two-way split.
  double split_cost = 0.0;
  double beam = 10.0;
  /// Kept for interface stability; the construction is fully deterministic
  /// and does not draw random numbers.
  std::uint64_t seed = 0;
};

/// levenshtein(code points) / max(length); 0 for two empty strings.
double NormalizedEditDistance(const std::string &a, const std::string &b);

struct Candidate {
  std::string word;   // first word
  std::string second; // non-empty for a two-way split
  double am_cost = 0.0;
};

class DecodeSimulator {
 public:
  /// The lexicon is every word `lm` can emit plus `extra_lexicon`; words
  /// missing from `lm` are scored as <unk> by it.
  DecodeSimulator(const BackoffModel &lm, const DecodeSimConfig &cfg,
                  const std::vector<std::string> &extra_lexicon = {});

  /// Throws std::invalid_argument on an empty reference.
  Lattice Decode(const Sentence &reference, const std::string &id = "") const;

  /// Arcs that would be offered for one reference word, in arc order.
  std::vector<Candidate> Candidates(const std::string &word) const;

  const std::vector<std::string> &Lexicon() const { return lexicon_; }
  bool InLexicon(const std::string &w) const;

 private:
  const BackoffModel &lm_;
  DecodeSimConfig cfg_;
  std::vector<std::string> lexicon_;  // sorted, unique
  std::vector<std::u32string> lexicon_cps_;
};

/// One-shot helper around DecodeSimulator.
Lattice SimulateDecode(const Sentence &reference, const BackoffModel &lm,
                       const DecodeSimConfig &cfg);

}  // namespace lmaug

#endif  // LMAUG_DECODE_SIM_H_
