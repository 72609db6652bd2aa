// lmaug/decode-sim.cc

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

#include "lmaug/decode-sim.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "lmaug/rescore.h"

namespace lmaug {

namespace {

std::size_t Levenshtein(const std::u32string &a, const std::u32string &b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double Normalized(const std::u32string &a, const std::u32string &b) {
  std::size_t len = std::max(a.size(), b.size());
  if (len == 0) return 0.0;
  return static_cast<double>(Levenshtein(a, b)) / static_cast<double>(len);
}

std::string Utf8(const std::u32string &cps, std::size_t begin,
                 std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    char32_t c = cps[i];
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

}  // namespace

double NormalizedEditDistance(const std::string &a, const std::string &b) {
  return Normalized(ToCodePoints(a), ToCodePoints(b));
}

DecodeSimulator::DecodeSimulator(const BackoffModel &lm,
                                 const DecodeSimConfig &cfg,
                                 const std::vector<std::string> &extra_lexicon)
    : lm_(lm), cfg_(cfg) {
  if (cfg.k_confusions < 0)
    throw std::invalid_argument("k_confusions must be >= 0");
  if (!(cfg.edit_threshold >= 0.0 && cfg.edit_threshold <= 1.0))
    throw std::invalid_argument("edit_threshold must be in [0, 1]");
  if (!(cfg.acoustic_scale > 0.0))
    throw std::invalid_argument("acoustic_scale must be positive");
  if (!(cfg.beam > 0.0)) throw std::invalid_argument("beam must be positive");
  for (const std::string &w : lm.PredictedWords())
    if (w != kEos && w != kUnk) lexicon_.push_back(w);
  for (const std::string &w : extra_lexicon)
    if (w != kEos && w != kUnk && w != kBos) lexicon_.push_back(w);
  std::sort(lexicon_.begin(), lexicon_.end());
  lexicon_.erase(std::unique(lexicon_.begin(), lexicon_.end()),
                 lexicon_.end());
  for (const std::string &w : lexicon_) lexicon_cps_.push_back(ToCodePoints(w));
}

bool DecodeSimulator::InLexicon(const std::string &w) const {
  return std::binary_search(lexicon_.begin(), lexicon_.end(), w);
}

std::vector<Candidate> DecodeSimulator::Candidates(
    const std::string &word) const {
  std::vector<Candidate> out;
  const std::u32string cps = ToCodePoints(word);
  if (InLexicon(word)) out.push_back({word, "", 0.0});

  const std::size_t k = static_cast<std::size_t>(cfg_.k_confusions);
  std::vector<std::pair<double, std::size_t>> near;  // (distance, index)
  if (k > 0) {
    for (std::size_t i = 0; i < lexicon_.size(); ++i) {
      if (lexicon_[i] == word) continue;
      const std::u32string &x = lexicon_cps_[i];
      std::size_t len = std::max(x.size(), cps.size());
      std::size_t gap = x.size() > cps.size() ? x.size() - cps.size()
                                              : cps.size() - x.size();
      // The length gap is a lower bound on the distance.
      if (len > 0 && static_cast<double>(gap) / len > cfg_.edit_threshold)
        continue;
      double d = Normalized(cps, x);
      if (d <= cfg_.edit_threshold) near.emplace_back(d, i);
    }
    std::sort(near.begin(), near.end());  // ties by lexicon (sorted) order
    if (near.size() > k) near.resize(k);
    for (const auto &[d, i] : near)
      out.push_back({lexicon_[i], "", cfg_.acoustic_scale * d});
  }

  if (cfg_.allow_splits && cps.size() >= 2) {
    double best = -std::numeric_limits<double>::infinity();
    Candidate split;
    for (std::size_t cut = 1; cut < cps.size(); ++cut) {
      std::string u = Utf8(cps, 0, cut), v = Utf8(cps, cut, cps.size());
      if (!InLexicon(u) || !InLexicon(v)) continue;
      double score = lm_.Log10Prob(WordSpan(), u) + lm_.Log10Prob(WordSpan(), v);
      if (score > best) {
        best = score;
        split = {u, v, cfg_.split_cost};
      }
    }
    if (!split.second.empty()) out.push_back(std::move(split));
  }

  if (out.empty()) {
    // Nothing qualifies: fall back to the nearest words at any distance.
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t i = 0; i < lexicon_.size(); ++i)
      if (lexicon_[i] != word)
        all.emplace_back(Normalized(cps, lexicon_cps_[i]), i);
    std::sort(all.begin(), all.end());
    if (all.size() > std::max<std::size_t>(k, 1))
      all.resize(std::max<std::size_t>(k, 1));
    for (const auto &[d, i] : all)
      out.push_back({lexicon_[i], "", cfg_.acoustic_scale * d});
  }
  return out;
}

Lattice DecodeSimulator::Decode(const Sentence &reference,
                                const std::string &id) const {
  if (reference.empty())
    throw std::invalid_argument("cannot decode an empty reference");
  if (lexicon_.empty()) throw std::invalid_argument("empty decode lexicon");
  Lattice lat(id);
  for (std::size_t i = 0; i <= reference.size(); ++i) lat.AddState();
  for (std::size_t i = 0; i < reference.size(); ++i) {
    std::int32_t from = static_cast<std::int32_t>(i);
    for (Candidate &c : Candidates(reference[i])) {
      if (c.second.empty()) {
        lat.AddArc(from, {from + 1, std::move(c.word), c.am_cost, 0.0});
      } else {
        std::int32_t mid = lat.AddState();
        lat.AddArc(from, {mid, std::move(c.word), c.am_cost, 0.0});
        lat.AddArc(mid, {from + 1, std::move(c.second), c.am_cost, 0.0});
      }
    }
  }
  lat.SetFinal(static_cast<std::int32_t>(reference.size()), 0.0);
  return Prune(Rescore(lat, lm_), cfg_.beam);
}

Lattice SimulateDecode(const Sentence &reference, const BackoffModel &lm,
                       const DecodeSimConfig &cfg) {
  return DecodeSimulator(lm, cfg).Decode(reference);
}

}  // namespace lmaug
