// lmaug/corpus.h

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

#ifndef LMAUG_CORPUS_H_
#define LMAUG_CORPUS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lmaug {

// A sentence is an ordered list of non-empty tokens without whitespace.
typedef std::vector<std::string> Sentence;
typedef std::vector<Sentence> Corpus;
typedef std::uint64_t Count;

/// Word <-> dense id map with token counts.  Ids are assigned in order of
/// first occurrence, so a vocabulary built from the same corpus is always
/// identical.  Immutable once built; safe to share between readers.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Adds `count` (>= 1) occurrences of `word`, allocating an id if needed.
  void Add(const std::string &word, Count count = 1);

  bool Contains(std::string_view word) const;
  /// Returns -1 for unknown words.
  std::int32_t Id(std::string_view word) const;
  /// Returns 0 for unknown words.
  Count CountOf(std::string_view word) const;
  const std::string &Word(std::int32_t id) const { return words_.at(id); }

  std::size_t Size() const { return words_.size(); }
  bool Empty() const { return words_.empty(); }
  Count TotalTokens() const { return total_tokens_; }
  const std::vector<std::string> &Words() const { return words_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>()(s);
    }
  };
  std::vector<std::string> words_;
  std::vector<Count> counts_;
  std::unordered_map<std::string, std::int32_t, Hash, std::equal_to<>> ids_;
  Count total_tokens_ = 0;
};

/// Words of a larger corpus that are absent from a baseline vocabulary,
/// with their counts in the larger corpus.
struct OotReport {
  std::map<std::string, Count> oot_words;
  std::size_t base_vocab_size = 0;
  std::size_t larger_vocab_size = 0;

  Count TotalOotTokens() const;
};

/// Which code points survive normalization.  Code points outside the
/// retained ranges are deleted; whitespace separates tokens.
class NormalizationPolicy {
 public:
  NormalizationPolicy() = default;
  NormalizationPolicy(std::string name,
                      std::vector<std::pair<char32_t, char32_t>> ranges);

  /// ASCII and Latin-1 / Latin Extended-A letters.
  static NormalizationPolicy Latin();
  /// Telugu block, letters, vowel signs and virama; Telugu digits excluded.
  static NormalizationPolicy Telugu();
  /// Kannada block, same treatment as Telugu.
  static NormalizationPolicy Kannada();
  /// Builds a policy from a built-in name ("latin", "telugu", "kannada").
  static NormalizationPolicy Named(const std::string &name);
  /// Parses {"name": ..., "ranges": [[lo, hi], ...]}.  Bounds are integers
  /// or "U+XXXX" strings; ranges are inclusive.
  static NormalizationPolicy FromJson(const std::string &json_text);

  bool Retains(char32_t cp) const;
  const std::string &Name() const { return name_; }
  const std::vector<std::pair<char32_t, char32_t>> &Ranges() const {
    return ranges_;
  }

 private:
  std::string name_;
  std::vector<std::pair<char32_t, char32_t>> ranges_;  // sorted, merged
};

/// Splits raw UTF-8 text into sentences (one per line), deleting every code
/// point the policy does not retain and splitting tokens on whitespace.
/// Lines that end up empty are dropped.  Throws DecodingError on invalid
/// UTF-8.
Corpus NormalizeText(std::string_view raw, const NormalizationPolicy &policy);

/// Reads an already-normalized corpus: one sentence per line, tokens
/// separated by ASCII spaces.  Blank lines are skipped.
Corpus ReadCorpus(std::istream &is);
Corpus ReadCorpusFile(const std::string &path);
void WriteCorpus(std::ostream &os, const Corpus &corpus);
void WriteCorpusFile(const std::string &path, const Corpus &corpus);

std::string JoinTokens(const Sentence &s, std::string_view sep = " ");

/// Decodes UTF-8 into code points; throws DecodingError on invalid input.
std::u32string ToCodePoints(std::string_view utf8);

Vocabulary BuildVocabulary(const Corpus &corpus);

OotReport ComputeOot(const Vocabulary &base, const Corpus &larger);

/// Greedy left-to-right longest-match merge: at each position the longest
/// run of >= 2 consecutive tokens whose concatenation is in `vocab` is
/// replaced by that concatenation.
Sentence AgglutinationMerge(const Sentence &tokens, const Vocabulary &vocab);

}  // namespace lmaug

#endif  // LMAUG_CORPUS_H_
