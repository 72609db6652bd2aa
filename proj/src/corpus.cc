// lmaug/corpus.cc

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

#include "lmaug/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lmaug/error.h"

namespace lmaug {

void Vocabulary::Add(const std::string &word, Count count) {
  if (count == 0) return;
  auto it = ids_.find(word);
  if (it == ids_.end()) {
    std::int32_t id = static_cast<std::int32_t>(words_.size());
    ids_.emplace(word, id);
    words_.push_back(word);
    counts_.push_back(count);
  } else {
    counts_[it->second] += count;
  }
  total_tokens_ += count;
}

bool Vocabulary::Contains(std::string_view word) const {
  return ids_.find(word) != ids_.end();
}

std::int32_t Vocabulary::Id(std::string_view word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? -1 : it->second;
}

Count Vocabulary::CountOf(std::string_view word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? 0 : counts_[it->second];
}

Count OotReport::TotalOotTokens() const {
  Count total = 0;
  for (const auto &kv : oot_words) total += kv.second;
  return total;
}

// ---------------------------------------------------------------------------
// Normalization.

NormalizationPolicy::NormalizationPolicy(
    std::string name, std::vector<std::pair<char32_t, char32_t>> ranges)
    : name_(std::move(name)) {
  for (auto &r : ranges) {
    if (r.first > r.second)
      throw FormatError("normalization policy range has lo > hi");
  }
  std::sort(ranges.begin(), ranges.end());
  for (const auto &r : ranges) {
    if (!ranges_.empty() && r.first <= ranges_.back().second + 1)
      ranges_.back().second = std::max(ranges_.back().second, r.second);
    else
      ranges_.push_back(r);
  }
}

NormalizationPolicy NormalizationPolicy::Latin() {
  return NormalizationPolicy("latin", {{U'A', U'Z'},
                                       {U'a', U'z'},
                                       {0xC0, 0xD6},
                                       {0xD8, 0xF6},
                                       {0xF8, 0x17F}});
}

// Zero-width (non-)joiners appear inside Indic words, so they are kept.
NormalizationPolicy NormalizationPolicy::Telugu() {
  return NormalizationPolicy("telugu",
                             {{0x0C00, 0x0C65}, {0x0C70, 0x0C77},
                              {0x200C, 0x200D}});
}

NormalizationPolicy NormalizationPolicy::Kannada() {
  return NormalizationPolicy("kannada",
                             {{0x0C80, 0x0CE5}, {0x0CF1, 0x0CF3},
                              {0x200C, 0x200D}});
}

NormalizationPolicy NormalizationPolicy::Named(const std::string &name) {
  if (name == "latin") return Latin();
  if (name == "telugu") return Telugu();
  if (name == "kannada") return Kannada();
  throw FormatError("unknown normalization policy '" + name + "'");
}

namespace {

char32_t ParseCodePoint(const nlohmann::json &j) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    long long v = j.get<long long>();
    if (v < 0 || v > 0x10FFFF) throw FormatError("code point out of range");
    return static_cast<char32_t>(v);
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.size() > 2 && (s[0] == 'U' || s[0] == 'u') && s[1] == '+')
      s = s.substr(2);
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used, 16);
    } catch (const std::exception &) {
      throw FormatError("bad code point '" + j.get<std::string>() + "'");
    }
    if (used != s.size() || v > 0x10FFFF)
      throw FormatError("bad code point '" + j.get<std::string>() + "'");
    return static_cast<char32_t>(v);
  }
  throw FormatError("code point must be an integer or a \"U+XXXX\" string");
}

}  // namespace

NormalizationPolicy NormalizationPolicy::FromJson(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("normalization policy: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("ranges") || !doc["ranges"].is_array())
    throw FormatError("normalization policy needs a \"ranges\" array");
  std::vector<std::pair<char32_t, char32_t>> ranges;
  for (const auto &r : doc["ranges"]) {
    if (!r.is_array() || r.size() != 2)
      throw FormatError("each policy range must be [lo, hi]");
    ranges.emplace_back(ParseCodePoint(r[0]), ParseCodePoint(r[1]));
  }
  std::string name = doc.value("name", std::string("custom"));
  return NormalizationPolicy(name, std::move(ranges));
}

bool NormalizationPolicy::Retains(char32_t cp) const {
  auto it = std::upper_bound(
      ranges_.begin(), ranges_.end(), cp,
      [](char32_t c, const std::pair<char32_t, char32_t> &r) {
        return c < r.first;
      });
  if (it == ranges_.begin()) return false;
  --it;
  return cp <= it->second;
}

namespace {

// Decodes one code point starting at s[pos]; advances pos.
char32_t DecodeUtf8(std::string_view s, std::size_t *pos) {
  std::size_t start = *pos;
  unsigned char b0 = static_cast<unsigned char>(s[start]);
  if (b0 < 0x80) {
    ++*pos;
    return b0;
  }
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    throw DecodingError("invalid UTF-8 lead byte", start);
  }
  if (start + len > s.size())
    throw DecodingError("truncated UTF-8 sequence", start);
  for (int i = 1; i < len; ++i) {
    unsigned char b = static_cast<unsigned char>(s[start + i]);
    if ((b & 0xC0) != 0x80)
      throw DecodingError("invalid UTF-8 continuation byte", start + i);
    cp = (cp << 6) | (b & 0x3F);
  }
  static const char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len]) throw DecodingError("overlong UTF-8 sequence", start);
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
    throw DecodingError("invalid UTF-8 code point", start);
  *pos = start + len;
  return cp;
}

bool IsWhitespace(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

}  // namespace

Corpus NormalizeText(std::string_view raw, const NormalizationPolicy &policy) {
  Corpus out;
  Sentence current;
  std::string token;
  auto end_token = [&]() {
    if (!token.empty()) {
      current.push_back(std::move(token));
      token.clear();
    }
  };
  auto end_line = [&]() {
    end_token();
    if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  };
  std::size_t pos = 0;
  while (pos < raw.size()) {
    std::size_t begin = pos;
    char32_t cp = DecodeUtf8(raw, &pos);
    if (cp == U'\n') {
      end_line();
    } else if (IsWhitespace(cp)) {
      end_token();
    } else if (policy.Retains(cp)) {
      token.append(raw.substr(begin, pos - begin));
    }
  }
  end_line();
  return out;
}

std::u32string ToCodePoints(std::string_view utf8) {
  std::u32string out;
  std::size_t pos = 0;
  while (pos < utf8.size()) out.push_back(DecodeUtf8(utf8, &pos));
  return out;
}

// ---------------------------------------------------------------------------
// Corpus files.

Corpus ReadCorpus(std::istream &is) {
  Corpus corpus;
  std::string line;
  while (std::getline(is, line)) {
    Sentence s;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\r' ||
                                 line[i] == '\t'))
        ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\r' &&
             line[j] != '\t')
        ++j;
      if (j > i) s.emplace_back(line.substr(i, j - i));
      i = j;
    }
    if (!s.empty()) corpus.push_back(std::move(s));
  }
  return corpus;
}

Corpus ReadCorpusFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open corpus file " + path);
  return ReadCorpus(is);
}

std::string JoinTokens(const Sentence &s, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(s[i]);
  }
  return out;
}

void WriteCorpus(std::ostream &os, const Corpus &corpus) {
  for (const Sentence &s : corpus) os << JoinTokens(s) << '\n';
}

void WriteCorpusFile(const std::string &path, const Corpus &corpus) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write corpus file " + path);
  WriteCorpus(os, corpus);
}

// ---------------------------------------------------------------------------

Vocabulary BuildVocabulary(const Corpus &corpus) {
  Vocabulary vocab;
  for (const Sentence &s : corpus)
    for (const std::string &w : s) vocab.Add(w);
  return vocab;
}

OotReport ComputeOot(const Vocabulary &base, const Corpus &larger) {
  OotReport report;
  report.base_vocab_size = base.Size();
  Vocabulary larger_vocab = BuildVocabulary(larger);
  report.larger_vocab_size = larger_vocab.Size();
  for (const std::string &w : larger_vocab.Words()) {
    if (!base.Contains(w)) report.oot_words[w] = larger_vocab.CountOf(w);
  }
  return report;
}

Sentence AgglutinationMerge(const Sentence &tokens, const Vocabulary &vocab) {
  Sentence out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    // Concatenations of tokens[i..j) for every j, longest first.
    std::vector<std::string> prefixes;
    std::string acc = tokens[i];
    for (std::size_t j = i + 1; j < tokens.size(); ++j) {
      acc += tokens[j];
      prefixes.push_back(acc);
    }
    std::size_t merged_end = 0;
    for (std::size_t k = prefixes.size(); k > 0; --k) {
      if (vocab.Contains(prefixes[k - 1])) {
        merged_end = i + k + 1;
        out.push_back(prefixes[k - 1]);
        break;
      }
    }
    if (merged_end != 0) {
      i = merged_end;
    } else {
      out.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace lmaug
