// lmaug/arpa.cc

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

#include "lmaug/arpa.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "lmaug/error.h"

namespace lmaug {

namespace {

std::string FormatLog(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7f", v);
  return buf;
}

double ParseDouble(const std::string &s, int line_no) {
  const char *begin = s.c_str();
  char *end = nullptr;
  double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size())
    throw FormatError("ARPA line " + std::to_string(line_no) +
                      ": bad number '" + s + "'");
  return v;
}

std::vector<std::string> SplitOn(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (true) {
    std::size_t j = s.find(sep, i);
    out.push_back(s.substr(i, j == std::string::npos ? j : j - i));
    if (j == std::string::npos) break;
    i = j + 1;
  }
  return out;
}

std::vector<std::string> SplitWhitespace(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::string Trim(const std::string &s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void WriteArpa(std::ostream &os, const BackoffModel &model) {
  const int order = model.Order();
  os << "\\data\\\n";
  for (int n = 1; n <= order; ++n)
    os << "ngram " << n << "=" << model.NumEntries(n) << "\n";
  for (int n = 1; n <= order; ++n) {
    os << "\n\\" << n << "-grams:\n";
    for (const auto &kv : model.Entries(n)) {
      os << FormatLog(kv.second.log10_prob) << '\t' << JoinTokens(kv.first);
      if (n < order) os << '\t' << FormatLog(kv.second.log10_backoff);
      os << '\n';
    }
  }
  os << "\n\\end\\\n";
}

void WriteArpaFile(const std::string &path, const BackoffModel &model) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write ARPA file " + path);
  WriteArpa(os, model);
}

BackoffModel ReadArpa(std::istream &is) {
  std::string line;
  int line_no = 0;
  auto next = [&](std::string *out) -> bool {
    if (!std::getline(is, line)) return false;
    ++line_no;
    *out = Trim(line);
    return true;
  };

  std::string cur;
  // Skip anything before \data\ (toolkits often write a comment header).
  bool found = false;
  while (next(&cur)) {
    if (cur == "\\data\\") {
      found = true;
      break;
    }
  }
  if (!found) throw FormatError("ARPA: missing \\data\\ header");

  std::map<int, std::size_t> declared;
  bool have_line = false;
  while (next(&cur)) {
    if (cur.empty()) continue;
    if (cur.rfind("ngram ", 0) != 0) {
      have_line = true;
      break;
    }
    std::string spec = Trim(cur.substr(6));
    std::size_t eq = spec.find('=');
    if (eq == std::string::npos)
      throw FormatError("ARPA line " + std::to_string(line_no) +
                        ": malformed ngram count");
    int n = 0;
    long long c = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(spec.substr(0, eq), &used);
      if (used != eq) throw std::invalid_argument("n");
      std::string rhs = spec.substr(eq + 1);
      c = std::stoll(rhs, &used);
      if (used != rhs.size()) throw std::invalid_argument("c");
    } catch (const std::exception &) {
      throw FormatError("ARPA line " + std::to_string(line_no) +
                        ": malformed ngram count");
    }
    if (n < 1 || c < 0 || declared.count(n))
      throw FormatError("ARPA line " + std::to_string(line_no) +
                        ": bad ngram count declaration");
    declared[n] = static_cast<std::size_t>(c);
  }
  if (declared.empty()) throw FormatError("ARPA: no ngram counts declared");
  const int order = declared.rbegin()->first;
  for (int n = 1; n <= order; ++n)
    if (!declared.count(n))
      throw FormatError("ARPA: missing count for order " + std::to_string(n));

  BackoffModel model(order);
  std::map<int, std::size_t> seen;
  int section = 0;
  bool ended = false;
  while (have_line || next(&cur)) {
    have_line = false;
    if (cur.empty()) continue;
    if (cur == "\\end\\") {
      ended = true;
      break;
    }
    if (cur[0] == '\\') {
      int n = 0;
      if (std::sscanf(cur.c_str(), "\\%d-grams:", &n) != 1 ||
          cur != "\\" + std::to_string(n) + "-grams:")
        throw FormatError("ARPA line " + std::to_string(line_no) +
                          ": malformed section header '" + cur + "'");
      if (n < 1 || n > order || n <= section)
        throw FormatError("ARPA line " + std::to_string(line_no) +
                          ": unexpected section " + cur);
      section = n;
      seen[n] = 0;
      continue;
    }
    if (section == 0)
      throw FormatError("ARPA line " + std::to_string(line_no) +
                        ": entry outside any n-gram section");
    std::vector<std::string> fields = SplitOn(cur, '\t');
    std::vector<std::string> words;
    double logprob = 0.0, backoff = 0.0;
    if (fields.size() >= 2) {
      logprob = ParseDouble(Trim(fields[0]), line_no);
      words = SplitWhitespace(fields[1]);
      if (fields.size() == 3) backoff = ParseDouble(Trim(fields[2]), line_no);
      if (fields.size() > 3)
        throw FormatError("ARPA line " + std::to_string(line_no) +
                          ": too many fields");
    } else {
      // Space-separated variant: prob w1 .. wn [backoff].
      std::vector<std::string> toks = SplitWhitespace(cur);
      if (toks.size() < static_cast<std::size_t>(section) + 1)
        throw FormatError("ARPA line " + std::to_string(line_no) +
                          ": too few fields");
      logprob = ParseDouble(toks[0], line_no);
      words.assign(toks.begin() + 1, toks.begin() + 1 + section);
      if (toks.size() == static_cast<std::size_t>(section) + 2)
        backoff = ParseDouble(toks.back(), line_no);
      else if (toks.size() > static_cast<std::size_t>(section) + 2)
        throw FormatError("ARPA line " + std::to_string(line_no) +
                          ": too many fields");
    }
    if (words.size() != static_cast<std::size_t>(section))
      throw FormatError("ARPA line " + std::to_string(line_no) +
                        ": expected " + std::to_string(section) + " words");
    model.SetEntry(words, {logprob, backoff});
    ++seen[section];
  }
  if (!ended) throw FormatError("ARPA: missing \\end\\ marker");
  for (int n = 1; n <= order; ++n) {
    std::size_t got = seen.count(n) ? seen[n] : 0;
    if (got != declared[n])
      throw FormatError("ARPA: order " + std::to_string(n) + " declares " +
                        std::to_string(declared[n]) + " entries but has " +
                        std::to_string(got));
  }
  return model;
}

BackoffModel ReadArpaFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open ARPA file " + path);
  return ReadArpa(is);
}

}  // namespace lmaug
