// lmaug/metrics.cc

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

#include "lmaug/metrics.h"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace lmaug {

const char *EditOpName(EditOp op) {
  switch (op) {
    case EditOp::kMatch: return "match";
    case EditOp::kSubstitution: return "sub";
    case EditOp::kDeletion: return "del";
    case EditOp::kInsertion: return "ins";
  }
  return "?";
}

Alignment Align(const Sentence &ref, const Sentence &hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<std::size_t>> d(n + 1,
                                          std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      d[i][j] = std::min({d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1),
                          d[i - 1][j] + 1, d[i][j - 1] + 1});

  Alignment a;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        d[i][j] == d[i - 1][j - 1]) {
      a.ops.push_back({EditOp::kMatch, ref[i - 1], hyp[j - 1]});
      ++a.matches;
      --i, --j;
    } else if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + 1) {
      a.ops.push_back({EditOp::kSubstitution, ref[i - 1], hyp[j - 1]});
      ++a.substitutions;
      --i, --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      a.ops.push_back({EditOp::kDeletion, ref[i - 1], std::nullopt});
      ++a.deletions;
      --i;
    } else {
      a.ops.push_back({EditOp::kInsertion, std::nullopt, hyp[j - 1]});
      ++a.insertions;
      --j;
    }
  }
  std::reverse(a.ops.begin(), a.ops.end());
  return a;
}

EvalCounts &EvalCounts::operator+=(const EvalCounts &o) {
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  ref_tokens += o.ref_tokens;
  oov_total += o.oov_total;
  oov_correct += o.oov_correct;
  iv_total += o.iv_total;
  iv_correct += o.iv_correct;
  return *this;
}

EvalCounts CountAlignment(const Alignment &alignment,
                          const Vocabulary &base_vocab) {
  EvalCounts c;
  c.substitutions = alignment.substitutions;
  c.deletions = alignment.deletions;
  c.insertions = alignment.insertions;
  for (const AlignedPair &p : alignment.ops) {
    if (!p.ref) continue;
    ++c.ref_tokens;
    bool hit = p.op == EditOp::kMatch;
    if (base_vocab.Contains(*p.ref)) {
      ++c.iv_total;
      if (hit) ++c.iv_correct;
    } else {
      ++c.oov_total;
      if (hit) ++c.oov_correct;
    }
  }
  return c;
}

void FinalizeReport(EvalReport *r) {
  const EvalCounts &c = r->counts;
  std::size_t errors = c.substitutions + c.deletions + c.insertions;
  if (c.ref_tokens > 0)
    r->wer = 100.0 * static_cast<double>(errors) / c.ref_tokens;
  else
    r->wer = errors > 0 ? 100.0 : 0.0;
  r->oov_recognized =
      c.oov_total ? 100.0 * static_cast<double>(c.oov_correct) / c.oov_total
                  : 0.0;
  r->iv_recognized =
      c.iv_total ? 100.0 * static_cast<double>(c.iv_correct) / c.iv_total
                 : 0.0;
}

EvalReport Evaluate(const Corpus &refs, const Corpus &hyps,
                    const Vocabulary &base_vocab, const EvalOptions &opts) {
  if (refs.size() != hyps.size())
    throw std::invalid_argument("reference and hypothesis counts differ (" +
                                std::to_string(refs.size()) + " vs " +
                                std::to_string(hyps.size()) + ")");
  const Vocabulary &mv = opts.merge_vocab ? *opts.merge_vocab : base_vocab;
  EvalReport report;
  for (std::size_t u = 0; u < refs.size(); ++u) {
    Sentence r = refs[u], h = hyps[u];
    if (opts.merge_agglutination) {
      h = AgglutinationMerge(h, mv);
      if (opts.merge_reference) r = AgglutinationMerge(r, mv);
    }
    Alignment a = Align(r, h);
    report.counts += CountAlignment(a, base_vocab);
    report.refs.push_back(std::move(r));
    report.hyps.push_back(std::move(h));
    report.alignments.push_back(std::move(a));
  }
  FinalizeReport(&report);
  return report;
}

std::string EvalReportJson(const EvalReport &r) {
  nlohmann::ordered_json j;
  j["wer"] = r.wer;
  j["oov_recognized"] = r.oov_recognized;
  j["iv_recognized"] = r.iv_recognized;
  const EvalCounts &c = r.counts;
  j["counts"] = {{"S", c.substitutions},     {"D", c.deletions},
                 {"I", c.insertions},        {"N", c.ref_tokens},
                 {"oov_total", c.oov_total}, {"oov_correct", c.oov_correct},
                 {"iv_total", c.iv_total},   {"iv_correct", c.iv_correct}};
  return j.dump(2);
}

void WriteAlignmentDump(std::ostream &os, const EvalReport &report) {
  for (std::size_t u = 0; u < report.alignments.size(); ++u)
    for (const AlignedPair &p : report.alignments[u].ops)
      os << u << '\t' << EditOpName(p.op) << '\t' << p.ref.value_or("*")
         << '\t' << p.hyp.value_or("*") << '\n';
}

}  // namespace lmaug
