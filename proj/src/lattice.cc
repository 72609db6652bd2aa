// lmaug/lattice.cc

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

#include "lmaug/lattice.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "lmaug/error.h"

namespace lmaug {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
// Path totals closer than this are treated as tied.
const double kTieTolerance = 1e-9;

}  // namespace

std::int32_t Lattice::AddState() {
  arcs_.emplace_back();
  final_.emplace_back();
  return NumStates() - 1;
}

std::size_t Lattice::NumArcs() const {
  std::size_t n = 0;
  for (const auto &a : arcs_) n += a.size();
  return n;
}

void Lattice::AddArc(std::int32_t from, LatticeArc arc) {
  if (from < 0 || from >= NumStates() || arc.next < 0 ||
      arc.next >= NumStates())
    throw std::out_of_range("lattice arc refers to a missing state");
  arcs_[from].push_back(std::move(arc));
}

void Lattice::SetFinal(std::int32_t s, double cost) { final_.at(s) = cost; }

std::vector<std::int32_t> Lattice::TopologicalOrder() const {
  const std::int32_t n = NumStates();
  std::vector<int> indegree(n, 0);
  for (const auto &arcs : arcs_)
    for (const LatticeArc &a : arcs) ++indegree[a.next];
  // Kahn's algorithm; ties resolved by smallest state id for determinism.
  std::vector<std::int32_t> order, ready;
  for (std::int32_t s = n - 1; s >= 0; --s)
    if (indegree[s] == 0) ready.push_back(s);
  while (!ready.empty()) {
    std::int32_t s = ready.back();
    ready.pop_back();
    order.push_back(s);
    for (const LatticeArc &a : arcs_[s]) {
      if (--indegree[a.next] == 0) {
        ready.push_back(a.next);
        std::sort(ready.begin(), ready.end(), std::greater<>());
      }
    }
  }
  if (static_cast<std::int32_t>(order.size()) != n)
    throw StructuralError("lattice " + id_ + " contains a cycle");
  return order;
}

std::set<std::string> Lattice::Labels() const {
  std::set<std::string> labels;
  for (const auto &arcs : arcs_)
    for (const LatticeArc &a : arcs) labels.insert(a.word);
  return labels;
}

Lattice Connect(const Lattice &lat) {
  const std::int32_t n = lat.NumStates();
  Lattice out(lat.Id());
  if (n == 0) return out;
  std::vector<std::int32_t> order = lat.TopologicalOrder();
  std::vector<char> access(n, 0), coaccess(n, 0);
  access[lat.Start()] = 1;
  for (std::int32_t s : order) {
    if (!access[s]) continue;
    for (const LatticeArc &a : lat.Arcs(s)) access[a.next] = 1;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::int32_t s = *it;
    if (lat.IsFinal(s)) coaccess[s] = 1;
    for (const LatticeArc &a : lat.Arcs(s))
      if (coaccess[a.next]) coaccess[s] = 1;
  }
  if (!(access[0] && coaccess[0])) return out;
  std::vector<std::int32_t> remap(n, -1);
  for (std::int32_t s = 0; s < n; ++s)
    if (access[s] && coaccess[s]) remap[s] = out.AddState();
  for (std::int32_t s = 0; s < n; ++s) {
    if (remap[s] < 0) continue;
    if (lat.IsFinal(s)) out.SetFinal(remap[s], lat.FinalCost(s));
    for (const LatticeArc &a : lat.Arcs(s)) {
      if (remap[a.next] < 0) continue;
      LatticeArc b = a;
      b.next = remap[a.next];
      out.AddArc(remap[s], std::move(b));
    }
  }
  return out;
}

namespace {

// (cost, words) is better than the incumbent when cheaper by more than the
// tolerance, or tied and lexicographically smaller.
bool Better(double cost, const Sentence &words, double best_cost,
            const Sentence &best_words) {
  if (cost < best_cost - kTieTolerance) return true;
  if (cost > best_cost + kTieTolerance) return false;
  return words < best_words;
}

}  // namespace

PathHypothesis BestPath(const Lattice &lat, double am_scale, double lm_scale) {
  const std::int32_t n = lat.NumStates();
  if (n == 0) throw StructuralError("best path of an empty lattice");
  std::vector<std::int32_t> order = lat.TopologicalOrder();
  // Best completion from each state.  Suffix-based, so the lexicographic
  // tie-break composes correctly.
  std::vector<double> cost(n, kInf);
  std::vector<Sentence> words(n);
  std::vector<double> am(n, 0.0), lm(n, 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::int32_t s = *it;
    if (lat.IsFinal(s)) {
      cost[s] = lm_scale * lat.FinalCost(s);
      am[s] = 0.0;
      lm[s] = lat.FinalCost(s);
    }
    for (const LatticeArc &a : lat.Arcs(s)) {
      if (cost[a.next] == kInf) continue;
      double c = am_scale * a.am_cost + lm_scale * a.lm_cost + cost[a.next];
      Sentence w;
      w.reserve(words[a.next].size() + 1);
      w.push_back(a.word);
      w.insert(w.end(), words[a.next].begin(), words[a.next].end());
      if (cost[s] == kInf || Better(c, w, cost[s], words[s])) {
        cost[s] = c;
        words[s] = std::move(w);
        am[s] = a.am_cost + am[a.next];
        lm[s] = a.lm_cost + lm[a.next];
      }
    }
  }
  if (cost[lat.Start()] == kInf)
    throw StructuralError("lattice " + lat.Id() + " has no complete path");
  PathHypothesis best;
  best.words = words[lat.Start()];
  best.am_cost = am[lat.Start()];
  best.lm_cost = lm[lat.Start()];
  best.total_cost = am_scale * best.am_cost + lm_scale * best.lm_cost;
  return best;
}

std::vector<PathHypothesis> EnumeratePaths(const Lattice &lat,
                                           std::size_t limit, double am_scale,
                                           double lm_scale) {
  std::vector<PathHypothesis> paths;
  if (lat.NumStates() == 0) return paths;
  lat.TopologicalOrder();  // rejects cycles
  // Iterative DFS over (state, next arc index); `taken` holds the arcs of the
  // current prefix.  Costs are summed left to right at emission so repeated
  // add/subtract rounding never leaks into them.
  std::vector<std::pair<std::int32_t, std::size_t>> stack;
  std::vector<const LatticeArc *> taken;
  stack.emplace_back(lat.Start(), 0);
  auto emit = [&](std::int32_t s) {
    if (paths.size() >= limit)
      throw StructuralError("lattice has more than " + std::to_string(limit) +
                            " paths");
    PathHypothesis p;
    for (const LatticeArc *a : taken) {
      p.words.push_back(a->word);
      p.am_cost += a->am_cost;
      p.lm_cost += a->lm_cost;
    }
    p.lm_cost += lat.FinalCost(s);
    p.total_cost = am_scale * p.am_cost + lm_scale * p.lm_cost;
    paths.push_back(std::move(p));
  };
  if (lat.IsFinal(lat.Start())) emit(lat.Start());
  while (!stack.empty()) {
    std::int32_t s = stack.back().first;
    std::size_t idx = stack.back().second;
    if (idx == lat.Arcs(s).size()) {
      stack.pop_back();
      if (!taken.empty()) taken.pop_back();
      continue;
    }
    ++stack.back().second;
    const LatticeArc &a = lat.Arcs(s)[idx];
    taken.push_back(&a);
    if (lat.IsFinal(a.next)) emit(a.next);
    stack.emplace_back(a.next, 0);
  }
  return paths;
}

std::uint64_t CountPaths(const Lattice &lat) {
  const std::int32_t n = lat.NumStates();
  if (n == 0) return 0;
  std::vector<std::int32_t> order = lat.TopologicalOrder();
  std::vector<std::uint64_t> from_here(n, 0);
  const std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::int32_t s = *it;
    std::uint64_t c = lat.IsFinal(s) ? 1 : 0;
    for (const LatticeArc &a : lat.Arcs(s))
      c = (kMax - c < from_here[a.next]) ? kMax : c + from_here[a.next];
    from_here[s] = c;
  }
  return from_here[lat.Start()];
}

OraclePathResult OraclePath(const Lattice &lat, const Sentence &reference) {
  const std::int32_t n = lat.NumStates();
  if (n == 0) throw StructuralError("oracle path of an empty lattice");
  std::vector<std::int32_t> order = lat.TopologicalOrder();
  const std::size_t m = reference.size();

  struct Cell {
    std::size_t edits = std::numeric_limits<std::size_t>::max();
    double cost = kInf;
    std::int32_t prev_state = -1;
    std::size_t prev_pos = 0;
    const LatticeArc *arc = nullptr;  // null for a deletion step
  };
  auto better = [](std::size_t e, double c, const Cell &cell) {
    return e < cell.edits || (e == cell.edits && c < cell.cost - kTieTolerance);
  };
  std::vector<std::vector<Cell>> dp(n, std::vector<Cell>(m + 1));
  dp[lat.Start()][0].edits = 0;
  dp[lat.Start()][0].cost = 0.0;
  for (std::int32_t s : order) {
    auto &row = dp[s];
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j].cost == kInf) continue;
      if (better(row[j].edits + 1, row[j].cost, row[j + 1])) {
        row[j + 1] = {row[j].edits + 1, row[j].cost, s, j, nullptr};
      }
    }
    for (const LatticeArc &a : lat.Arcs(s)) {
      double arc_cost = a.am_cost + a.lm_cost;
      auto &next = dp[a.next];
      for (std::size_t j = 0; j <= m; ++j) {
        if (row[j].cost == kInf) continue;
        double c = row[j].cost + arc_cost;
        if (better(row[j].edits + 1, c, next[j]))
          next[j] = {row[j].edits + 1, c, s, j, &a};
        if (j < m) {
          std::size_t e = row[j].edits + (a.word == reference[j] ? 0 : 1);
          if (better(e, c, next[j + 1])) next[j + 1] = {e, c, s, j, &a};
        }
      }
    }
  }
  std::int32_t best_state = -1;
  std::size_t best_edits = std::numeric_limits<std::size_t>::max();
  double best_cost = kInf;
  for (std::int32_t s = 0; s < n; ++s) {
    if (!lat.IsFinal(s) || dp[s][m].cost == kInf) continue;
    double c = dp[s][m].cost + lat.FinalCost(s);
    if (dp[s][m].edits < best_edits ||
        (dp[s][m].edits == best_edits && c < best_cost - kTieTolerance)) {
      best_state = s;
      best_edits = dp[s][m].edits;
      best_cost = c;
    }
  }
  if (best_state < 0)
    throw StructuralError("lattice " + lat.Id() + " has no complete path");

  OraclePathResult result;
  result.edit_distance = best_edits;
  result.path.lm_cost = lat.FinalCost(best_state);
  std::int32_t s = best_state;
  std::size_t j = m;
  while (dp[s][j].prev_state >= 0) {
    const Cell &cell = dp[s][j];
    if (cell.arc != nullptr) {
      result.path.words.push_back(cell.arc->word);
      result.path.am_cost += cell.arc->am_cost;
      result.path.lm_cost += cell.arc->lm_cost;
    }
    std::int32_t ps = cell.prev_state;
    j = cell.prev_pos;
    s = ps;
  }
  std::reverse(result.path.words.begin(), result.path.words.end());
  result.path.total_cost = result.path.am_cost + result.path.lm_cost;
  return result;
}

Lattice Prune(const Lattice &lat, double beam, double am_scale,
              double lm_scale) {
  const std::int32_t n = lat.NumStates();
  if (n == 0) return lat;
  std::vector<std::int32_t> order = lat.TopologicalOrder();
  auto arc_cost = [&](const LatticeArc &a) {
    return am_scale * a.am_cost + lm_scale * a.lm_cost;
  };
  std::vector<double> fwd(n, kInf), bwd(n, kInf);
  fwd[lat.Start()] = 0.0;
  for (std::int32_t s : order) {
    if (fwd[s] == kInf) continue;
    for (const LatticeArc &a : lat.Arcs(s))
      fwd[a.next] = std::min(fwd[a.next], fwd[s] + arc_cost(a));
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::int32_t s = *it;
    if (lat.IsFinal(s)) bwd[s] = lm_scale * lat.FinalCost(s);
    for (const LatticeArc &a : lat.Arcs(s))
      bwd[s] = std::min(bwd[s], arc_cost(a) + bwd[a.next]);
  }
  double best = bwd[lat.Start()];
  if (best == kInf) return Lattice(lat.Id());
  double limit = best + beam + kTieTolerance;

  Lattice kept(lat.Id());
  for (std::int32_t s = 0; s < n; ++s) kept.AddState();
  for (std::int32_t s = 0; s < n; ++s) {
    if (lat.IsFinal(s) && fwd[s] + lm_scale * lat.FinalCost(s) <= limit)
      kept.SetFinal(s, lat.FinalCost(s));
    for (const LatticeArc &a : lat.Arcs(s))
      if (fwd[s] + arc_cost(a) + bwd[a.next] <= limit) kept.AddArc(s, a);
  }
  return Connect(kept);
}

// ---------------------------------------------------------------------------
// Text I/O.

namespace {

std::string FormatCost(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

double ParseCost(const std::string &s, int line_no) {
  char *end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw FormatError("lattice line " + std::to_string(line_no) +
                      ": bad cost '" + s + "'");
  return v;
}

std::int32_t ParseState(const std::string &s, int line_no) {
  char *end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || v < 0 || v > 100000000)
    throw FormatError("lattice line " + std::to_string(line_no) +
                      ": bad state id '" + s + "'");
  return static_cast<std::int32_t>(v);
}

}  // namespace

void WriteLattice(std::ostream &os, const Lattice &lat) {
  os << "UTT " << (lat.Id().empty() ? "-" : lat.Id()) << '\n';
  for (std::int32_t s = 0; s < lat.NumStates(); ++s)
    for (const LatticeArc &a : lat.Arcs(s))
      os << s << ' ' << a.next << ' ' << a.word << ' ' << FormatCost(a.am_cost)
         << ' ' << FormatCost(a.lm_cost) << '\n';
  for (std::int32_t s = 0; s < lat.NumStates(); ++s)
    if (lat.IsFinal(s)) os << s << ' ' << FormatCost(lat.FinalCost(s)) << '\n';
  os << '\n';
}

std::vector<Lattice> ReadLattices(std::istream &is) {
  std::vector<Lattice> out;
  std::string line;
  int line_no = 0;
  struct PendingArc {
    std::int32_t from;
    LatticeArc arc;
  };
  bool in_block = false;
  std::string id;
  std::vector<PendingArc> arcs;
  std::vector<std::pair<std::int32_t, double>> finals;
  std::int32_t max_state = -1;

  auto finish = [&]() {
    Lattice lat(id);
    for (std::int32_t s = 0; s <= max_state; ++s) lat.AddState();
    if (lat.NumStates() == 0) lat.AddState();
    for (PendingArc &p : arcs) lat.AddArc(p.from, std::move(p.arc));
    for (const auto &f : finals) lat.SetFinal(f.first, f.second);
    lat.TopologicalOrder();
    out.push_back(std::move(lat));
    arcs.clear();
    finals.clear();
    max_state = -1;
    in_block = false;
  };

  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) {
      if (in_block) finish();
      continue;
    }
    if (!in_block) {
      if (toks.size() != 2 || toks[0] != "UTT")
        throw FormatError("lattice line " + std::to_string(line_no) +
                          ": expected 'UTT <id>'");
      id = toks[1];
      in_block = true;
      continue;
    }
    if (toks.size() == 5) {
      PendingArc p;
      p.from = ParseState(toks[0], line_no);
      p.arc.next = ParseState(toks[1], line_no);
      p.arc.word = toks[2];
      p.arc.am_cost = ParseCost(toks[3], line_no);
      p.arc.lm_cost = ParseCost(toks[4], line_no);
      max_state = std::max({max_state, p.from, p.arc.next});
      arcs.push_back(std::move(p));
    } else if (toks.size() == 2) {
      std::int32_t s = ParseState(toks[0], line_no);
      finals.emplace_back(s, ParseCost(toks[1], line_no));
      max_state = std::max(max_state, s);
    } else {
      throw FormatError("lattice line " + std::to_string(line_no) +
                        ": expected an arc or a final line");
    }
  }
  if (in_block) finish();
  return out;
}

}  // namespace lmaug
