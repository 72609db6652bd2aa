// lmaug/rescore.cc

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

#include "lmaug/rescore.h"

#include <cmath>
#include <map>
#include <stdexcept>

namespace lmaug {

ContextExpansion ExpandForContext(const Lattice &lat, int order) {
  if (order < 1) throw std::invalid_argument("LM order must be >= 1");
  ContextExpansion out;
  out.lattice.SetId(lat.Id());
  if (lat.NumStates() == 0) return out;
  const std::size_t hist_len = static_cast<std::size_t>(order - 1);

  std::map<std::pair<std::int32_t, NGram>, std::int32_t> index;
  auto state_for = [&](std::int32_t src, NGram h) {
    auto key = std::make_pair(src, h);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::int32_t s = out.lattice.AddState();
    out.history.push_back(std::move(h));
    out.source_state.push_back(src);
    index.emplace(std::move(key), s);
    return s;
  };
  state_for(lat.Start(), InitialHistory(order));

  // States are created in discovery order; every new state has a larger id
  // than the one that created it, so a single sweep visits all of them.
  for (std::int32_t s = 0; s < out.lattice.NumStates(); ++s) {
    std::int32_t src = out.source_state[s];
    if (lat.IsFinal(src)) out.lattice.SetFinal(s, lat.FinalCost(src));
    for (const LatticeArc &a : lat.Arcs(src)) {
      NGram h = out.history[s];
      if (hist_len > 0) {
        h.push_back(a.word);
        h.erase(h.begin());
      }
      std::int32_t next = state_for(a.next, std::move(h));
      LatticeArc b = a;
      b.next = next;
      out.lattice.AddArc(s, std::move(b));
    }
  }
  return out;
}

Lattice Rescore(const Lattice &lat, const BackoffModel &lm) {
  ContextExpansion exp = ExpandForContext(lat, lm.Order());
  Lattice &out = exp.lattice;
  const double ln10 = std::log(10.0);
  for (std::int32_t s = 0; s < out.NumStates(); ++s) {
    WordSpan h(exp.history[s]);
    for (LatticeArc &a : out.MutableArcs(s))
      a.lm_cost = -ln10 * lm.Log10Prob(h, a.word);
    if (out.IsFinal(s)) out.SetFinal(s, -ln10 * lm.Log10Prob(h, kEos));
  }
  return std::move(out);
}

}  // namespace lmaug
