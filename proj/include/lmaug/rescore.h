// lmaug/rescore.h

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

#ifndef LMAUG_RESCORE_H_
#define LMAUG_RESCORE_H_

#include <vector>

#include "lmaug/backoff-model.h"
#include "lmaug/lattice.h"

namespace lmaug {

/// A lattice whose states each carry one LM history.  history[s] is the last
/// order-1 words read on every path into s (start symbols pad the front);
/// source_state[s] is the state of the input lattice s was copied from.
struct ContextExpansion {
  Lattice lattice;
  std::vector<NGram> history;
  std::vector<std::int32_t> source_state;
};

/// Splits states so each has a unique (order-1)-word history.  The set of
/// complete word sequences and their acoustic costs is unchanged; LM and
/// final costs are copied through.
ContextExpansion ExpandForContext(const Lattice &lat, int order);

/// Replaces every LM cost by -ln P under `lm` (end-of-sentence cost on the
/// final states).  Acoustic costs and the lattice language are preserved.
Lattice Rescore(const Lattice &lat, const BackoffModel &lm);

}  // namespace lmaug

#endif  // LMAUG_RESCORE_H_
