// lmaug/lattice.h

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

#ifndef LMAUG_LATTICE_H_
#define LMAUG_LATTICE_H_

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "lmaug/corpus.h"

namespace lmaug {

// Costs are negative natural logs.  A path's acoustic cost is the sum of its
// arcs' am_cost; its LM cost is the sum of the arcs' lm_cost plus the final
// cost of the state it ends in (the end-of-sentence LM cost).

struct LatticeArc {
  std::int32_t next = 0;
  std::string word;
  double am_cost = 0.0;
  double lm_cost = 0.0;
};

/// Acyclic weighted word graph.  State 0 is the start state.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::string id) : id_(std::move(id)) {}

  const std::string &Id() const { return id_; }
  void SetId(std::string id) { id_ = std::move(id); }

  std::int32_t AddState();
  std::int32_t NumStates() const {
    return static_cast<std::int32_t>(arcs_.size());
  }
  std::int32_t Start() const { return 0; }
  std::size_t NumArcs() const;

  void AddArc(std::int32_t from, LatticeArc arc);
  const std::vector<LatticeArc> &Arcs(std::int32_t s) const {
    return arcs_.at(s);
  }
  std::vector<LatticeArc> &MutableArcs(std::int32_t s) { return arcs_.at(s); }

  void SetFinal(std::int32_t s, double cost);
  bool IsFinal(std::int32_t s) const { return final_.at(s).has_value(); }
  double FinalCost(std::int32_t s) const { return final_.at(s).value(); }
  void ClearFinal(std::int32_t s) { final_.at(s).reset(); }

  /// Throws StructuralError if the graph has a cycle.
  std::vector<std::int32_t> TopologicalOrder() const;

  /// Every word label on some arc.
  std::set<std::string> Labels() const;

 private:
  std::string id_;
  std::vector<std::vector<LatticeArc>> arcs_;
  std::vector<std::optional<double>> final_;
};

struct PathHypothesis {
  Sentence words;
  double am_cost = 0.0;
  double lm_cost = 0.0;
  double total_cost = 0.0;  // am_scale * am_cost + lm_scale * lm_cost
};

/// Removes states not both reachable from the start and able to reach a
/// final state.  Surviving states keep their relative order.
Lattice Connect(const Lattice &lat);

/// Minimum total-cost complete path; among paths whose totals agree within
/// 1e-9, the lexicographically smallest word sequence.  Throws
/// StructuralError when no complete path exists.
PathHypothesis BestPath(const Lattice &lat, double am_scale = 1.0,
                        double lm_scale = 1.0);

/// Every complete path, in depth-first order.  Throws StructuralError if
/// there are more than `limit`.
std::vector<PathHypothesis> EnumeratePaths(const Lattice &lat,
                                           std::size_t limit,
                                           double am_scale = 1.0,
                                           double lm_scale = 1.0);

/// Number of complete paths (saturates at UINT64_MAX).
std::uint64_t CountPaths(const Lattice &lat);

struct OraclePathResult {
  PathHypothesis path;
  std::size_t edit_distance = 0;
};

/// Path with the fewest word edits against `reference`; ties go to the
/// lower total cost (unit scales).  Throws StructuralError on a lattice
/// without complete paths.
OraclePathResult OraclePath(const Lattice &lat, const Sentence &reference);

/// Keeps the arcs (and final weights) lying on at least one complete path
/// whose total cost is within `beam` of the best, then trims.
Lattice Prune(const Lattice &lat, double beam, double am_scale = 1.0,
              double lm_scale = 1.0);

/// Text format, one block per lattice:
///
///   UTT <id>
///   <from> <to> <word> <am_cost> <lm_cost>
///   <state> <final_cost>
///   <blank line>
///
/// Costs use 6 decimals.  Arcs are written in state order, finals after.
void WriteLattice(std::ostream &os, const Lattice &lat);
/// Reads every block of a stream.  Throws FormatError on malformed lines and
/// StructuralError on cyclic lattices.
std::vector<Lattice> ReadLattices(std::istream &is);

}  // namespace lmaug

#endif  // LMAUG_LATTICE_H_
