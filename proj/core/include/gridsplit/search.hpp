// Copyright 2026 The GridSplit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRIDSPLIT_SEARCH_HPP
#define GRIDSPLIT_SEARCH_HPP

#include <span>
#include <vector>

#include "gridsplit/dispatch.hpp"
#include "gridsplit/matroid.hpp"
#include "gridsplit/model.hpp"
#include "gridsplit/numerics.hpp"
#include "gridsplit/objectives.hpp"

namespace gridsplit {

enum class TerminationReason { LocalOptimum, IterationCap };

struct IslandingResult {
  IslandingStrategy strategy;
  FlowState flow;
  ObjectiveBreakdown breakdown;
  double initial_total = 0.0;       ///< objective of the starting strategy
  long long iterations = 0;          ///< accepted exchanges
  long long swaps_evaluated = 0;     ///< candidate exchanges examined in scan order
  TerminationReason terminated_by = TerminationReason::LocalOptimum;
};

struct Evaluation {
  FlowState flow;
  ObjectiveBreakdown breakdown;
};

/// Dispatch plus objective for one retained forest.
Evaluation evaluate_islanding(const ValidatedSystem& vsys,
                              std::span<const int> forest,
                              const DenseMatrix& a_bar,
                              const ObjectiveWeights& w);

/// Starting strategy: maximum-|pre_flow| spanning forest (greedy with
/// ascending line-id tie-break, supernode edges always in), served load from
/// the dispatch program on the induced islanding.
IslandingStrategy initialize(const AugmentedGraph& g, const ValidatedSystem& vsys,
                             const ObjectiveWeights& w);

/// First-improvement exchange search over retained forests. Scans candidate
/// pairs (add outside the forest, remove inside) in lexicographic order,
/// re-dispatches every feasible exchange, and accepts the first one whose
/// objective drops below (1 - epsilon) times the current value; a full scan
/// without an acceptance terminates at a local optimum. Deterministic for
/// fixed inputs regardless of the GRIDSPLIT_THREADS evaluation budget.
IslandingResult local_search(const ValidatedSystem& vsys, const DenseMatrix& a_bar,
                             const ObjectiveWeights& w);

/// Exhaustive ground truth: enumerates every retained forest that separates
/// the references (include/exclude recursion with component pruning),
/// dispatches each, and returns the minimizer with ascending-line-id
/// tie-break. Throws TooLarge when the cycle space exceeds 12 excess edges.
IslandingResult brute_force_oracle(const ValidatedSystem& vsys,
                                   const DenseMatrix& a_bar,
                                   const ObjectiveWeights& w);

/// (z - alg) / (z - opt) over the objective totals; the local search with
/// epsilon = 0 guarantees at least 1/2. Throws BadZ when z is below either
/// total, or equals the optimum while the two results differ.
double optimality_certificate(const IslandingResult& alg,
                              const IslandingResult& opt, double z);

/// Effective evaluation parallelism: GRIDSPLIT_THREADS, where 0 or unset
/// means the hardware concurrency.
int thread_budget();

}  // namespace gridsplit

#endif  // GRIDSPLIT_SEARCH_HPP
