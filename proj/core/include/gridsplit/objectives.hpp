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

#ifndef GRIDSPLIT_OBJECTIVES_HPP
#define GRIDSPLIT_OBJECTIVES_HPP

#include <array>
#include <span>
#include <vector>

#include "gridsplit/coherency.hpp"
#include "gridsplit/matroid.hpp"
#include "gridsplit/model.hpp"
#include "gridsplit/numerics.hpp"

namespace gridsplit {

/// All trade-off and algorithm parameters in one place.
struct ObjectiveWeights {
  std::array<double, 6> alpha{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  double beta = 100.0;    ///< capacity-violation (sink flow) weight inside f2
  double gamma = 100.0;   ///< sink-flow weight in the dispatch objective
  double epsilon = 0.0;   ///< acceptance margin of the local search, in [0, 0.5)
  double z_offset = 0.0;  ///< optimality-bound offset; 0 derives 10x the initial objective
};

/// Per-term objective values; total is the alpha-weighted sum. f2 already
/// contains the beta-weighted sink penalty, which is also broken out
/// separately in sink_penalty.
struct ObjectiveBreakdown {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;
  double f5 = 0.0;
  double f6 = 0.0;
  double sink_penalty = 0.0;
  double total = 0.0;
};

/// Pre-islanding flow lost on every line outside the retained set.
double f2_disruption(const PowerSystem& sys, std::span<const int> retained_lines);

/// Cross-island disruption plus the beta-weighted total sink flow. On a
/// retained forest this equals f2_disruption of the induced retained set
/// plus beta * sum |sink|. sink_flows is ordered per load bus.
double f2_bar(const ValidatedSystem& vsys, std::span<const int> forest,
              std::span<const double> sink_flows, double beta);

/// Relaxed cross-island disruption over arbitrary edge subsets, built from
/// chi_bar pairs: sum over ordered island pairs (k, k') and lines (j, j') of
/// max(chi_bar_kj + chi_bar_k'j' - 1, 0) * |pre_flow|. Nonincreasing and
/// supermodular; equals the cross-island flow sum on bases.
double f2_phi_bar(const AugmentedGraph& g, std::span<const int> edge_ids);

/// Load-shedding cost: sum of slope * (max_load - served) over load buses.
/// served is ordered per load bus; throws LoadBoundViolated outside
/// [0, max_load] beyond a 1e-6 slack.
double f3_shedding(const PowerSystem& sys, std::span<const double> served);

/// Shedding cost minimized over a finite set of load vectors (the hybrid
/// form); +infinity on an empty set.
double f3_shedding_min(const PowerSystem& sys,
                       std::span<const std::vector<double>> lambda);

/// Load-generation balance penalty: per island, the served load in excess
/// of the island's generation capacity.
double f4_balance_penalty(const PowerSystem& sys, std::span<const int> forest,
                          std::span<const double> served);

/// Same value computed through the unsimplified per-island expansion that
/// sums foreign-island capacities; kept as an audit route.
double f4_balance_expanded(const PowerSystem& sys, std::span<const int> forest,
                           std::span<const double> served);

/// chi_bar relaxation of the balance penalty over arbitrary subsets.
double f4_bar(const AugmentedGraph& g, std::span<const int> edge_ids,
              std::span<const double> served);

/// Load-bound penalty: served load above max_load, accumulated through the
/// island membership indicators.
double f5_load_bound_penalty(const PowerSystem& sys, std::span<const int> forest,
                             std::span<const double> served);

/// Unsimplified expansion of the load-bound penalty (audit route).
double f5_load_bound_expanded(const PowerSystem& sys, std::span<const int> forest,
                              std::span<const double> served);

/// chi_bar relaxation of the load-bound penalty.
double f5_bar(const AugmentedGraph& g, std::span<const int> edge_ids,
              std::span<const double> served);

/// Blackstart penalty: 1 per island that contains no blackstart generator.
double f6_blackstart_penalty(const PowerSystem& sys, std::span<const int> forest);

/// Unsimplified expansion whose inner sums count buses and blackstart units
/// outside each island; preserved verbatim as an audit route even though it
/// penalizes every multi-island partition.
double f6_blackstart_expanded(const PowerSystem& sys, std::span<const int> forest);

/// chi_bar relaxation of the blackstart penalty: per island k,
/// max(1 - B + sum_{k' != k} relaxed blackstart mass of k', 0) where B is
/// the total blackstart count. Equals f6_blackstart_penalty on bases.
double f6_bar(const AugmentedGraph& g, std::span<const int> edge_ids);

/// The combined objective over a retained forest: alpha-weighted sum of the
/// squared coherency distance, cross-island disruption with sink penalty,
/// shedding cost, and the three constraint penalties.
ObjectiveBreakdown total_objective(const ValidatedSystem& vsys,
                                   std::span<const int> forest,
                                   std::span<const double> served,
                                   std::span<const double> sink_flows,
                                   const DenseMatrix& a_bar,
                                   const ObjectiveWeights& w);

}  // namespace gridsplit

#endif  // GRIDSPLIT_OBJECTIVES_HPP
