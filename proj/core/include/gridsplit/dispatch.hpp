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

#ifndef GRIDSPLIT_DISPATCH_HPP
#define GRIDSPLIT_DISPATCH_HPP

#include <span>
#include <vector>

#include "gridsplit/model.hpp"
#include "gridsplit/numerics.hpp"
#include "gridsplit/objectives.hpp"

namespace gridsplit {

/// Post-islanding operating point. line_flow is indexed by line id (zero on
/// tripped lines); sink_flow, served are ordered per load bus; generation per
/// generator bus. Conservation holds at every bus within 1e-6 MW and every
/// retained line carries at most its capacity plus 1e-6 MW.
struct FlowState {
  std::vector<double> line_flow;
  std::vector<char> retained;  ///< per line id, 1 when the line stays energized
  std::vector<double> sink_flow;
  std::vector<double> served;
  std::vector<double> generation;
};

/// Lossless linearized power flow: solves B theta = p with the angle of the
/// lowest-id generator bus pinned to zero, then flow = b * (theta_from -
/// theta_to) per line. injections must sum to zero (1e-6 MW) or
/// UnbalancedInjections is thrown; SingularB when the reduced system cannot
/// be factored.
std::vector<double> dc_power_flow(const PowerSystem& sys,
                                  std::span<const double> injections);

/// Variable layout of the dispatch program, in column order: served load per
/// load bus, generation per generator, split positive/negative flow per
/// retained line, split positive/negative sink flow per load bus, one
/// balance slack per island (omitted when the served load is fixed).
struct DispatchLayout {
  std::vector<int> retained_lines;  ///< ascending line ids carrying flow
  std::vector<Island> islands;
  int served_offset = 0;
  int generation_offset = 0;
  int flow_pos_offset = 0;
  int flow_neg_offset = 0;
  int sink_pos_offset = 0;
  int sink_neg_offset = 0;
  int balance_slack_offset = 0;  ///< -1 when balance rows are omitted
};

struct DispatchLp {
  LpProblem problem;
  DispatchLayout layout;
};

/// Builds the post-islanding dispatch program for a valid islanding: per-bus
/// conservation equalities over the induced retained lines, per-island
/// served-load <= generation-capacity rows, bounds [0, max] on served load
/// and generation, [0, capacity] on each flow part, and free nonnegative
/// sink parts priced at gamma. Objective: shed cost (linear part) plus
/// gamma * total sink flow. When fixed_served is passed, the served loads
/// are pinned and the balance rows are dropped, leaving the pure
/// flow-existence program, which the uncapacitated sinks keep feasible for
/// any in-bounds load.
DispatchLp build_dispatch_lp(const ValidatedSystem& vsys,
                             std::span<const int> forest,
                             const ObjectiveWeights& w,
                             std::span<const double> fixed_served = {});

/// Solves the dispatch program and reconstructs the signed operating point.
/// Throws LpFailure if the solver does not return an optimum or the
/// recovered point violates conservation or capacity beyond 1e-6 MW.
FlowState post_islanding_dispatch(const ValidatedSystem& vsys,
                                  std::span<const int> forest,
                                  const ObjectiveWeights& w);

}  // namespace gridsplit

#endif  // GRIDSPLIT_DISPATCH_HPP
