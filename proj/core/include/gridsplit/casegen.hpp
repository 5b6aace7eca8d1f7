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

#ifndef GRIDSPLIT_CASEGEN_HPP
#define GRIDSPLIT_CASEGEN_HPP

#include <vector>

#include "gridsplit/model.hpp"

namespace gridsplit {

/// Knobs for the synthetic case generator. Flows are always produced by the
/// linearized power flow at full load with capacity-proportional generation,
/// so generated cases satisfy conservation by construction.
struct CaseGenOptions {
  int buses = 8;
  int islands = 2;
  int extra_lines = 3;          ///< lines beyond the random spanning tree
  unsigned seed = 1;
  double junction_fraction = 0.15;
  double generator_fraction = 0.35;
  double blackstart_probability = 0.3;  ///< for non-reference generators
  double capacity_slack_lo = 0.8;       ///< capacity = |flow| * U[lo, hi] + 1
  double capacity_slack_hi = 2.0;
};

struct GeneratedCase {
  PowerSystem system;
  std::vector<int> refs;
};

/// Deterministic in the seed; the result always passes validate_system.
GeneratedCase random_case(const CaseGenOptions& options);

}  // namespace gridsplit

#endif  // GRIDSPLIT_CASEGEN_HPP
