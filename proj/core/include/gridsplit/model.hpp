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

#ifndef GRIDSPLIT_MODEL_HPP
#define GRIDSPLIT_MODEL_HPP

#include <span>
#include <vector>

namespace gridsplit {

enum class BusKind { Generator, Load, Junction };

/// One bus of the network. Generator-only fields are meaningful only when
/// kind == Generator, load-only fields only when kind == Load; validation
/// rejects systems that mix them.
struct Bus {
  int id = 0;
  BusKind kind = BusKind::Junction;
  double gen_capacity = 0.0;     ///< MW, generators
  double max_load = 0.0;         ///< MW, loads
  double shed_cost_slope = 0.0;  ///< cost per MW shed, loads
  double inertia = 0.0;          ///< per unit, generators
  double voltage = 0.0;          ///< per unit behind transient reactance
  double rotor_angle = 0.0;      ///< radians, generators
  bool blackstart = false;       ///< generators
};

/// Transmission line between two buses, stored once per unordered pair
/// with from < to. pre_flow is the pre-islanding operating flow, signed
/// positive in the from -> to direction.
struct Line {
  int id = 0;
  int from = 0;
  int to = 0;
  double susceptance = 0.0;  ///< per unit, > 0
  double capacity = 0.0;     ///< MW, > 0
  double pre_flow = 0.0;     ///< MW, signed
};

struct PowerSystem {
  std::vector<Bus> buses;
  std::vector<Line> lines;

  int bus_count() const { return static_cast<int>(buses.size()); }
  int line_count() const { return static_cast<int>(lines.size()); }

  /// Bus ids of all generators / loads, ascending.
  std::vector<int> generator_ids() const;
  std::vector<int> load_ids() const;
};

/// Connected component of the retained-line subgraph. `index` is the
/// 1-based position of the reference generator it contains, or 0 when no
/// unique reference resolves. `lines` is the full induced line set of the
/// component, not just the retained forest edges.
struct Island {
  int index = 0;
  int reference = -1;
  std::vector<int> buses;  ///< ascending bus ids
  std::vector<int> lines;  ///< ascending induced line ids
};

/// The planner's decision variable: a retained-line forest inducing the
/// island partition, plus the served load (MW) per load bus, ordered by
/// ascending load-bus id.
struct IslandingStrategy {
  std::vector<int> retained;
  std::vector<double> served;
};

/// A PowerSystem that passed validate_system, together with the reference
/// generators (one per requested island). Immutable after construction.
struct ValidatedSystem {
  PowerSystem sys;
  std::vector<int> refs;

  int island_count() const { return static_cast<int>(refs.size()); }
};

/// Checks all bus/line invariants, connectivity, reference sanity and
/// blackstart availability. Throws Error with codes DisconnectedGraph,
/// DuplicateLine, BadReference, InsufficientBlackstart or InvalidField.
ValidatedSystem validate_system(const PowerSystem& sys, std::vector<int> refs);

/// Connected components of (buses, retained_lines), each with its induced
/// line set. When refs are passed, a component containing exactly one
/// reference r_k gets index k+1 and that reference attached. Components are
/// ordered by smallest contained bus id.
std::vector<Island> islands_of(const PowerSystem& sys,
                               std::span<const int> retained_lines,
                               std::span<const int> refs = {});

/// True iff retained_lines splits the system into exactly |refs| connected
/// islands, each containing exactly one reference generator.
bool is_valid_islanding(const PowerSystem& sys,
                        std::span<const int> retained_lines,
                        std::span<const int> refs);

/// Per-bus island labels (0-based island position in islands_of order),
/// -1 never occurs since components cover all buses.
std::vector<int> component_labels(const PowerSystem& sys,
                                  std::span<const int> retained_lines);

/// Line ids whose endpoints fall in the same component of retained_lines;
/// this is the physically retained set induced by the partition (a tripped
/// line is one that crosses two islands).
std::vector<int> induced_retained_lines(const PowerSystem& sys,
                                        std::span<const int> retained_lines);

}  // namespace gridsplit

#endif  // GRIDSPLIT_MODEL_HPP
