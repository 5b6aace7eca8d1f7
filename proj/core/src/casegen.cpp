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

#include "gridsplit/casegen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "gridsplit/dispatch.hpp"
#include "gridsplit/error.hpp"

namespace gridsplit {

GeneratedCase random_case(const CaseGenOptions& options) {
  const int n = std::max(options.buses, 2);
  const int m = std::max(options.islands, 1);
  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  int num_gens = std::max(m, static_cast<int>(std::lround(options.generator_fraction * n)));
  num_gens = std::min(num_gens, n);
  int num_junctions = static_cast<int>(std::lround(options.junction_fraction * n));
  num_junctions = std::min(num_junctions, n - num_gens);
  if (n - num_gens - num_junctions == 0 && num_junctions > 0) --num_junctions;

  std::vector<int> shuffled(n);
  std::iota(shuffled.begin(), shuffled.end(), 0);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);

  PowerSystem sys;
  sys.buses.resize(n);
  for (int b = 0; b < n; ++b) sys.buses[b].id = b;
  std::vector<int> gens(shuffled.begin(), shuffled.begin() + num_gens);
  std::sort(gens.begin(), gens.end());
  for (int i = 0; i < num_gens; ++i) sys.buses[shuffled[i]].kind = BusKind::Generator;
  for (int i = num_gens; i < num_gens + num_junctions; ++i)
    sys.buses[shuffled[i]].kind = BusKind::Junction;
  for (int i = num_gens + num_junctions; i < n; ++i)
    sys.buses[shuffled[i]].kind = BusKind::Load;

  double total_load = 0.0;
  for (Bus& b : sys.buses) {
    if (b.kind == BusKind::Generator) {
      b.gen_capacity = 10.0 + 50.0 * unit(rng);
      b.inertia = 0.5 + 2.5 * unit(rng);
      b.voltage = 0.95 + 0.10 * unit(rng);
      b.rotor_angle = -0.3 + 0.6 * unit(rng);
    } else if (b.kind == BusKind::Load) {
      b.max_load = 5.0 + 25.0 * unit(rng);
      b.shed_cost_slope = 1.0 + 99.0 * unit(rng);
      total_load += b.max_load;
    }
  }

  // Rescale generation so total capacity sits near total load; shortfalls
  // keep the shedding machinery exercised.
  if (total_load > 0.0) {
    double total_capacity = 0.0;
    for (const Bus& b : sys.buses) total_capacity += b.gen_capacity;
    const double target = (0.8 + 0.6 * unit(rng)) * total_load;
    for (Bus& b : sys.buses)
      if (b.kind == BusKind::Generator) b.gen_capacity *= target / total_capacity;
  }

  // Random spanning tree plus extra chords.
  std::set<std::pair<int, int>> pairs;
  for (int b = 1; b < n; ++b) {
    const int other = std::uniform_int_distribution<int>(0, b - 1)(rng);
    pairs.insert({std::min(b, other), std::max(b, other)});
  }
  int attempts = 8 * options.extra_lines + 16;
  int added = 0;
  while (added < options.extra_lines && attempts-- > 0) {
    int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (u == v) continue;
    if (pairs.insert({std::min(u, v), std::max(u, v)}).second) ++added;
  }
  for (const auto& [u, v] : pairs) {
    Line line;
    line.id = static_cast<int>(sys.lines.size());
    line.from = u;
    line.to = v;
    line.susceptance = 1.0 + 9.0 * unit(rng);
    sys.lines.push_back(line);
  }

  // References: a random sample of generators, always blackstart-capable.
  std::vector<int> ref_pool = gens;
  std::shuffle(ref_pool.begin(), ref_pool.end(), rng);
  std::vector<int> refs(ref_pool.begin(), ref_pool.begin() + m);
  for (int r : refs) sys.buses[r].blackstart = true;
  for (int gid : gens)
    if (!sys.buses[gid].blackstart && unit(rng) < options.blackstart_probability)
      sys.buses[gid].blackstart = true;

  // Operating point: full load, capacity-proportional generation.
  std::vector<double> injections(n, 0.0);
  double total_capacity = 0.0;
  for (const Bus& b : sys.buses) total_capacity += b.gen_capacity;
  for (const Bus& b : sys.buses) {
    if (b.kind == BusKind::Load) injections[b.id] = -b.max_load;
    if (b.kind == BusKind::Generator && total_capacity > 0.0)
      injections[b.id] = total_load * b.gen_capacity / total_capacity;
  }
  const std::vector<double> flows = dc_power_flow(sys, injections);
  for (Line& line : sys.lines) {
    line.pre_flow = flows[line.id];
    const double slack = options.capacity_slack_lo +
                         (options.capacity_slack_hi - options.capacity_slack_lo) * unit(rng);
    line.capacity = std::abs(line.pre_flow) * slack + 1.0;
  }

  return GeneratedCase{std::move(sys), std::move(refs)};
}

}  // namespace gridsplit
