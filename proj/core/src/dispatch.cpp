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

#include "gridsplit/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gridsplit/coherency.hpp"
#include "gridsplit/error.hpp"

namespace gridsplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kResidualTol = 1e-6;

}  // namespace

std::vector<double> dc_power_flow(const PowerSystem& sys,
                                  std::span<const double> injections) {
  const int n = sys.bus_count();
  if (static_cast<int>(injections.size()) != n)
    raise(ErrorCode::UnbalancedInjections, "injection vector size mismatch");
  double sum = 0.0;
  for (double p : injections) sum += p;
  if (std::abs(sum) > kResidualTol)
    raise(ErrorCode::UnbalancedInjections,
          "injections sum to " + std::to_string(sum) + " MW");

  const std::vector<int> gens = sys.generator_ids();
  const int slack = gens.empty() ? 0 : gens.front();

  // Reduced system without the slack row/column; slack angle pinned to 0.
  const DenseMatrix lap = susceptance_laplacian(sys);
  DenseMatrix reduced(n - 1, n - 1);
  std::vector<double> rhs(n - 1);
  std::vector<int> bus_of_row;
  for (int b = 0; b < n; ++b)
    if (b != slack) bus_of_row.push_back(b);
  for (int r = 0; r < n - 1; ++r) {
    rhs[r] = injections[bus_of_row[r]];
    for (int c = 0; c < n - 1; ++c) reduced(r, c) = lap(bus_of_row[r], bus_of_row[c]);
  }

  std::vector<double> theta(n, 0.0);
  try {
    const std::vector<double> sol = solve_linear(std::move(reduced), std::move(rhs));
    for (int r = 0; r < n - 1; ++r) theta[bus_of_row[r]] = sol[r];
  } catch (const Error& err) {
    if (err.code() == ErrorCode::SingularMatrix)
      raise(ErrorCode::SingularB, "susceptance matrix is singular");
    throw;
  }

  std::vector<double> flows(sys.line_count());
  for (const Line& line : sys.lines)
    flows[line.id] = line.susceptance * (theta[line.from] - theta[line.to]);
  return flows;
}

DispatchLp build_dispatch_lp(const ValidatedSystem& vsys,
                             std::span<const int> forest,
                             const ObjectiveWeights& w,
                             std::span<const double> fixed_served) {
  const PowerSystem& sys = vsys.sys;
  const std::vector<int> loads = sys.load_ids();
  const std::vector<int> gens = sys.generator_ids();
  const int num_loads = static_cast<int>(loads.size());
  const int num_gens = static_cast<int>(gens.size());
  const bool pin_served = !fixed_served.empty();
  if (pin_served && static_cast<int>(fixed_served.size()) != num_loads)
    raise(ErrorCode::LpFailure, "fixed served-load vector size mismatch");

  DispatchLayout layout;
  layout.islands = islands_of(sys, forest, vsys.refs);
  layout.retained_lines = induced_retained_lines(sys, forest);
  const int num_flows = static_cast<int>(layout.retained_lines.size());
  const int num_islands = static_cast<int>(layout.islands.size());

  layout.served_offset = 0;
  layout.generation_offset = num_loads;
  layout.flow_pos_offset = layout.generation_offset + num_gens;
  layout.flow_neg_offset = layout.flow_pos_offset + num_flows;
  layout.sink_pos_offset = layout.flow_neg_offset + num_flows;
  layout.sink_neg_offset = layout.sink_pos_offset + num_loads;
  layout.balance_slack_offset = pin_served ? -1 : layout.sink_neg_offset + num_loads;

  const int num_vars =
      layout.sink_neg_offset + num_loads + (pin_served ? 0 : num_islands);
  const int num_rows = sys.bus_count() + (pin_served ? 0 : num_islands);

  LpProblem lp;
  lp.objective.assign(num_vars, 0.0);
  lp.lower.assign(num_vars, 0.0);
  lp.upper.assign(num_vars, kInf);
  lp.a_eq = DenseMatrix(num_rows, num_vars);
  lp.b_eq.assign(num_rows, 0.0);

  for (int i = 0; i < num_loads; ++i) {
    const Bus& b = sys.buses[loads[i]];
    if (pin_served) {
      lp.lower[layout.served_offset + i] = fixed_served[i];
      lp.upper[layout.served_offset + i] = fixed_served[i];
    } else {
      lp.upper[layout.served_offset + i] = b.max_load;
    }
    // Shedding cost enters through its linear part; the constant
    // sum(slope * max_load) is reported separately by the objective module.
    lp.objective[layout.served_offset + i] = -b.shed_cost_slope;
    lp.objective[layout.sink_pos_offset + i] = w.gamma;
    lp.objective[layout.sink_neg_offset + i] = w.gamma;
  }
  for (int i = 0; i < num_gens; ++i)
    lp.upper[layout.generation_offset + i] = sys.buses[gens[i]].gen_capacity;
  for (int i = 0; i < num_flows; ++i) {
    const double cap = sys.lines[layout.retained_lines[i]].capacity;
    lp.upper[layout.flow_pos_offset + i] = cap;
    lp.upper[layout.flow_neg_offset + i] = cap;
  }

  // Conservation per bus: outflow + sink + served - generation = 0.
  std::vector<int> load_pos(sys.bus_count(), -1);
  for (int i = 0; i < num_loads; ++i) load_pos[loads[i]] = i;
  std::vector<int> gen_pos(sys.bus_count(), -1);
  for (int i = 0; i < num_gens; ++i) gen_pos[gens[i]] = i;

  for (int i = 0; i < num_flows; ++i) {
    const Line& line = sys.lines[layout.retained_lines[i]];
    lp.a_eq(line.from, layout.flow_pos_offset + i) += 1.0;
    lp.a_eq(line.from, layout.flow_neg_offset + i) -= 1.0;
    lp.a_eq(line.to, layout.flow_pos_offset + i) -= 1.0;
    lp.a_eq(line.to, layout.flow_neg_offset + i) += 1.0;
  }
  for (int b = 0; b < sys.bus_count(); ++b) {
    if (load_pos[b] >= 0) {
      lp.a_eq(b, layout.served_offset + load_pos[b]) = 1.0;
      lp.a_eq(b, layout.sink_pos_offset + load_pos[b]) = 1.0;
      lp.a_eq(b, layout.sink_neg_offset + load_pos[b]) = -1.0;
    }
    if (gen_pos[b] >= 0) lp.a_eq(b, layout.generation_offset + gen_pos[b]) = -1.0;
  }

  // Served load within island generation capacity, one slack row per island.
  if (!pin_served) {
    for (int k = 0; k < num_islands; ++k) {
      const int row = sys.bus_count() + k;
      double capacity = 0.0;
      for (int bid : layout.islands[k].buses) {
        const Bus& b = sys.buses[bid];
        if (b.kind == BusKind::Generator) capacity += b.gen_capacity;
        if (b.kind == BusKind::Load) lp.a_eq(row, layout.served_offset + load_pos[bid]) = 1.0;
      }
      lp.a_eq(row, layout.balance_slack_offset + k) = 1.0;
      lp.b_eq[row] = capacity;
    }
  }

  return DispatchLp{std::move(lp), std::move(layout)};
}

FlowState post_islanding_dispatch(const ValidatedSystem& vsys,
                                  std::span<const int> forest,
                                  const ObjectiveWeights& w) {
  const PowerSystem& sys = vsys.sys;
  DispatchLp built = build_dispatch_lp(vsys, forest, w);
  const DispatchLayout& layout = built.layout;

  LpSolution sol = lp_solve(built.problem);
  if (sol.status != LpStatus::Optimal)
    raise(ErrorCode::LpFailure,
          sol.status == LpStatus::Infeasible
              ? "dispatch program reported infeasible"
              : "dispatch program reported unbounded");

  const std::vector<int> loads = sys.load_ids();
  const std::vector<int> gens = sys.generator_ids();

  FlowState state;
  state.line_flow.assign(sys.line_count(), 0.0);
  state.retained.assign(sys.line_count(), 0);
  for (size_t i = 0; i < layout.retained_lines.size(); ++i) {
    const int line = layout.retained_lines[i];
    state.retained[line] = 1;
    state.line_flow[line] = sol.x[layout.flow_pos_offset + static_cast<int>(i)] -
                            sol.x[layout.flow_neg_offset + static_cast<int>(i)];
  }
  state.served.resize(loads.size());
  state.sink_flow.resize(loads.size());
  for (size_t i = 0; i < loads.size(); ++i) {
    state.served[i] = sol.x[layout.served_offset + static_cast<int>(i)];
    state.sink_flow[i] = sol.x[layout.sink_pos_offset + static_cast<int>(i)] -
                         sol.x[layout.sink_neg_offset + static_cast<int>(i)];
  }
  state.generation.resize(gens.size());
  for (size_t i = 0; i < gens.size(); ++i)
    state.generation[i] = sol.x[layout.generation_offset + static_cast<int>(i)];

  // Recovered point must conserve flow at every bus and respect capacities.
  std::vector<double> residual(sys.bus_count(), 0.0);
  for (const Line& line : sys.lines) {
    if (!state.retained[line.id]) continue;
    residual[line.from] += state.line_flow[line.id];
    residual[line.to] -= state.line_flow[line.id];
    if (std::abs(state.line_flow[line.id]) > line.capacity + kResidualTol)
      raise(ErrorCode::LpFailure,
            "line " + std::to_string(line.id) + " dispatched above capacity");
  }
  for (size_t i = 0; i < loads.size(); ++i)
    residual[loads[i]] += state.served[i] + state.sink_flow[i];
  for (size_t i = 0; i < gens.size(); ++i) residual[gens[i]] -= state.generation[i];
  for (int b = 0; b < sys.bus_count(); ++b)
    if (std::abs(residual[b]) > kResidualTol)
      raise(ErrorCode::LpFailure,
            "conservation violated at bus " + std::to_string(b));

  return state;
}

}  // namespace gridsplit
