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

#include "gridsplit/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gridsplit/error.hpp"

namespace gridsplit {

namespace {

constexpr double kLoadSlack = 1e-6;

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

std::vector<char> line_mask(const PowerSystem& sys, std::span<const int> lines) {
  std::vector<char> mask(sys.line_count(), 0);
  for (int l : lines) mask[l] = 1;
  return mask;
}

// Component label of every bus plus the per-component aggregates the
// penalty terms share.
struct PartitionStats {
  std::vector<int> labels;
  int count = 0;
  std::vector<double> load;       // served MW per component
  std::vector<double> capacity;   // generation capacity per component
  std::vector<int> blackstart;    // blackstart generators per component
  std::vector<int> buses;         // bus count per component
};

PartitionStats partition_stats(const PowerSystem& sys, std::span<const int> forest,
                               std::span<const double> served) {
  PartitionStats st;
  st.labels = component_labels(sys, forest);
  st.count = *std::max_element(st.labels.begin(), st.labels.end()) + 1;
  st.load.assign(st.count, 0.0);
  st.capacity.assign(st.count, 0.0);
  st.blackstart.assign(st.count, 0);
  st.buses.assign(st.count, 0);

  int load_pos = 0;
  for (const Bus& b : sys.buses) {
    const int k = st.labels[b.id];
    ++st.buses[k];
    if (b.kind == BusKind::Generator) {
      st.capacity[k] += b.gen_capacity;
      if (b.blackstart) ++st.blackstart[k];
    } else if (b.kind == BusKind::Load) {
      if (!served.empty()) st.load[k] += served[load_pos];
      ++load_pos;
    }
  }
  return st;
}

}  // namespace

double f2_disruption(const PowerSystem& sys, std::span<const int> retained_lines) {
  const std::vector<char> mask = line_mask(sys, retained_lines);
  double acc = 0.0;
  for (const Line& line : sys.lines)
    if (!mask[line.id]) acc += std::abs(line.pre_flow);
  return acc;
}

double f2_bar(const ValidatedSystem& vsys, std::span<const int> forest,
              std::span<const double> sink_flows, double beta) {
  const std::vector<int> labels = component_labels(vsys.sys, forest);
  double acc = 0.0;
  for (const Line& line : vsys.sys.lines)
    if (labels[line.from] != labels[line.to]) acc += std::abs(line.pre_flow);
  for (double s : sink_flows) acc += beta * std::abs(s);
  return acc;
}

double f2_phi_bar(const AugmentedGraph& g, std::span<const int> edge_ids) {
  const LinePartition part = line_partition(g, edge_ids);
  const int m = g.island_count();
  double acc = 0.0;
  for (const Line& line : g.base.lines) {
    const double weight = std::abs(line.pre_flow);
    if (weight == 0.0) continue;
    for (int k = 0; k < m; ++k) {
      const double cu = chi_bar_from(part, g, k, line.from);
      for (int kk = 0; kk < m; ++kk) {
        if (kk == k) continue;
        const double cv = chi_bar_from(part, g, kk, line.to);
        acc += positive_part(cu + cv - 1.0) * weight;
      }
    }
  }
  return acc;
}

double f3_shedding(const PowerSystem& sys, std::span<const double> served) {
  const std::vector<int> loads = sys.load_ids();
  if (served.size() != loads.size())
    raise(ErrorCode::LoadBoundViolated, "served-load vector size mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < loads.size(); ++i) {
    const Bus& b = sys.buses[loads[i]];
    if (served[i] < -kLoadSlack || served[i] > b.max_load + kLoadSlack)
      raise(ErrorCode::LoadBoundViolated,
            "bus " + std::to_string(b.id) + ": served load outside [0, max]");
    acc += b.shed_cost_slope * (b.max_load - served[i]);
  }
  return acc;
}

double f3_shedding_min(const PowerSystem& sys,
                       std::span<const std::vector<double>> lambda) {
  double best = std::numeric_limits<double>::infinity();
  for (const std::vector<double>& d : lambda)
    best = std::min(best, f3_shedding(sys, d));
  return best;
}

double f4_balance_penalty(const PowerSystem& sys, std::span<const int> forest,
                          std::span<const double> served) {
  const PartitionStats st = partition_stats(sys, forest, served);
  double acc = 0.0;
  for (int k = 0; k < st.count; ++k)
    acc += positive_part(st.load[k] - st.capacity[k]);
  return acc;
}

double f4_balance_expanded(const PowerSystem& sys, std::span<const int> forest,
                           std::span<const double> served) {
  const PartitionStats st = partition_stats(sys, forest, served);
  const std::vector<int> gens = sys.generator_ids();
  double total_capacity = 0.0;
  for (int gid : gens) total_capacity += sys.buses[gid].gen_capacity;

  double acc = 0.0;
  for (int k = 0; k < st.count; ++k) {
    double inner = st.load[k] - total_capacity;
    for (int gid : gens) {
      for (int kk = 0; kk < st.count; ++kk) {
        if (kk == k) continue;
        if (st.labels[gid] == kk) inner += sys.buses[gid].gen_capacity;
      }
    }
    acc += positive_part(inner);
  }
  return acc;
}

double f4_bar(const AugmentedGraph& g, std::span<const int> edge_ids,
              std::span<const double> served) {
  const LinePartition part = line_partition(g, edge_ids);
  const std::vector<int> loads = g.base.load_ids();
  const std::vector<int> gens = g.base.generator_ids();
  const int m = g.island_count();

  double total_capacity = 0.0;
  for (int gid : gens) total_capacity += g.base.buses[gid].gen_capacity;

  double acc = 0.0;
  for (int k = 0; k < m; ++k) {
    double inner = -total_capacity;
    for (size_t i = 0; i < loads.size(); ++i)
      inner += chi_bar_from(part, g, k, loads[i]) * served[i];
    for (int gid : gens) {
      double others = 0.0;
      for (int kk = 0; kk < m; ++kk)
        if (kk != k) others += chi_bar_from(part, g, kk, gid);
      inner += g.base.buses[gid].gen_capacity * others;
    }
    acc += positive_part(inner);
  }
  return acc;
}

double f5_load_bound_penalty(const PowerSystem& sys, std::span<const int> forest,
                             std::span<const double> served) {
  const std::vector<int> labels = component_labels(sys, forest);
  const int count = *std::max_element(labels.begin(), labels.end()) + 1;
  const std::vector<int> loads = sys.load_ids();

  double acc = 0.0;
  for (size_t i = 0; i < loads.size(); ++i) {
    const Bus& b = sys.buses[loads[i]];
    for (int k = 0; k < count; ++k) {
      const double kchi = labels[loads[i]] == k ? 1.0 : 0.0;
      acc += positive_part(kchi * served[i] - kchi * b.max_load);
    }
  }
  return acc;
}

double f5_load_bound_expanded(const PowerSystem& sys, std::span<const int> forest,
                              std::span<const double> served) {
  const std::vector<int> labels = component_labels(sys, forest);
  const int count = *std::max_element(labels.begin(), labels.end()) + 1;
  const std::vector<int> loads = sys.load_ids();

  double acc = 0.0;
  for (int k = 0; k < count; ++k) {
    for (size_t i = 0; i < loads.size(); ++i) {
      const Bus& b = sys.buses[loads[i]];
      const double d_kj = (labels[loads[i]] == k ? 1.0 : 0.0) * served[i];
      double foreign = 0.0;
      for (int kk = 0; kk < count; ++kk)
        if (kk != k && labels[loads[i]] == kk) foreign += b.max_load;
      acc += positive_part(d_kj + foreign - b.max_load);
    }
  }
  return acc;
}

double f5_bar(const AugmentedGraph& g, std::span<const int> edge_ids,
              std::span<const double> served) {
  const LinePartition part = line_partition(g, edge_ids);
  const std::vector<int> loads = g.base.load_ids();
  const int m = g.island_count();

  double acc = 0.0;
  for (int k = 0; k < m; ++k) {
    for (size_t i = 0; i < loads.size(); ++i) {
      const Bus& b = g.base.buses[loads[i]];
      double foreign = 0.0;
      for (int kk = 0; kk < m; ++kk)
        if (kk != k) foreign += chi_bar_from(part, g, kk, loads[i]);
      acc += positive_part(chi_bar_from(part, g, k, loads[i]) * served[i] +
                           b.max_load * foreign - b.max_load);
    }
  }
  return acc;
}

double f6_blackstart_penalty(const PowerSystem& sys, std::span<const int> forest) {
  const PartitionStats st = partition_stats(sys, forest, {});
  double acc = 0.0;
  for (int k = 0; k < st.count; ++k)
    acc += positive_part(1.0 - st.blackstart[k]);
  return acc;
}

double f6_blackstart_expanded(const PowerSystem& sys, std::span<const int> forest) {
  const PartitionStats st = partition_stats(sys, forest, {});
  int total_blackstart = 0;
  for (const Bus& b : sys.buses)
    if (b.kind == BusKind::Generator && b.blackstart) ++total_blackstart;

  double acc = 0.0;
  for (int k = 0; k < st.count; ++k) {
    double inner = 1.0 - total_blackstart;
    for (int kk = 0; kk < st.count; ++kk) {
      if (kk == k) continue;
      inner += st.blackstart[kk];  // foreign blackstart units
      inner += st.buses[kk];       // foreign buses
    }
    acc += positive_part(inner);
  }
  return acc;
}

double f6_bar(const AugmentedGraph& g, std::span<const int> edge_ids) {
  const LinePartition part = line_partition(g, edge_ids);
  const int m = g.island_count();

  std::vector<int> blackstart_ids;
  for (const Bus& b : g.base.buses)
    if (b.kind == BusKind::Generator && b.blackstart) blackstart_ids.push_back(b.id);
  const double total = static_cast<double>(blackstart_ids.size());

  double acc = 0.0;
  for (int k = 0; k < m; ++k) {
    double foreign = 0.0;
    for (int kk = 0; kk < m; ++kk) {
      if (kk == k) continue;
      for (int bid : blackstart_ids) foreign += chi_bar_from(part, g, kk, bid);
    }
    acc += positive_part(1.0 - total + foreign);
  }
  return acc;
}

ObjectiveBreakdown total_objective(const ValidatedSystem& vsys,
                                   std::span<const int> forest,
                                   std::span<const double> served,
                                   std::span<const double> sink_flows,
                                   const DenseMatrix& a_bar,
                                   const ObjectiveWeights& w) {
  const PowerSystem& sys = vsys.sys;
  ObjectiveBreakdown out;

  const double f1_norm = f1_coherency(vsys, forest, a_bar);
  out.f1 = f1_norm * f1_norm;

  out.sink_penalty = 0.0;
  for (double s : sink_flows) out.sink_penalty += w.beta * std::abs(s);
  out.f2 = f2_bar(vsys, forest, sink_flows, w.beta);

  out.f3 = f3_shedding(sys, served);
  out.f4 = f4_balance_penalty(sys, forest, served);
  out.f5 = f5_load_bound_penalty(sys, forest, served);
  out.f6 = f6_blackstart_penalty(sys, forest);

  out.total = w.alpha[0] * out.f1 + w.alpha[1] * out.f2 + w.alpha[2] * out.f3 +
              w.alpha[3] * out.f4 + w.alpha[4] * out.f5 + w.alpha[5] * out.f6;
  return out;
}

}  // namespace gridsplit
