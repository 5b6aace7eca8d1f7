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

#include "gridsplit/matroid.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "gridsplit/error.hpp"
#include "gridsplit/union_find.hpp"

namespace gridsplit {

std::pair<int, int> AugmentedGraph::endpoints(int edge) const {
  if (edge < line_count()) {
    const Line& line = base.lines[edge];
    return {line.from, line.to};
  }
  return {supernode(), refs[edge - line_count()]};
}

std::vector<int> AugmentedGraph::super_edge_ids() const {
  std::vector<int> out(refs.size());
  for (size_t k = 0; k < refs.size(); ++k) out[k] = line_count() + static_cast<int>(k);
  return out;
}

AugmentedGraph augment(const ValidatedSystem& vsys) {
  return AugmentedGraph{vsys.sys, vsys.refs};
}

int graphic_rank(int node_count, std::span<const std::pair<int, int>> edges) {
  UnionFind uf(node_count);
  int rank = 0;
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    if (uf.unite(u, v)) ++rank;
  }
  return rank;
}

int rank(const AugmentedGraph& g, std::span<const int> edge_ids) {
  UnionFind uf(g.node_count());
  int r = 0;
  for (int e : edge_ids) {
    const auto [u, v] = g.endpoints(e);
    if (uf.unite(u, v)) ++r;
  }
  return r;
}

bool is_basis(const AugmentedGraph& g, std::span<const int> edge_ids) {
  if (static_cast<int>(edge_ids.size()) != g.node_count() - 1) return false;
  return rank(g, edge_ids) == g.node_count() - 1;
}

bool exchange_valid(const AugmentedGraph& g, std::span<const int> basis_edges,
                    int add, int remove) {
  // adjacency of the tree: node -> (neighbor, edge id)
  std::vector<std::vector<std::pair<int, int>>> adj(g.node_count());
  for (int e : basis_edges) {
    const auto [u, v] = g.endpoints(e);
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  }

  // `remove` restores a tree iff it lies on the unique path between the
  // endpoints of `add`.
  const auto [src, dst] = g.endpoints(add);
  std::vector<int> via_edge(g.node_count(), -1);
  std::vector<int> parent(g.node_count(), -1);
  std::deque<int> queue{src};
  parent[src] = src;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == dst) break;
    for (const auto& [v, e] : adj[u]) {
      if (parent[v] >= 0) continue;
      parent[v] = u;
      via_edge[v] = e;
      queue.push_back(v);
    }
  }
  for (int u = dst; u != src && parent[u] >= 0; u = parent[u])
    if (via_edge[u] == remove) return true;
  return false;
}

namespace {

// Rank over the power-system buses of the line part of edge_ids plus one
// probe edge (skipped when it degenerates to a self-loop).
int line_rank_with_probe(const AugmentedGraph& g, std::span<const int> edge_ids,
                         int probe_u, int probe_v) {
  UnionFind uf(g.bus_count());
  int r = 0;
  for (int e : edge_ids) {
    if (g.is_super_edge(e)) continue;
    const auto [u, v] = g.endpoints(e);
    if (uf.unite(u, v)) ++r;
  }
  if (probe_u != probe_v && uf.unite(probe_u, probe_v)) ++r;
  return r;
}

}  // namespace

LinePartition line_partition(const AugmentedGraph& g, std::span<const int> edge_ids) {
  UnionFind uf(g.bus_count());
  LinePartition p;
  p.rank = 0;
  for (int e : edge_ids) {
    if (g.is_super_edge(e)) continue;
    const auto [u, v] = g.endpoints(e);
    if (uf.unite(u, v)) ++p.rank;
  }
  p.labels.resize(g.bus_count());
  for (int b = 0; b < g.bus_count(); ++b) p.labels[b] = uf.find(b);
  return p;
}

int chi_from(const LinePartition& p, const AugmentedGraph& g, int k, int j) {
  return p.labels[g.refs[k]] == p.labels[j] ? 1 : 0;
}

double chi_bar_from(const LinePartition& p, const AugmentedGraph& g, int k, int j) {
  const int reference_rank = g.bus_count() - g.island_count();
  const int probe = (p.labels[g.refs[k]] == p.labels[j]) ? 0 : 1;
  return static_cast<double>(reference_rank + 1 - (p.rank + probe));
}

int chi(const AugmentedGraph& g, std::span<const int> edge_ids, int k, int j) {
  return chi_from(line_partition(g, edge_ids), g, k, j);
}

double chi_bar(const AugmentedGraph& g, std::span<const int> edge_ids, int k, int j) {
  const int reference_rank = g.bus_count() - g.island_count();
  return static_cast<double>(reference_rank + 1 -
                             line_rank_with_probe(g, edge_ids, g.refs[k], j));
}

bool is_hybrid_basis(const AugmentedGraph& g, const HybridBasis& hb) {
  if (hb.lambda.size() > 1) return false;
  if (!is_basis(g, hb.edges)) return false;
  const std::vector<int> loads = g.base.load_ids();
  for (const std::vector<double>& d : hb.lambda) {
    if (d.size() != loads.size()) return false;
    for (size_t i = 0; i < loads.size(); ++i)
      if (d[i] < 0.0 || d[i] > g.base.buses[loads[i]].max_load) return false;
  }
  return true;
}

}  // namespace gridsplit
