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

#ifndef GRIDSPLIT_MATROID_HPP
#define GRIDSPLIT_MATROID_HPP

#include <span>
#include <utility>
#include <vector>

#include "gridsplit/model.hpp"

namespace gridsplit {

/// The power graph plus a virtual supernode joined to every reference
/// generator. Edge ids 0..L-1 are the power-system lines; ids L..L+m-1 are
/// the supernode edges (a, r_k), which are pinned inside every basis and
/// never offered to the exchange search.
struct AugmentedGraph {
  PowerSystem base;
  std::vector<int> refs;

  int bus_count() const { return base.bus_count(); }
  int node_count() const { return base.bus_count() + 1; }
  int supernode() const { return base.bus_count(); }
  int line_count() const { return base.line_count(); }
  int island_count() const { return static_cast<int>(refs.size()); }
  int edge_count() const { return line_count() + island_count(); }

  bool is_super_edge(int edge) const { return edge >= line_count(); }
  std::pair<int, int> endpoints(int edge) const;

  /// Edge ids L..L+m-1, ascending.
  std::vector<int> super_edge_ids() const;
};

AugmentedGraph augment(const ValidatedSystem& vsys);

/// Graphic-matroid rank: size of a maximum spanning forest of the edge
/// multiset. Self-loops contribute nothing.
int graphic_rank(int node_count, std::span<const std::pair<int, int>> edges);

/// Rank of an edge-id subset of the augmented graph over its full node set.
int rank(const AugmentedGraph& g, std::span<const int> edge_ids);

/// True iff edge_ids is a spanning tree of the augmented graph.
bool is_basis(const AugmentedGraph& g, std::span<const int> edge_ids);

/// True iff basis_edges u {add} \ {remove} is again a basis; decided by
/// locating `remove` on the unique cycle closed by `add`. Requires
/// basis_edges to be a basis, add a non-member line, remove a member line
/// (never a supernode edge).
bool exchange_valid(const AugmentedGraph& g, std::span<const int> basis_edges,
                    int add, int remove);

/// Island-membership indicator: 1 iff bus j is connected to reference
/// generator r_k (k is 0-based) using only the power-system lines of
/// edge_ids. Supernode edges in edge_ids are ignored.
int chi(const AugmentedGraph& g, std::span<const int> edge_ids, int k, int j);

/// Relaxation of chi to arbitrary edge subsets: (n - m + 1) minus the rank
/// of the power-graph part of edge_ids with the probe edge (r_k, j) added,
/// computed over the n power-system buses. The constant makes the value
/// coincide with chi on every basis; being a constant minus a rank, it is
/// nonincreasing and supermodular over subsets.
double chi_bar(const AugmentedGraph& g, std::span<const int> edge_ids, int k, int j);

/// Connectivity snapshot of the line part of an edge subset over the power
/// buses, with its rank. Evaluating chi / chi_bar against a snapshot avoids
/// rebuilding the union-find once per (island, bus) probe.
struct LinePartition {
  std::vector<int> labels;  ///< per-bus component label
  int rank = 0;
};

LinePartition line_partition(const AugmentedGraph& g, std::span<const int> edge_ids);
int chi_from(const LinePartition& p, const AugmentedGraph& g, int k, int j);
double chi_bar_from(const LinePartition& p, const AugmentedGraph& g, int k, int j);

/// Basis of the hybrid (edge set, load set) ground set: an edge basis
/// paired with at most one load vector within bounds.
struct HybridBasis {
  std::vector<int> edges;
  std::vector<std::vector<double>> lambda;  ///< each sized like load_ids()
};

bool is_hybrid_basis(const AugmentedGraph& g, const HybridBasis& hb);

}  // namespace gridsplit

#endif  // GRIDSPLIT_MATROID_HPP
