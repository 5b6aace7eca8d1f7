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

#ifndef GRIDSPLIT_COHERENCY_HPP
#define GRIDSPLIT_COHERENCY_HPP

#include <span>
#include <utility>
#include <vector>

#include "gridsplit/matroid.hpp"
#include "gridsplit/model.hpp"
#include "gridsplit/numerics.hpp"

namespace gridsplit {

/// Generator-level swing model and the coherence matrix derived from its
/// slow modes. Row order of all matrices is gen_ids order (ascending bus id).
struct CoherencySetup {
  std::vector<int> gen_ids;
  DenseMatrix inertia;    ///< |G| x |G| diagonal
  DenseMatrix stiffness;  ///< |G| x |G|, rows sum to zero
  DenseMatrix coherence;  ///< |G| x m, reference rows are identity rows
};

/// Bus susceptance Laplacian: L_jj = sum of incident line susceptances,
/// L_jj' = -b_jj'.
DenseMatrix susceptance_laplacian(const PowerSystem& sys);

/// Schur complement of the Laplacian onto the `keep` buses, eliminating all
/// others: B_kk - B_ke B_ee^-1 B_ek. Throws SingularInteriorBlock when the
/// eliminated block cannot be factored.
DenseMatrix kron_reduce(const DenseMatrix& b_full, std::span<const int> keep);

/// Builds the diagonal inertia matrix M and the stiffness matrix K over the
/// generators of sys, using the reduced Laplacian from kron_reduce for the
/// effective susceptances. Off-diagonal K_ij = -V_i V_j B_ij cos(d_i - d_j)
/// with B_ij the effective susceptance; K_ii closes each row to zero sum.
/// Throws MissingGeneratorData when a generator lacks positive inertia or
/// voltage.
std::pair<DenseMatrix, DenseMatrix> build_swing_matrix(const PowerSystem& sys,
                                                       const DenseMatrix& b_reduced);

/// Coherence matrix from the m slowest modes of M^-1 K: symmetrize through
/// S = M^-1/2 K M^-1/2, take the m eigenvectors of smallest |eigenvalue|
/// (ties by ascending value then index), map back U = M^-1/2 W, and scale by
/// the inverse of the reference rows: A = U U1^-1. ref_rows are row indices
/// into the generator ordering. Throws SingularU1 when the reference rows
/// are dependent.
DenseMatrix coherence_matrix(const DenseMatrix& m, const DenseMatrix& k,
                             std::span<const int> ref_rows);

/// Full pipeline: Laplacian -> Kron reduction -> swing matrices -> coherence.
CoherencySetup build_coherency(const ValidatedSystem& vsys);

/// Frobenius distance between the coherence matrix and the binary island
/// assignment of the generators induced by the retained forest.
double f1_coherency(const ValidatedSystem& vsys, std::span<const int> retained,
                    const DenseMatrix& a_bar);

/// Supermodular extension of the squared coherency distance to arbitrary
/// edge subsets of the augmented graph. Coincides with f1_coherency^2 on
/// every basis; nonincreasing and supermodular elsewhere.
double f1_bar(const AugmentedGraph& g, std::span<const int> edge_ids,
              const DenseMatrix& a_bar);

}  // namespace gridsplit

#endif  // GRIDSPLIT_COHERENCY_HPP
