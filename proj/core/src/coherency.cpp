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

#include "gridsplit/coherency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gridsplit/error.hpp"

namespace gridsplit {

DenseMatrix susceptance_laplacian(const PowerSystem& sys) {
  DenseMatrix l(sys.bus_count(), sys.bus_count());
  for (const Line& line : sys.lines) {
    l(line.from, line.from) += line.susceptance;
    l(line.to, line.to) += line.susceptance;
    l(line.from, line.to) -= line.susceptance;
    l(line.to, line.from) -= line.susceptance;
  }
  return l;
}

DenseMatrix kron_reduce(const DenseMatrix& b_full, std::span<const int> keep) {
  const int n = b_full.rows();
  std::vector<char> kept(n, 0);
  for (int i : keep) kept[i] = 1;
  std::vector<int> gone;
  for (int i = 0; i < n; ++i)
    if (!kept[i]) gone.push_back(i);

  const int nk = static_cast<int>(keep.size());
  const int ne = static_cast<int>(gone.size());
  if (ne == 0) {
    DenseMatrix out(nk, nk);
    for (int i = 0; i < nk; ++i)
      for (int j = 0; j < nk; ++j) out(i, j) = b_full(keep[i], keep[j]);
    return out;
  }

  // Eliminate the interior block against the interior-to-kept coupling:
  // X = B_ee^-1 B_ek via one augmented elimination.
  DenseMatrix a(ne, ne);
  DenseMatrix rhs(ne, nk);
  for (int i = 0; i < ne; ++i) {
    for (int j = 0; j < ne; ++j) a(i, j) = b_full(gone[i], gone[j]);
    for (int j = 0; j < nk; ++j) rhs(i, j) = b_full(gone[i], keep[j]);
  }
  for (int col = 0; col < ne; ++col) {
    int pivot = col;
    for (int r = col + 1; r < ne; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < 1e-12)
      raise(ErrorCode::SingularInteriorBlock,
            "eliminated block is singular at pivot " + std::to_string(col));
    if (pivot != col) {
      for (int c = 0; c < ne; ++c) std::swap(a(pivot, c), a(col, c));
      for (int c = 0; c < nk; ++c) std::swap(rhs(pivot, c), rhs(col, c));
    }
    for (int r = col + 1; r < ne; ++r) {
      const double factor = a(r, col) / a(col, col);
      if (factor == 0.0) continue;
      for (int c = col; c < ne; ++c) a(r, c) -= factor * a(col, c);
      for (int c = 0; c < nk; ++c) rhs(r, c) -= factor * rhs(col, c);
    }
  }
  DenseMatrix x(ne, nk);
  for (int c = 0; c < nk; ++c) {
    for (int r = ne - 1; r >= 0; --r) {
      double acc = rhs(r, c);
      for (int k = r + 1; k < ne; ++k) acc -= a(r, k) * x(k, c);
      x(r, c) = acc / a(r, r);
    }
  }

  DenseMatrix out(nk, nk);
  for (int i = 0; i < nk; ++i)
    for (int j = 0; j < nk; ++j) {
      double acc = b_full(keep[i], keep[j]);
      for (int k = 0; k < ne; ++k) acc -= b_full(keep[i], gone[k]) * x(k, j);
      out(i, j) = acc;
    }
  return out;
}

std::pair<DenseMatrix, DenseMatrix> build_swing_matrix(const PowerSystem& sys,
                                                       const DenseMatrix& b_reduced) {
  const std::vector<int> gens = sys.generator_ids();
  const int g = static_cast<int>(gens.size());
  if (b_reduced.rows() != g || b_reduced.cols() != g)
    raise(ErrorCode::MissingGeneratorData, "reduced susceptance size mismatch");

  DenseMatrix m(g, g);
  DenseMatrix k(g, g);
  for (int i = 0; i < g; ++i) {
    const Bus& bus = sys.buses[gens[i]];
    if (bus.inertia <= 0.0 || bus.voltage <= 0.0)
      raise(ErrorCode::MissingGeneratorData,
            "generator bus " + std::to_string(bus.id) + " lacks inertia or voltage");
    m(i, i) = bus.inertia;
  }
  for (int i = 0; i < g; ++i) {
    double row = 0.0;
    for (int j = 0; j < g; ++j) {
      if (i == j) continue;
      const Bus& bi = sys.buses[gens[i]];
      const Bus& bj = sys.buses[gens[j]];
      // Effective susceptance between generators is the negated off-diagonal
      // of the reduced Laplacian.
      const double b_eff = -b_reduced(i, j);
      k(i, j) = -bi.voltage * bj.voltage * b_eff *
                std::cos(bi.rotor_angle - bj.rotor_angle);
      row += k(i, j);
    }
    k(i, i) = -row;
  }
  return {m, k};
}

DenseMatrix coherence_matrix(const DenseMatrix& m, const DenseMatrix& k,
                             std::span<const int> ref_rows) {
  const int g = k.rows();
  const int modes = static_cast<int>(ref_rows.size());

  std::vector<double> inv_sqrt_m(g);
  for (int i = 0; i < g; ++i) inv_sqrt_m[i] = 1.0 / std::sqrt(m(i, i));

  DenseMatrix s(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) s(i, j) = inv_sqrt_m[i] * k(i, j) * inv_sqrt_m[j];
  // Guard against rounding asymmetry before the eigensolve.
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j) {
      const double avg = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = s(j, i) = avg;
    }

  const EigenDecomposition eig = sym_eigen(s);

  std::vector<int> order(g);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(eig.values[a]);
    const double mb = std::abs(eig.values[b]);
    if (ma != mb) return ma < mb;
    if (eig.values[a] != eig.values[b]) return eig.values[a] < eig.values[b];
    return a < b;
  });

  DenseMatrix u(g, modes);
  for (int c = 0; c < modes; ++c)
    for (int r = 0; r < g; ++r) u(r, c) = inv_sqrt_m[r] * eig.vectors(r, order[c]);

  DenseMatrix u1(modes, modes);
  for (int r = 0; r < modes; ++r)
    for (int c = 0; c < modes; ++c) u1(r, c) = u(ref_rows[r], c);

  // Invert the reference block column by column.
  DenseMatrix u1_inv(modes, modes);
  for (int c = 0; c < modes; ++c) {
    std::vector<double> e(modes, 0.0);
    e[c] = 1.0;
    std::vector<double> col;
    try {
      col = solve_linear(u1, e);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::SingularMatrix)
        raise(ErrorCode::SingularU1, "reference generator rows are dependent");
      throw;
    }
    for (int r = 0; r < modes; ++r) u1_inv(r, c) = col[r];
  }
  return u * u1_inv;
}

CoherencySetup build_coherency(const ValidatedSystem& vsys) {
  CoherencySetup setup;
  setup.gen_ids = vsys.sys.generator_ids();

  const DenseMatrix reduced =
      kron_reduce(susceptance_laplacian(vsys.sys), setup.gen_ids);
  auto [m, k] = build_swing_matrix(vsys.sys, reduced);

  std::vector<int> ref_rows;
  for (int r : vsys.refs) {
    const auto it = std::lower_bound(setup.gen_ids.begin(), setup.gen_ids.end(), r);
    ref_rows.push_back(static_cast<int>(it - setup.gen_ids.begin()));
  }
  setup.coherence = coherence_matrix(m, k, ref_rows);
  setup.inertia = std::move(m);
  setup.stiffness = std::move(k);
  return setup;
}

double f1_coherency(const ValidatedSystem& vsys, std::span<const int> retained,
                    const DenseMatrix& a_bar) {
  const std::vector<int> labels = component_labels(vsys.sys, retained);
  const std::vector<int> gens = vsys.sys.generator_ids();
  const int m = vsys.island_count();

  double acc = 0.0;
  for (size_t j = 0; j < gens.size(); ++j) {
    for (int k = 0; k < m; ++k) {
      const double a = (labels[gens[j]] == labels[vsys.refs[k]]) ? 1.0 : 0.0;
      const double diff = a_bar(static_cast<int>(j), k) - a;
      acc += diff * diff;
    }
  }
  return std::sqrt(acc);
}

double f1_bar(const AugmentedGraph& g, std::span<const int> edge_ids,
              const DenseMatrix& a_bar) {
  const std::vector<int> gens = g.base.generator_ids();
  const int m = g.island_count();
  const LinePartition part = line_partition(g, edge_ids);

  // The relaxed membership for confidently-assigned entries flows through
  // the complement sum so the whole term stays supermodular; the squared
  // constant makes the value match the squared Frobenius distance exactly
  // on bases.
  double acc = 0.0;
  for (size_t j = 0; j < gens.size(); ++j) {
    for (int k = 0; k < m; ++k) {
      const double a = a_bar(static_cast<int>(j), k);
      double omega;
      if (a <= 0.5) {
        omega = chi_bar_from(part, g, k, gens[j]);
      } else {
        double others = 0.0;
        for (int kk = 0; kk < m; ++kk)
          if (kk != k) others += chi_bar_from(part, g, kk, gens[j]);
        omega = 1.0 - others;
      }
      acc += a * a + (1.0 - 2.0 * a) * omega;
    }
  }
  return acc;
}

}  // namespace gridsplit
