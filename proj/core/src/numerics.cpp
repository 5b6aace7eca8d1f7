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

#include "gridsplit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gridsplit/error.hpp"

namespace gridsplit {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kFeasTol = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::vector<double> solve_linear(DenseMatrix a, std::vector<double> b) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n)
    raise(ErrorCode::SingularMatrix, "solve_linear requires a square system");

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < kPivotTol)
      raise(ErrorCode::SingularMatrix,
            "pivot " + std::to_string(col) + " below tolerance");
    if (pivot != col) {
      for (int c = col; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      std::swap(b[pivot], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double factor = a(r, col) / a(col, col);
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
      b[r] -= factor * b[col];
    }
  }

  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a(r, c) * x[c];
    x[r] = acc / a(r, r);
  }
  return x;
}

EigenDecomposition sym_eigen(const DenseMatrix& s) {
  const int n = s.rows();
  if (s.cols() != n) raise(ErrorCode::NotSymmetric, "matrix is not square");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > 1e-10)
        raise(ErrorCode::NotSymmetric,
              "entry (" + std::to_string(i) + "," + std::to_string(j) + ") asymmetric");

  DenseMatrix a = s;
  DenseMatrix v = DenseMatrix::identity(n);

  auto off_norm = [&]() {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) acc += a(i, j) * a(i, j);
    return std::sqrt(acc);
  };

  int sweeps = 0;
  while (off_norm() >= 1e-10) {
    if (++sweeps > 100) raise(ErrorCode::NoConvergence, "Jacobi iteration exceeded 100 sweeps");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (a(i, i) != a(j, j)) return a(i, i) < a(j, j);
    return i < j;
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

namespace {

// Standard-form program: min c'y  s.t.  A y = b, y >= 0, built from an
// LpProblem by shifting lower bounds to zero and adding a slack row per
// finite upper bound. Keeps enough bookkeeping to undo the shift.
struct StandardForm {
  DenseMatrix a;
  std::vector<double> b;
  std::vector<double> c;
  int original_vars = 0;
};

StandardForm to_standard_form(const LpProblem& p) {
  const int n = p.var_count();
  const int m = p.constraint_count();

  int upper_rows = 0;
  for (int i = 0; i < n; ++i)
    if (std::isfinite(p.upper[i])) ++upper_rows;

  StandardForm sf;
  sf.original_vars = n;
  const int rows = m + upper_rows;
  const int cols = n + upper_rows;
  sf.a = DenseMatrix(rows, cols);
  sf.b.assign(rows, 0.0);
  sf.c.assign(cols, 0.0);

  for (int i = 0; i < n; ++i) sf.c[i] = p.objective[i];

  for (int r = 0; r < m; ++r) {
    double shift = 0.0;
    for (int i = 0; i < n; ++i) {
      sf.a(r, i) = p.a_eq(r, i);
      shift += p.a_eq(r, i) * p.lower[i];
    }
    sf.b[r] = p.b_eq[r] - shift;
  }

  int slack = 0;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(p.upper[i])) continue;
    const int r = m + slack;
    sf.a(r, i) = 1.0;
    sf.a(r, n + slack) = 1.0;
    sf.b[r] = p.upper[i] - p.lower[i];
    ++slack;
  }
  return sf;
}

// One simplex phase over the tableau with Bland's rule; basis holds the
// basic column per row. Columns [0, scan_cols) may enter; rhs_col is the
// right-hand-side column. Returns false when the phase detects
// unboundedness.
bool simplex_pivot_loop(DenseMatrix& t, std::vector<int>& basis, int scan_cols,
                        int rhs_col, long long max_pivots, long long& pivots) {
  const int rows = t.rows() - 1;  // last row is the objective
  constexpr double kEligibleTol = 1e-9;
  for (;;) {
    int entering = -1;
    for (int j = 0; j < scan_cols; ++j) {
      if (t(rows, j) < -kFeasTol) {
        entering = j;  // Bland: smallest index with negative reduced cost
        break;
      }
    }
    if (entering < 0) return true;

    int leaving = -1;
    double best_ratio = kInf;
    for (int r = 0; r < rows; ++r) {
      if (t(r, entering) > kEligibleTol) {
        const double ratio = t(r, rhs_col) / t(r, entering);
        if (ratio < best_ratio - 1e-9) {
          best_ratio = ratio;
          leaving = r;
        } else if (ratio < best_ratio + 1e-9 && leaving >= 0 &&
                   basis[r] < basis[leaving]) {
          leaving = r;  // Bland tie-break on the basic variable index
        }
      }
    }
    if (leaving < 0) return false;

    if (++pivots > max_pivots)
      raise(ErrorCode::MaxIterations, "simplex exceeded its pivot budget");

    const double pivot = t(leaving, entering);
    for (int j = 0; j <= rhs_col; ++j) t(leaving, j) /= pivot;
    for (int r = 0; r <= rows; ++r) {
      if (r == leaving) continue;
      const double factor = t(r, entering);
      if (factor == 0.0) continue;
      for (int j = 0; j <= rhs_col; ++j) t(r, j) -= factor * t(leaving, j);
    }
    basis[leaving] = entering;
  }
}

}  // namespace

LpSolution lp_solve(const LpProblem& p) {
  const int n = p.var_count();
  if (p.a_eq.rows() != p.constraint_count() || p.a_eq.cols() != n ||
      static_cast<int>(p.lower.size()) != n || static_cast<int>(p.upper.size()) != n)
    raise(ErrorCode::LpFailure, "inconsistent program dimensions");
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(p.lower[i]))
      raise(ErrorCode::LpFailure, "lower bounds must be finite");
    if (p.lower[i] > p.upper[i])
      raise(ErrorCode::LpFailure, "empty bound interval");
  }

  StandardForm sf = to_standard_form(p);
  const int rows = static_cast<int>(sf.b.size());
  const int cols = sf.a.cols();
  const long long max_pivots =
      10LL * static_cast<long long>(cols + rows) * static_cast<long long>(cols + rows);
  long long pivots = 0;

  for (int r = 0; r < rows; ++r) {
    if (sf.b[r] < 0.0) {
      sf.b[r] = -sf.b[r];
      for (int j = 0; j < cols; ++j) sf.a(r, j) = -sf.a(r, j);
    }
  }

  // Phase 1: artificial columns cols..cols+rows-1, objective = their sum.
  const int wide = cols + rows;
  DenseMatrix t(rows + 1, wide + 1);
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < cols; ++j) t(r, j) = sf.a(r, j);
    t(r, cols + r) = 1.0;
    t(r, wide) = sf.b[r];
    basis[r] = cols + r;
  }
  for (int j = 0; j < wide; ++j) {
    double acc = 0.0;
    for (int r = 0; r < rows; ++r) acc += t(r, j);
    t(rows, j) = (j >= cols ? 0.0 : -acc);
  }
  {
    double acc = 0.0;
    for (int r = 0; r < rows; ++r) acc += t(r, wide);
    t(rows, wide) = -acc;
  }

  if (!simplex_pivot_loop(t, basis, wide, wide, max_pivots, pivots))
    raise(ErrorCode::LpFailure, "phase-1 program unbounded");
  if (-t(rows, wide) > kFeasTol) return {LpStatus::Infeasible, {}, 0.0};

  // Drive leftover artificials out of the basis; rows that cannot pivot are
  // redundant and get zeroed.
  for (int r = 0; r < rows; ++r) {
    if (basis[r] < cols) continue;
    int entering = -1;
    for (int j = 0; j < cols; ++j) {
      if (std::abs(t(r, j)) > kPivotTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) {
      for (int j = 0; j <= wide; ++j) t(r, j) = 0.0;
      continue;
    }
    const double pivot = t(r, entering);
    for (int j = 0; j <= wide; ++j) t(r, j) /= pivot;
    for (int rr = 0; rr <= rows; ++rr) {
      if (rr == r) continue;
      const double factor = t(rr, entering);
      if (factor == 0.0) continue;
      for (int j = 0; j <= wide; ++j) t(rr, j) -= factor * t(r, j);
    }
    basis[r] = entering;
  }

  // Phase 2: rebuild the objective row, keep artificial columns locked out.
  for (int j = 0; j < wide; ++j) t(rows, j) = (j < cols ? sf.c[j] : 0.0);
  t(rows, wide) = 0.0;
  for (int r = 0; r < rows; ++r) {
    if (basis[r] >= cols) continue;
    const double factor = t(rows, basis[r]);
    if (factor == 0.0) continue;
    for (int j = 0; j <= wide; ++j) t(rows, j) -= factor * t(r, j);
  }
  for (int j = cols; j < wide; ++j)
    for (int r = 0; r <= rows; ++r) t(r, j) = 0.0;

  if (!simplex_pivot_loop(t, basis, cols, wide, max_pivots, pivots))
    return {LpStatus::Unbounded, {}, 0.0};

  std::vector<double> y(cols, 0.0);
  for (int r = 0; r < rows; ++r)
    if (basis[r] < cols) y[basis[r]] = t(r, wide);

  LpSolution out;
  out.status = LpStatus::Optimal;
  out.x.resize(n);
  out.objective_value = 0.0;
  for (int i = 0; i < n; ++i) {
    out.x[i] = y[i] + p.lower[i];
    out.objective_value += p.objective[i] * out.x[i];
  }
  return out;
}

}  // namespace gridsplit
