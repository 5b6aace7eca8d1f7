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

#ifndef GRIDSPLIT_NUMERICS_HPP
#define GRIDSPLIT_NUMERICS_HPP

#include <vector>

namespace gridsplit {

/// Small dense row-major matrix. Sized for generator-level and LP-tableau
/// work; no sparse storage.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  static DenseMatrix identity(int n);

  double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  DenseMatrix transposed() const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Throws SingularMatrix when the best available pivot drops below 1e-12.
std::vector<double> solve_linear(DenseMatrix a, std::vector<double> b);

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  DenseMatrix vectors;         ///< orthonormal columns, vectors.col(i) <-> values[i]
};

/// Cyclic Jacobi iteration for a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm falls below 1e-10; throws NotSymmetric when
/// the input is asymmetric beyond 1e-10 and NoConvergence after 100 sweeps.
EigenDecomposition sym_eigen(const DenseMatrix& s);

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// min c'x  s.t.  A x = b,  lower <= x <= upper.
/// Lower bounds must be finite; upper bounds may be +infinity.
struct LpProblem {
  std::vector<double> objective;
  DenseMatrix a_eq;
  std::vector<double> b_eq;
  std::vector<double> lower;
  std::vector<double> upper;

  int var_count() const { return static_cast<int>(objective.size()); }
  int constraint_count() const { return static_cast<int>(b_eq.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective_value = 0.0;
};

/// Two-phase primal simplex with Bland's rule on the standard form obtained
/// by shifting lower bounds to zero and adding one slack row per finite
/// upper bound. Returns a basic optimal point, or a correct Infeasible /
/// Unbounded status. Throws MaxIterations after 10*(vars+constraints)^2
/// pivots rather than returning a silently wrong answer.
LpSolution lp_solve(const LpProblem& p);

}  // namespace gridsplit

#endif  // GRIDSPLIT_NUMERICS_HPP
