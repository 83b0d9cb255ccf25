// Copyright 2026 The csg-check Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csg/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "csg/error.h"
#include "csg/lp.h"

namespace csg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> Unit(int n, int k) {
  std::vector<double> v(n, 0.0);
  v[k] = 1.0;
  return v;
}

void Clean(std::vector<double>& p) {
  double sum = 0.0;
  for (double& v : p) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (sum <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
    return;
  }
  for (double& v : p) v /= sum;
}

// Column player's LP for a positive matrix: max sum(w) s.t. z w <= 1,
// w >= 0. The slack basis is feasible, so no phase 1 pivots on tiny
// entries are needed. Returns y and the value 1/sum(w).
bool ColumnStrategy(const DenseMatrix& z, PivotRule rule, std::vector<double>& y, double& v) {
  const int l = z.rows();
  const int m = z.cols();
  LinearProgram lp;
  lp.num_variables = m;
  lp.objective.assign(m, 1.0);
  for (int i = 0; i < l; ++i) {
    LinearConstraint c;
    c.coefficients.resize(m);
    for (int j = 0; j < m; ++j) c.coefficients[j] = z(i, j);
    c.rhs = 1.0;
    lp.constraints.push_back(std::move(c));
  }
  LpSolution sol;
  try {
    sol = Maximize(lp, rule);
  } catch (const LpError&) {
    return false;
  }
  if (!(sol.value > 0.0)) return false;
  y = sol.x;
  Clean(y);
  v = 1.0 / sol.value;
  return true;
}

bool Verify(const DenseMatrix& z, const std::vector<double>& x, const std::vector<double>& y,
            double v) {
  for (int j = 0; j < z.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < z.rows(); ++i) s += x[i] * z(i, j);
    if (s < v - kVerifyTolerance) return false;
  }
  for (int i = 0; i < z.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < z.cols(); ++j) s += z(i, j) * y[j];
    if (s > v + kVerifyTolerance) return false;
  }
  return true;
}

// z has entries in [1, 2]. The row player's strategy is the column
// strategy of 3 - z^T, which again has entries in [1, 2].
bool SolveSlackForm(const DenseMatrix& z, PivotRule rule, MatrixGameSolution& out) {
  const int l = z.rows();
  const int m = z.cols();
  DenseMatrix flipped(m, l);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) flipped(j, i) = 3.0 - z(i, j);
  }
  std::vector<double> x;
  std::vector<double> y;
  double v = 0.0;
  double w = 0.0;
  if (!ColumnStrategy(z, rule, y, v) || !ColumnStrategy(flipped, rule, x, w)) return false;
  if (std::abs(v - (3.0 - w)) > kVerifyTolerance) return false;
  if (!Verify(z, x, y, v)) return false;
  out.value = v;
  out.row_strategy = std::move(x);
  out.col_strategy = std::move(y);
  return true;
}

// z has entries in [1, 2]. Returns false if the minimax check fails.
bool SolveNormalized(const DenseMatrix& z, PivotRule rule, MatrixGameSolution& out) {
  const int l = z.rows();
  const int m = z.cols();

  LinearProgram primal;
  primal.num_variables = l + 1;
  primal.objective.assign(l + 1, 0.0);
  primal.objective[l] = 1.0;
  for (int j = 0; j < m; ++j) {
    LinearConstraint c;
    c.coefficients.assign(l + 1, 0.0);
    for (int i = 0; i < l; ++i) c.coefficients[i] = z(i, j);
    c.coefficients[l] = -1.0;
    c.sense = ConstraintSense::kGreaterEqual;
    primal.constraints.push_back(std::move(c));
  }
  LinearConstraint sum_x;
  sum_x.coefficients.assign(l + 1, 1.0);
  sum_x.coefficients[l] = 0.0;
  sum_x.sense = ConstraintSense::kEqual;
  sum_x.rhs = 1.0;
  primal.constraints.push_back(std::move(sum_x));

  LinearProgram dual;
  dual.num_variables = m + 1;
  dual.objective.assign(m + 1, 0.0);
  dual.objective[m] = -1.0;
  for (int i = 0; i < l; ++i) {
    LinearConstraint c;
    c.coefficients.assign(m + 1, 0.0);
    for (int j = 0; j < m; ++j) c.coefficients[j] = z(i, j);
    c.coefficients[m] = -1.0;
    c.sense = ConstraintSense::kLessEqual;
    dual.constraints.push_back(std::move(c));
  }
  LinearConstraint sum_y;
  sum_y.coefficients.assign(m + 1, 1.0);
  sum_y.coefficients[m] = 0.0;
  sum_y.sense = ConstraintSense::kEqual;
  sum_y.rhs = 1.0;
  dual.constraints.push_back(std::move(sum_y));

  LpSolution p;
  LpSolution d;
  try {
    p = Maximize(primal, rule);
    d = Maximize(dual, rule);
  } catch (const LpError&) {
    return false;
  }

  std::vector<double> x(p.x.begin(), p.x.begin() + l);
  std::vector<double> y(d.x.begin(), d.x.begin() + m);
  Clean(x);
  Clean(y);
  const double v = p.value;
  const double w = -d.value;
  if (std::abs(v - w) > kVerifyTolerance) return false;
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int i = 0; i < l; ++i) s += x[i] * z(i, j);
    if (s < v - kVerifyTolerance) return false;
  }
  for (int i = 0; i < l; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += z(i, j) * y[j];
    if (s > v + kVerifyTolerance) return false;
  }
  out.value = v;
  out.row_strategy = std::move(x);
  out.col_strategy = std::move(y);
  return true;
}

MatrixGameSolution SolveFinite(const DenseMatrix& z) {
  const int l = z.rows();
  const int m = z.cols();
  MatrixGameSolution sol;
  if (l == 1) {
    int best = 0;
    for (int j = 1; j < m; ++j) {
      if (z(0, j) < z(0, best)) best = j;
    }
    sol.value = z(0, best);
    sol.row_strategy = {1.0};
    sol.col_strategy = Unit(m, best);
    return sol;
  }
  if (m == 1) {
    int best = 0;
    for (int i = 1; i < l; ++i) {
      if (z(i, 0) > z(best, 0)) best = i;
    }
    sol.value = z(best, 0);
    sol.row_strategy = Unit(l, best);
    sol.col_strategy = {1.0};
    return sol;
  }
  double lo = z(0, 0);
  double hi = z(0, 0);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) {
      lo = std::min(lo, z(i, j));
      hi = std::max(hi, z(i, j));
    }
  }
  if (hi - lo <= 1e-300) {
    sol.value = lo;
    sol.row_strategy = Unit(l, 0);
    sol.col_strategy = Unit(m, 0);
    return sol;
  }
  const double range = hi - lo;
  DenseMatrix n(l, m);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) n(i, j) = (z(i, j) - lo) / range + 1.0;
  }
  if (!SolveSlackForm(n, PivotRule::kDantzig, sol) &&
      !SolveSlackForm(n, PivotRule::kBland, sol) &&
      !SolveNormalized(n, PivotRule::kDantzig, sol) &&
      !SolveNormalized(n, PivotRule::kBland, sol)) {
    throw NumericalError("matrix game LP failed the minimax check after the Bland fallback");
  }
  sol.value = (sol.value - 1.0) * range + lo;
  return sol;
}

}  // namespace

MatrixGameSolution SolveMatrixGame(const DenseMatrix& z) {
  const int l = z.rows();
  const int m = z.cols();
  if (l == 0 || m == 0) throw NumericalError("matrix game with no actions");
  bool pos_inf = false;
  bool neg_inf = false;
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) {
      const double v = z(i, j);
      if (std::isnan(v)) throw NumericalError("NaN entry in matrix game");
      if (v == kInf) pos_inf = true;
      if (v == -kInf) neg_inf = true;
    }
  }
  if (pos_inf && neg_inf) {
    throw NumericalError("matrix game with both +inf and -inf entries");
  }
  if (!pos_inf && !neg_inf) return SolveFinite(z);

  MatrixGameSolution sol;
  if (pos_inf) {
    // The column player must avoid every column that meets +inf.
    std::vector<int> keep;
    for (int j = 0; j < m; ++j) {
      bool finite = true;
      for (int i = 0; i < l; ++i) finite = finite && z(i, j) != kInf;
      if (finite) keep.push_back(j);
    }
    if (keep.empty()) {
      sol.value = kInf;
      sol.row_strategy = Unit(l, 0);
      sol.col_strategy = Unit(m, 0);
      return sol;
    }
    DenseMatrix sub(l, static_cast<int>(keep.size()));
    for (int i = 0; i < l; ++i) {
      for (size_t k = 0; k < keep.size(); ++k) sub(i, static_cast<int>(k)) = z(i, keep[k]);
    }
    MatrixGameSolution s = SolveFinite(sub);
    sol.value = s.value;
    sol.row_strategy = std::move(s.row_strategy);
    sol.col_strategy.assign(m, 0.0);
    for (size_t k = 0; k < keep.size(); ++k) sol.col_strategy[keep[k]] = s.col_strategy[k];
    return sol;
  }
  std::vector<int> keep;
  for (int i = 0; i < l; ++i) {
    bool finite = true;
    for (int j = 0; j < m; ++j) finite = finite && z(i, j) != -kInf;
    if (finite) keep.push_back(i);
  }
  if (keep.empty()) {
    sol.value = -kInf;
    sol.row_strategy = Unit(l, 0);
    sol.col_strategy = Unit(m, 0);
    return sol;
  }
  DenseMatrix sub(static_cast<int>(keep.size()), m);
  for (size_t k = 0; k < keep.size(); ++k) {
    for (int j = 0; j < m; ++j) sub(static_cast<int>(k), j) = z(keep[k], j);
  }
  MatrixGameSolution s = SolveFinite(sub);
  sol.value = s.value;
  sol.col_strategy = std::move(s.col_strategy);
  sol.row_strategy.assign(l, 0.0);
  for (size_t k = 0; k < keep.size(); ++k) sol.row_strategy[keep[k]] = s.row_strategy[k];
  return sol;
}

MatrixGameSolution SolveMatrixGameMin(const DenseMatrix& z) {
  MatrixGameSolution s = SolveMatrixGame(z.Negated());
  s.value = -s.value;
  return s;
}

}  // namespace csg
