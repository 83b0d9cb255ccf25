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

#include "csg/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace csg {
namespace {

// Dense simplex tableau: m constraint rows followed by the reduced-cost row.
// The last column holds the right-hand side.
class Tableau {
 public:
  Tableau(int m, int n) : m_(m), n_(n), data_(static_cast<size_t>(m + 1) * (n + 1), 0.0) {}

  double& at(int i, int j) { return data_[static_cast<size_t>(i) * (n_ + 1) + j]; }
  double at(int i, int j) const { return data_[static_cast<size_t>(i) * (n_ + 1) + j]; }
  double& rhs(int i) { return at(i, n_); }
  double& cost(int j) { return at(m_, j); }

  int m() const { return m_; }
  int n() const { return n_; }

  void Pivot(int r, int e) {
    const double p = at(r, e);
    for (int j = 0; j <= n_; ++j) at(r, j) /= p;
    at(r, e) = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      for (int j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, e) = 0.0;
    }
  }

  void RemoveRow(int r) {
    for (int i = r; i < m_; ++i) {
      for (int j = 0; j <= n_; ++j) at(i, j) = at(i + 1, j);
    }
    --m_;
    data_.resize(static_cast<size_t>(m_ + 1) * (n_ + 1));
  }

 private:
  int m_;
  int n_;
  std::vector<double> data_;
};

enum class SimplexStatus { kOptimal, kUnbounded, kStalled };

SimplexStatus Run(Tableau& t, std::vector<int>& basis, const std::vector<bool>& allowed,
                  PivotRule rule, int& pivots) {
  bool bland = rule == PivotRule::kBland;
  const int limit = 50 * (t.m() + t.n()) + 1000;
  for (int iter = 0; iter < limit; ++iter) {
    int e = -1;
    double best = kPivotTolerance;
    for (int j = 0; j < t.n(); ++j) {
      if (!allowed[j]) continue;
      const double d = t.cost(j);
      if (d > best) {
        e = j;
        if (bland) break;
        best = d;
      }
    }
    if (e < 0) return SimplexStatus::kOptimal;

    int r = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.m(); ++i) {
      const double a = t.at(i, e);
      if (a <= kPivotTolerance) continue;
      const double q = t.rhs(i) / a;
      if (r < 0 || q < ratio - 1e-12) {
        r = i;
        ratio = q;
      } else if (q <= ratio + 1e-12 && basis[i] < basis[r]) {
        r = i;
        ratio = std::min(ratio, q);
      }
    }
    if (r < 0) return SimplexStatus::kUnbounded;
    if (ratio <= 1e-12) bland = true;
    t.Pivot(r, e);
    basis[r] = e;
    ++pivots;
  }
  return SimplexStatus::kStalled;
}

}  // namespace

LpSolution Maximize(const LinearProgram& lp, PivotRule rule) {
  const int nv = lp.num_variables;
  if (static_cast<int>(lp.objective.size()) != nv) {
    throw LpError(LpError::Kind::kNumerical, "objective size does not match variable count");
  }
  auto is_free = [&](int j) {
    return j < static_cast<int>(lp.free_variable.size()) && lp.free_variable[j];
  };

  // Structural columns: x_j, plus a negative part for free variables.
  std::vector<int> pos(nv), neg(nv, -1);
  int ncols = 0;
  for (int j = 0; j < nv; ++j) {
    pos[j] = ncols++;
    if (is_free(j)) neg[j] = ncols++;
  }
  const int structural = ncols;

  const int m = static_cast<int>(lp.constraints.size());
  std::vector<double> sign(m, 1.0);
  std::vector<ConstraintSense> sense(m);
  int slack_count = 0;
  int art_count = 0;
  for (int i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    if (static_cast<int>(c.coefficients.size()) != nv) {
      throw LpError(LpError::Kind::kNumerical, "constraint size does not match variable count");
    }
    sense[i] = c.sense;
    if (c.rhs < 0) {
      sign[i] = -1.0;
      if (c.sense == ConstraintSense::kLessEqual) sense[i] = ConstraintSense::kGreaterEqual;
      else if (c.sense == ConstraintSense::kGreaterEqual) sense[i] = ConstraintSense::kLessEqual;
    }
    if (sense[i] != ConstraintSense::kEqual) ++slack_count;
    if (sense[i] != ConstraintSense::kLessEqual) ++art_count;
  }
  const int first_art = structural + slack_count;
  const int width = first_art + art_count;

  Tableau t(m, width);
  std::vector<int> basis(m, -1);
  int next_slack = structural;
  int next_art = first_art;
  double bscale = 1.0;
  for (int i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    for (int j = 0; j < nv; ++j) {
      t.at(i, pos[j]) = sign[i] * c.coefficients[j];
      if (neg[j] >= 0) t.at(i, neg[j]) = -sign[i] * c.coefficients[j];
    }
    t.rhs(i) = sign[i] * c.rhs;
    bscale = std::max(bscale, std::abs(c.rhs));
    if (sense[i] == ConstraintSense::kLessEqual) {
      t.at(i, next_slack) = 1.0;
      basis[i] = next_slack++;
    } else {
      if (sense[i] == ConstraintSense::kGreaterEqual) t.at(i, next_slack++) = -1.0;
      t.at(i, next_art) = 1.0;
      basis[i] = next_art++;
    }
  }

  LpSolution sol;
  std::vector<bool> allowed(width, true);

  if (art_count > 0) {
    for (int j = 0; j <= width; ++j) t.cost(j) = 0.0;
    for (int j = first_art; j < width; ++j) t.cost(j) = -1.0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] < first_art) continue;
      for (int j = 0; j <= width; ++j) t.cost(j) += t.at(i, j);
    }
    const SimplexStatus st = Run(t, basis, allowed, rule, sol.pivots);
    if (st == SimplexStatus::kStalled) {
      throw LpError(LpError::Kind::kNumerical, "simplex did not terminate in phase 1");
    }
    if (t.rhs(t.m()) > 1e-9 * bscale) {
      throw LpError(LpError::Kind::kInfeasible, "linear program is infeasible");
    }
    // Drive artificial variables out of the basis; drop redundant rows.
    for (int i = 0; i < t.m();) {
      if (basis[i] < first_art) {
        ++i;
        continue;
      }
      int e = -1;
      for (int j = 0; j < first_art; ++j) {
        if (std::abs(t.at(i, j)) > kPivotTolerance) {
          e = j;
          break;
        }
      }
      if (e >= 0) {
        t.Pivot(i, e);
        basis[i] = e;
        ++sol.pivots;
        ++i;
      } else {
        t.RemoveRow(i);
        basis.erase(basis.begin() + i);
      }
    }
    for (int j = first_art; j < width; ++j) allowed[j] = false;
  }

  // Phase 2 reduced costs.
  std::vector<double> cost(width, 0.0);
  for (int j = 0; j < nv; ++j) {
    cost[pos[j]] = lp.objective[j];
    if (neg[j] >= 0) cost[neg[j]] = -lp.objective[j];
  }
  for (int j = 0; j < width; ++j) t.cost(j) = cost[j];
  t.cost(width) = 0.0;
  for (int i = 0; i < t.m(); ++i) {
    const double cb = cost[basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j <= width; ++j) t.cost(j) -= cb * t.at(i, j);
  }
  const SimplexStatus st = Run(t, basis, allowed, rule, sol.pivots);
  if (st == SimplexStatus::kUnbounded) {
    throw LpError(LpError::Kind::kUnbounded, "linear program is unbounded");
  }
  if (st == SimplexStatus::kStalled) {
    throw LpError(LpError::Kind::kNumerical, "simplex did not terminate in phase 2");
  }

  std::vector<double> col_value(width, 0.0);
  for (int i = 0; i < t.m(); ++i) col_value[basis[i]] = t.rhs(i);
  sol.x.assign(nv, 0.0);
  for (int j = 0; j < nv; ++j) {
    sol.x[j] = col_value[pos[j]] - (neg[j] >= 0 ? col_value[neg[j]] : 0.0);
  }
  sol.value = -t.rhs(t.m());
  return sol;
}

}  // namespace csg
