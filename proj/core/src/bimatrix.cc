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

#include "csg/bimatrix.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "csg/error.h"

namespace csg {
namespace {

constexpr double kTol = 1e-9;
constexpr double kDedupTol = 1e-6;

// Vertex of a best-response polytope: a strategy over own actions together
// with the opponent's best payoff against it and the set of opponent
// actions attaining it.
struct Vertex {
  std::vector<double> p;
  double value = 0.0;
  std::vector<bool> best;
};

// Solves the square system m * sol = rhs in place; false if singular.
bool SolveSquare(std::vector<double>& m, std::vector<double>& rhs, int n) {
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    }
    if (std::abs(m[piv * n + c]) < 1e-12) return false;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (int r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      if (f == 0.0) continue;
      for (int k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (int c = n - 1; c >= 0; --c) {
    double s = rhs[c];
    for (int k = c + 1; k < n; ++k) s -= m[c * n + k] * rhs[k];
    rhs[c] = s / m[c * n + c];
  }
  return true;
}

// q(k, j): opponent's payoff when we play k and the opponent plays j.
std::vector<Vertex> EnumerateVertices(const DenseMatrix& q, int& degenerate) {
  const int own = q.rows();
  const int opp = q.cols();
  std::vector<Vertex> out;
  std::vector<int> support;
  std::vector<int> tight;
  for (uint32_t rmask = 1; rmask < (1u << own); ++rmask) {
    support.clear();
    for (int k = 0; k < own; ++k) {
      if (rmask & (1u << k)) support.push_back(k);
    }
    const int s = static_cast<int>(support.size());
    if (s > opp) continue;
    const int n = s + 1;
    for (uint32_t dmask = 1; dmask < (1u << opp); ++dmask) {
      if (std::popcount(dmask) != s) continue;
      tight.clear();
      for (int j = 0; j < opp; ++j) {
        if (dmask & (1u << j)) tight.push_back(j);
      }
      std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
      std::vector<double> rhs(n, 0.0);
      for (int c = 0; c < s; ++c) m[c] = 1.0;
      rhs[0] = 1.0;
      for (int r = 0; r < s; ++r) {
        for (int c = 0; c < s; ++c) m[(r + 1) * n + c] = q(support[c], tight[r]);
        m[(r + 1) * n + s] = -1.0;
      }
      if (!SolveSquare(m, rhs, n)) continue;

      Vertex vx;
      vx.p.assign(own, 0.0);
      bool ok = true;
      double sum = 0.0;
      for (int c = 0; c < s; ++c) {
        double p = rhs[c];
        if (p < -kTol) {
          ok = false;
          break;
        }
        if (p < 1e-12) p = 0.0;
        vx.p[support[c]] = p;
        sum += p;
      }
      if (!ok || sum <= 0.0) continue;
      for (double& p : vx.p) p /= sum;
      vx.value = rhs[s];
      vx.best.assign(opp, false);
      int nbest = 0;
      for (int j = 0; j < opp && ok; ++j) {
        double pay = 0.0;
        for (int k = 0; k < own; ++k) pay += vx.p[k] * q(k, j);
        if (pay > vx.value + kTol) ok = false;
        if (pay >= vx.value - kTol) {
          vx.best[j] = true;
          ++nbest;
        }
      }
      if (!ok) continue;
      bool dup = false;
      for (const Vertex& w : out) {
        double d = 0.0;
        for (int k = 0; k < own; ++k) d = std::max(d, std::abs(w.p[k] - vx.p[k]));
        if (d <= kTol) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      int supp = 0;
      for (double p : vx.p) supp += p > 0.0 ? 1 : 0;
      if (nbest > supp) ++degenerate;
      out.push_back(std::move(vx));
    }
  }
  return out;
}

bool Covered(const std::vector<double>& p, const std::vector<bool>& best) {
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0 && !best[k]) return false;
  }
  return true;
}

long long Key(double v) { return std::llround(v * 1e9); }

EquilibriumSet EnumerateReduced(const BimatrixGame& g) {
  double scale = std::max(g.a.MaxAbs(), g.b.MaxAbs());
  if (scale == 0.0) scale = 1.0;
  const int l = g.a.rows();
  const int m = g.a.cols();
  DenseMatrix qa(m, l);  // player 1's payoff indexed (col, row)
  DenseMatrix qb(l, m);  // player 2's payoff indexed (row, col)
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) {
      qa(j, i) = g.a(i, j) / scale;
      qb(i, j) = g.b(i, j) / scale;
    }
  }
  EquilibriumSet set;
  const std::vector<Vertex> xs = EnumerateVertices(qb, set.degenerate_vertices);
  const std::vector<Vertex> ys = EnumerateVertices(qa, set.degenerate_vertices);

  struct Keyed {
    Equilibrium e;
    long long ks, ku, kv;
  };
  std::vector<Keyed> found;
  for (const Vertex& x : xs) {
    for (const Vertex& y : ys) {
      if (!Covered(x.p, y.best) || !Covered(y.p, x.best)) continue;
      bool dup = false;
      for (const Keyed& f : found) {
        double d = 0.0;
        for (int i = 0; i < l; ++i) d = std::max(d, std::abs(f.e.x[i] - x.p[i]));
        for (int j = 0; j < m; ++j) d = std::max(d, std::abs(f.e.y[j] - y.p[j]));
        if (d <= kDedupTol) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      Keyed k;
      k.e.x = x.p;
      k.e.y = y.p;
      k.ks = Key(y.value + x.value);
      k.ku = Key(y.value);
      k.kv = Key(x.value);
      k.e.u = y.value * scale;
      k.e.v = x.value * scale;
      found.push_back(std::move(k));
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const Keyed& p, const Keyed& q) {
    if (p.ks != q.ks) return p.ks > q.ks;
    if (p.ku != q.ku) return p.ku > q.ku;
    return p.kv > q.kv;
  });
  for (Keyed& f : found) set.equilibria.push_back(std::move(f.e));
  return set;
}

}  // namespace

FilteredGame FilterDominated(const BimatrixGame& game) {
  const int l = game.a.rows();
  const int m = game.a.cols();
  double scale = std::max(game.a.MaxAbs(), game.b.MaxAbs());
  const double tol = 1e-12 * std::max(1.0, scale);
  std::vector<int> rows(l);
  std::vector<int> cols(m);
  for (int i = 0; i < l; ++i) rows[i] = i;
  for (int j = 0; j < m; ++j) cols[j] = j;

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t r = 0; r < rows.size() && rows.size() > 1; ++r) {
      for (size_t k = 0; k < rows.size(); ++k) {
        if (k == r) continue;
        bool strict = true;
        for (int j : cols) {
          if (!(game.a(rows[k], j) > game.a(rows[r], j) + tol)) {
            strict = false;
            break;
          }
        }
        if (strict) {
          rows.erase(rows.begin() + r);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
    if (changed) continue;
    for (size_t c = 0; c < cols.size() && cols.size() > 1; ++c) {
      for (size_t k = 0; k < cols.size(); ++k) {
        if (k == c) continue;
        bool strict = true;
        for (int i : rows) {
          if (!(game.b(i, cols[k]) > game.b(i, cols[c]) + tol)) {
            strict = false;
            break;
          }
        }
        if (strict) {
          cols.erase(cols.begin() + c);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }

  FilteredGame f;
  f.rows = rows;
  f.cols = cols;
  f.game.a = DenseMatrix(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  f.game.b = DenseMatrix(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols.size(); ++j) {
      f.game.a(static_cast<int>(i), static_cast<int>(j)) = game.a(rows[i], cols[j]);
      f.game.b(static_cast<int>(i), static_cast<int>(j)) = game.b(rows[i], cols[j]);
    }
  }
  return f;
}

EquilibriumSet EnumerateNash(const BimatrixGame& game) {
  if (game.a.rows() != game.b.rows() || game.a.cols() != game.b.cols()) {
    throw NumericalError("bimatrix utilities have different shapes");
  }
  if (game.a.rows() == 0 || game.a.cols() == 0) {
    throw NumericalError("bimatrix game with no actions");
  }
  if (game.a.rows() > 24 || game.a.cols() > 24) {
    throw NumericalError("bimatrix game too large for support enumeration");
  }
  const FilteredGame f = FilterDominated(game);
  EquilibriumSet reduced = EnumerateReduced(f.game);
  EquilibriumSet out;
  out.degenerate_vertices = reduced.degenerate_vertices;
  for (Equilibrium& e : reduced.equilibria) {
    Equilibrium full;
    full.x.assign(game.a.rows(), 0.0);
    full.y.assign(game.a.cols(), 0.0);
    for (size_t i = 0; i < f.rows.size(); ++i) full.x[f.rows[i]] = e.x[i];
    for (size_t j = 0; j < f.cols.size(); ++j) full.y[f.cols[j]] = e.y[j];
    full.u = e.u;
    full.v = e.v;
    out.equilibria.push_back(std::move(full));
  }
  return out;
}

Equilibrium SelectSwne(const std::vector<Equilibrium>& eqs) {
  if (eqs.empty()) throw NumericalError("no Nash equilibrium found");
  double scale = 1.0;
  for (const auto& e : eqs) scale = std::max(scale, std::abs(e.u) + std::abs(e.v));
  const double tol = kTol * scale;
  double best_sum = -std::numeric_limits<double>::infinity();
  for (const auto& e : eqs) best_sum = std::max(best_sum, e.u + e.v);
  double best_u = -std::numeric_limits<double>::infinity();
  for (const auto& e : eqs) {
    if (e.u + e.v >= best_sum - tol) best_u = std::max(best_u, e.u);
  }
  double best_v = -std::numeric_limits<double>::infinity();
  for (const auto& e : eqs) {
    if (e.u + e.v >= best_sum - tol && e.u >= best_u - tol) best_v = std::max(best_v, e.v);
  }
  for (const auto& e : eqs) {
    if (e.u + e.v >= best_sum - tol && e.u >= best_u - tol && e.v >= best_v - tol) return e;
  }
  return eqs.front();
}

Equilibrium Swne(const BimatrixGame& game) {
  EquilibriumSet set = EnumerateNash(game);
  if (set.equilibria.empty()) throw NumericalError("no Nash equilibrium found");
  return SelectSwne(set.equilibria);
}

Equilibrium Scne(const BimatrixGame& game) {
  BimatrixGame neg{game.a.Negated(), game.b.Negated()};
  Equilibrium e = Swne(neg);
  e.u = -e.u;
  e.v = -e.v;
  return e;
}

}  // namespace csg
