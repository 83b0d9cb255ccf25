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

#include "csg/zero_sum.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "csg/matrix_game.h"
#include "csg/mdp.h"
#include "csg/qualitative.h"
#include "parallel.h"

namespace csg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double Expect(const TwoPlayerGame& g, int c, const std::vector<double>& v) {
  double sum = 0.0;
  for (const Transition& t : g.successors(c)) {
    if (t.prob > 0.0) sum += t.prob * v[t.target];
  }
  return sum;
}

template <class Entry>
MatrixGameSolution SolveAt(const TwoPlayerGame& g, int s, Optimum opt, const Entry& entry) {
  DenseMatrix z(g.rows(s), g.cols(s));
  for (int i = 0; i < g.rows(s); ++i) {
    for (int j = 0; j < g.cols(s); ++j) z(i, j) = entry(g.choice(s, i, j));
  }
  return opt == Optimum::kMax ? SolveMatrixGame(z) : SolveMatrixGameMin(z);
}

std::vector<std::string> StateNames(const TwoPlayerGame& g) {
  std::vector<std::string> names(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) names[s] = g.state_name(s);
  return names;
}

// Backward induction shared by the finite-horizon operators. `fixed`
// returns a pinned value for (state, n) or NaN if the matrix game decides.
template <class Fixed, class Entry>
ZsResult Backward(const TwoPlayerGame& g, Optimum opt, int k, const std::vector<double>& base,
                  const Fixed& fixed, const Entry& entry, const ZsOptions& options) {
  const int n = g.num_states();
  const StateSet& active = g.active();
  ZsResult res;
  res.layers.assign(k + 1, std::vector<double>(n, kNaN));
  res.row.assign(k + 1, StrategyLayer(n));
  res.col.assign(k + 1, StrategyLayer(n));
  for (int s = 0; s < n; ++s) {
    if (active[s]) res.layers[0][s] = base[s];
  }
  for (int step = 1; step <= k; ++step) {
    const std::vector<double>& prev = res.layers[step - 1];
    std::vector<double>& cur = res.layers[step];
    internal::ParallelFor(n, options.workers, [&](int s) {
      if (!active[s]) return;
      const double pinned = fixed(s);
      if (!std::isnan(pinned)) {
        cur[s] = pinned;
        return;
      }
      MatrixGameSolution sol = SolveAt(g, s, opt, [&](int c) { return entry(s, c, prev); });
      cur[s] = sol.value;
      res.row[step][s] = std::move(sol.row_strategy);
      res.col[step][s] = std::move(sol.col_strategy);
    });
  }
  res.iterations = k;
  res.values = res.layers[k];
  return res;
}

// Value iteration with pinned states. Returns after convergence, a
// detected oscillation or the iteration cap; the final sweep's strategies
// are kept.
template <class Entry>
void Iterate(const TwoPlayerGame& g, Optimum opt, const StateSet& pinned, const Entry& entry,
             const ZsOptions& options, std::vector<double>& v, ZsResult& res, const char* phase) {
  const int n = g.num_states();
  const StateSet& active = g.active();
  const IterationSettings& it = options.iteration;
  std::vector<double> next = v;
  OscillationDetector detector(it);
  StrategyLayer row(n);
  StrategyLayer col(n);
  int sweeps = 0;
  bool done = false;
  while (!done) {
    if (sweeps >= it.max_iters) {
      res.converged = false;
      res.diagnostics.push_back({Diagnostic::Kind::kNotConverged,
                                 std::string(phase) + ": no convergence after " +
                                     std::to_string(sweeps) + " sweeps",
                                 std::nullopt});
      break;
    }
    internal::ParallelFor(n, options.workers, [&](int s) {
      if (!active[s] || pinned[s]) return;
      MatrixGameSolution sol = SolveAt(g, s, opt, [&](int c) { return entry(s, c, v); });
      next[s] = sol.value;
      row[s] = std::move(sol.row_strategy);
      col[s] = std::move(sol.col_strategy);
    });
    ++sweeps;
    const double diff = RelativeDifference(v, next);
    v.swap(next);
    if (diff < it.epsilon) break;
    if (auto rep = detector.Observe(sweeps, v)) {
      res.converged = false;
      res.diagnostics.push_back({Diagnostic::Kind::kOscillation,
                                 std::string(phase) + ": " +
                                     DescribeOscillation(*rep, sweeps, StateNames(g)),
                                 rep});
      done = true;
    }
  }
  res.iterations += sweeps;
  res.row.assign(1, std::move(row));
  res.col.assign(1, std::move(col));
}

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

std::string DescribeOscillation(const OscillationReport& rep, int sweeps,
                                const std::vector<std::string>& names) {
  std::string out = "period=" + std::to_string(rep.period) + " amplitude=" + Num(rep.amplitude) +
                    " sweeps=" + std::to_string(sweeps);
  for (const auto& [idx, cyc] : rep.cycles) {
    const std::string name =
        idx < static_cast<int>(names.size()) ? names[idx] : std::to_string(idx);
    out += " " + name + "=[";
    for (size_t i = 0; i < cyc.size(); ++i) out += (i ? "," : "") + Num(cyc[i]);
    out += "]";
  }
  return out;
}

ZsResult ZsNext(const TwoPlayerGame& g, Optimum opt, const StateSet& phi,
                const ZsOptions& options) {
  std::vector<double> ind(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) ind[s] = phi[s] ? 1.0 : 0.0;
  return Backward(
      g, opt, 1, ind, [](int) { return kNaN; },
      [&](int, int c, const std::vector<double>&) { return Expect(g, c, ind); }, options);
}

ZsResult ZsBoundedUntil(const TwoPlayerGame& g, Optimum opt, const StateSet& phi1,
                        const StateSet& phi2, int k, const ZsOptions& options) {
  std::vector<double> base(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) base[s] = phi2[s] ? 1.0 : 0.0;
  return Backward(
      g, opt, k, base,
      [&](int s) {
        if (phi2[s]) return 1.0;
        if (!phi1[s]) return 0.0;
        return kNaN;
      },
      [&](int, int c, const std::vector<double>& prev) { return Expect(g, c, prev); }, options);
}

ZsResult ZsInstantaneous(const TwoPlayerGame& g, Optimum opt, const RewardStructure& r, int k,
                         const ZsOptions& options) {
  return Backward(
      g, opt, k, r.state, [](int) { return kNaN; },
      [&](int, int c, const std::vector<double>& prev) { return Expect(g, c, prev); }, options);
}

ZsResult ZsCumulative(const TwoPlayerGame& g, Optimum opt, const RewardStructure& r, int k,
                      const ZsOptions& options) {
  return Backward(
      g, opt, k, std::vector<double>(g.num_states(), 0.0), [](int) { return kNaN; },
      [&](int s, int c, const std::vector<double>& prev) {
        return r.action[c] + r.state[s] + Expect(g, c, prev);
      },
      options);
}

ZsResult ZsUntil(const TwoPlayerGame& g, Optimum opt, const StateSet& phi1, const StateSet& phi2,
                 const ZsOptions& options) {
  const int n = g.num_states();
  const StateSet& active = g.active();
  const Side reacher = opt == Optimum::kMax ? Side::kRow : Side::kCol;
  const QualitativeSets q = Prob0Prob1(g, reacher, phi1, phi2);
  const StateSet pinned = Union(q.prob0, q.prob1);

  ZsResult res;
  std::vector<double> v(n, 0.0);
  for (int s = 0; s < n; ++s) {
    if (!active[s]) v[s] = kNaN;
    else if (q.prob1[s]) v[s] = 1.0;
  }
  auto entry = [&](int, int c, const std::vector<double>& x) { return Expect(g, c, x); };
  Iterate(g, opt, pinned, entry, options, v, res, "until");

  // Pinned states: the final values decide the matrix games, except that
  // the reacher's almost-sure strategy replaces the local one in S1.
  StrategyLayer& row = res.row[0];
  StrategyLayer& col = res.col[0];
  internal::ParallelFor(n, options.workers, [&](int s) {
    if (!active[s] || !pinned[s]) return;
    MatrixGameSolution sol = SolveAt(g, s, opt, [&](int c) { return Expect(g, c, v); });
    row[s] = std::move(sol.row_strategy);
    col[s] = std::move(sol.col_strategy);
  });
  const StrategyLayer sure = AlmostSureStrategy(g, reacher, phi2, q.prob1);
  for (int s = 0; s < n; ++s) {
    if (!active[s] || sure[s].empty()) continue;
    (reacher == Side::kRow ? row : col)[s] = sure[s];
  }
  res.values = std::move(v);
  return res;
}

ZsResult ZsReachReward(const TwoPlayerGame& g, Optimum opt, const RewardStructure& r,
                       const StateSet& target, const ZsOptions& options) {
  const int n = g.num_states();
  const StateSet& active = g.active();
  const Side minimizer = opt == Optimum::kMin ? Side::kRow : Side::kCol;
  StateSet sinf = EmptySet(n);
  if (!options.plain) sinf = Minus(InfiniteRewardStates(g, minimizer, target), target);
  const StateSet pinned = Union(target, sinf);

  ZsResult res;
  std::vector<double> v(n, 0.0);
  for (int s = 0; s < n; ++s) {
    if (!active[s]) v[s] = kNaN;
    else if (sinf[s]) v[s] = kInf;
  }
  if (!options.plain) {
    const double gamma = options.gamma.value_or(DefaultGamma(r));
    auto lifted = [&](int s, int c, const std::vector<double>& x) {
      const double ra = r.action[c] == 0.0 ? gamma : r.action[c];
      const double rs = r.state[s] == 0.0 ? gamma : r.state[s];
      return ra + rs + Expect(g, c, x);
    };
    Iterate(g, opt, pinned, lifted, options, v, res, "reward upper bound");
  }
  auto entry = [&](int s, int c, const std::vector<double>& x) {
    return r.action[c] + r.state[s] + Expect(g, c, x);
  };
  Iterate(g, opt, pinned, entry, options, v, res, "reward");
  res.values = std::move(v);
  return res;
}

}  // namespace csg
