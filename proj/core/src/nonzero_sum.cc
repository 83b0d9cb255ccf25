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

#include "csg/nonzero_sum.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "csg/bimatrix.h"
#include "csg/error.h"
#include "csg/mdp.h"
#include "parallel.h"

namespace csg {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Kind = NzObjective::Kind;

int Bound(const NzObjective& o) { return o.kind == Kind::kNext ? 1 : o.bound; }

// Value with zero steps of the objective left.
double Terminal(const NzObjective& o, int s) {
  switch (o.kind) {
    case Kind::kNext:
    case Kind::kBoundedUntil:
      return o.phi2[s] ? 1.0 : 0.0;
    case Kind::kInstantaneous:
      return o.reward.state[s];
    default:
      return 0.0;
  }
}

// Value of the objective if it can no longer change at s with m steps
// left (m < 0: unbounded), NaN otherwise.
double Fixed(const NzObjective& o, int s, int m) {
  if (m == 0) return Terminal(o, s);
  switch (o.kind) {
    case Kind::kBoundedUntil:
    case Kind::kUntil:
      if (o.phi2[s]) return 1.0;
      if (!o.phi1[s]) return 0.0;
      return kNaN;
    case Kind::kReach:
      return o.phi2[s] ? 0.0 : kNaN;
    default:
      return kNaN;
  }
}

double Local(const NzObjective& o, int s, int c) {
  if (o.kind == Kind::kCumulative || o.kind == Kind::kReach) {
    return o.reward.state[s] + o.reward.action[c];
  }
  return 0.0;
}

// Cooperative optimum of one objective on the joint-action MDP, per number
// of remaining steps (one layer if unbounded).
struct MdpTable {
  std::vector<std::vector<double>> values;
  std::vector<std::vector<int>> strategy;
};

MdpTable SolveMdp(const TwoPlayerGame& g, const NzObjective& o, Optimum opt,
                  const IterationSettings& it, std::vector<Diagnostic>& diags) {
  const Mdp& m = g.mdp();
  const StateSet* active = &g.active();
  const int n = g.num_states();
  MdpTable t;
  auto take = [&](MdpLayers&& l) {
    t.values = std::move(l.values);
    t.strategy = std::move(l.strategy);
  };
  auto note = [&](const MdpResult& r, const char* what) {
    if (!r.converged) {
      diags.push_back({Diagnostic::Kind::kNotConverged,
                       std::string(what) + ": no convergence after " +
                           std::to_string(r.iterations) + " iterations",
                       std::nullopt});
    }
  };
  switch (o.kind) {
    case Kind::kNext: {
      MdpResult r = MdpNext(m, opt, o.phi2, active);
      std::vector<double> base(n);
      for (int s = 0; s < n; ++s) base[s] = Terminal(o, s);
      t.values = {std::move(base), std::move(r.values)};
      t.strategy = {std::vector<int>(n, -1), std::move(r.strategy)};
      break;
    }
    case Kind::kBoundedUntil:
      take(MdpBoundedUntil(m, opt, o.phi1, o.phi2, o.bound, active));
      break;
    case Kind::kInstantaneous:
      take(MdpInstantaneous(m, opt, o.reward, o.bound, active));
      break;
    case Kind::kCumulative:
      take(MdpCumulative(m, opt, o.reward, o.bound, active));
      break;
    case Kind::kUntil: {
      MdpResult r = MdpUntil(m, opt, o.phi1, o.phi2, it, active);
      note(r, "mdp until");
      t.values = {std::move(r.values)};
      t.strategy = {std::move(r.strategy)};
      break;
    }
    case Kind::kReach: {
      MdpResult r = MdpReachReward(m, opt, o.reward, o.phi2, it, {}, active);
      note(r, "mdp reward");
      t.values = {std::move(r.values)};
      t.strategy = {std::move(r.strategy)};
      break;
    }
  }
  return t;
}

// Decision for one state: either both values are fixed/delegated to the
// MDP, or a bimatrix game must be solved.
uint8_t Decide(double f1, double f2, double mdp1, double mdp2, double& a, double& b) {
  const bool d1 = !std::isnan(f1);
  const bool d2 = !std::isnan(f2);
  if (d1 && d2) {
    a = f1;
    b = f2;
    return kBothDecided;
  }
  if (d1) {
    a = f1;
    b = mdp2;
    return kFirstDecided;
  }
  if (d2) {
    a = mdp1;
    b = f2;
    return kSecondDecided;
  }
  return kNoneDecided;
}


template <class Z1, class Z2>
Equilibrium SolveAt(const TwoPlayerGame& g, int s, Optimum opt, const Z1& z1, const Z2& z2) {
  BimatrixGame bg{DenseMatrix(g.rows(s), g.cols(s)), DenseMatrix(g.rows(s), g.cols(s))};
  for (int i = 0; i < g.rows(s); ++i) {
    for (int j = 0; j < g.cols(s); ++j) {
      const int c = g.choice(s, i, j);
      bg.a(i, j) = z1(c);
      bg.b(i, j) = z2(c);
      if (!std::isfinite(bg.a(i, j)) || !std::isfinite(bg.b(i, j))) {
        throw NumericalError("non-finite utility in the bimatrix game at state " +
                             g.state_name(s));
      }
    }
  }
  return opt == Optimum::kMax ? Swne(bg) : Scne(bg);
}

double Expect(const TwoPlayerGame& g, int c, const std::vector<double>& v) {
  double sum = 0.0;
  for (const Transition& t : g.successors(c)) {
    if (t.prob > 0.0) sum += t.prob * v[t.target];
  }
  return sum;
}

NzLayer EmptyLayer(int n) {
  return {StrategyLayer(n), StrategyLayer(n), std::vector<uint8_t>(n, kNoneDecided)};
}

NzResult SolveFinite(const TwoPlayerGame& g, const NzObjective& o1, const NzObjective& o2,
                     const NzOptions& options) {
  const int n = g.num_states();
  const StateSet& active = g.active();
  NzResult res;
  res.finite = true;
  res.bound1 = Bound(o1);
  res.bound2 = Bound(o2);
  const int k = std::min(res.bound1, res.bound2);
  const int n1 = res.bound1 - k;
  const int n2 = res.bound2 - k;
  res.horizon = k;
  const MdpTable t1 = SolveMdp(g, o1, options.optimum, options.iteration, res.diagnostics);
  const MdpTable t2 = SolveMdp(g, o2, options.optimum, options.iteration, res.diagnostics);
  res.layers.assign(k + 1, EmptyLayer(n));

  std::vector<double> prev1(n, kNaN);
  std::vector<double> prev2(n, kNaN);
  for (int s = 0; s < n; ++s) {
    if (!active[s]) continue;
    const double f1 = n1 == 0 ? Terminal(o1, s) : kNaN;
    const double f2 = n2 == 0 ? Terminal(o2, s) : kNaN;
    res.layers[0].decided[s] =
        Decide(f1, f2, t1.values[n1][s], t2.values[n2][s], prev1[s], prev2[s]);
  }
  std::vector<double> cur1(n, kNaN);
  std::vector<double> cur2(n, kNaN);
  for (int step = 1; step <= k; ++step) {
    NzLayer& layer = res.layers[step];
    const int m1 = step + n1;
    const int m2 = step + n2;
    internal::ParallelFor(n, options.workers, [&](int s) {
      if (!active[s]) return;
      layer.decided[s] = Decide(Fixed(o1, s, m1), Fixed(o2, s, m2), t1.values[m1][s],
                                t2.values[m2][s], cur1[s], cur2[s]);
      if (layer.decided[s] != kNoneDecided) return;
      Equilibrium e = SolveAt(
          g, s, options.optimum, [&](int c) { return Local(o1, s, c) + Expect(g, c, prev1); },
          [&](int c) { return Local(o2, s, c) + Expect(g, c, prev2); });
      cur1[s] = e.u;
      cur2[s] = e.v;
      layer.row[s] = std::move(e.x);
      layer.col[s] = std::move(e.y);
    });
    prev1.swap(cur1);
    prev2.swap(cur2);
  }
  res.v1 = std::move(prev1);
  res.v2 = std::move(prev2);
  res.iterations = k;
  res.mdp[0] = t1.strategy;
  res.mdp[1] = t2.strategy;
  return res;
}

std::vector<double> Interleave(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(2 * a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[2 * i] = a[i];
    out[2 * i + 1] = b[i];
  }
  return out;
}

std::vector<std::string> PairNames(const TwoPlayerGame& g) {
  std::vector<std::string> names;
  for (int s = 0; s < g.num_states(); ++s) {
    names.push_back(g.state_name(s) + ".1");
    names.push_back(g.state_name(s) + ".2");
  }
  return names;
}

NzResult SolveInfinite(const TwoPlayerGame& g, const NzObjective& o1, const NzObjective& o2,
                       const NzOptions& options) {
  const int n = g.num_states();
  const StateSet& active = g.active();
  const IterationSettings& it = options.iteration;
  NzResult res;
  const MdpTable t1 = SolveMdp(g, o1, options.optimum, it, res.diagnostics);
  const MdpTable t2 = SolveMdp(g, o2, options.optimum, it, res.diagnostics);
  res.layers.assign(1, EmptyLayer(n));
  NzLayer& layer = res.layers[0];

  std::vector<double> v1(n, kNaN);
  std::vector<double> v2(n, kNaN);
  // Probabilistic pairs start from the fixed cases; reward pairs from 0.
  const bool rewards = o1.kind == Kind::kReach || o2.kind == Kind::kReach;
  for (int s = 0; s < n; ++s) {
    if (!active[s]) continue;
    v1[s] = 0.0;
    v2[s] = 0.0;
    if (rewards) continue;
    double a = 0.0;
    double b = 0.0;
    if (Decide(Fixed(o1, s, -1), Fixed(o2, s, -1), t1.values[0][s], t2.values[0][s], a, b) !=
        kNoneDecided) {
      v1[s] = a;
      v2[s] = b;
    }
  }
  std::vector<double> next1 = v1;
  std::vector<double> next2 = v2;
  auto sum = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
  };

  OscillationDetector detector(it);
  std::deque<std::vector<double>> pair_history;
  bool checking_pair = false;
  int sweeps = 0;
  while (true) {
    if (sweeps >= it.max_iters) {
      res.converged = false;
      res.diagnostics.push_back({Diagnostic::Kind::kNotConverged,
                                 "equilibrium values: no convergence after " +
                                     std::to_string(sweeps) + " sweeps",
                                 std::nullopt});
      break;
    }
    internal::ParallelFor(n, options.workers, [&](int s) {
      if (!active[s]) return;
      layer.decided[s] = Decide(Fixed(o1, s, -1), Fixed(o2, s, -1), t1.values[0][s],
                                t2.values[0][s], next1[s], next2[s]);
      if (layer.decided[s] != kNoneDecided) return;
      Equilibrium e = SolveAt(
          g, s, options.optimum, [&](int c) { return Local(o1, s, c) + Expect(g, c, v1); },
          [&](int c) { return Local(o2, s, c) + Expect(g, c, v2); });
      next1[s] = e.u;
      next2[s] = e.v;
      layer.row[s] = std::move(e.x);
      layer.col[s] = std::move(e.y);
    });
    ++sweeps;
    const double sum_diff = RelativeDifference(sum(v1, v2), sum(next1, next2));
    const double pair_diff =
        std::max(RelativeDifference(v1, next1), RelativeDifference(v2, next2));
    v1.swap(next1);
    v2.swap(next2);
    if (checking_pair) {
      pair_history.push_back(Interleave(v1, v2));
      if (pair_diff < it.epsilon ||
          static_cast<int>(pair_history.size()) >= it.oscillation_window) {
        if (pair_diff >= it.epsilon) {
          auto rep = OscillationDetector::FindCycle(pair_history, it.max_period, it.epsilon);
          if (rep) {
            res.diagnostics.push_back(
                {Diagnostic::Kind::kPairOscillation,
                 "sum converged, pair cycles: " + DescribeOscillation(*rep, sweeps, PairNames(g)),
                 rep});
          } else {
            res.diagnostics.push_back({Diagnostic::Kind::kNote,
                                       "sum converged while the pair values still change",
                                       std::nullopt});
          }
        }
        break;
      }
      continue;
    }
    if (sum_diff < it.epsilon) {
      if (pair_diff < it.epsilon) break;
      checking_pair = true;
      pair_history.push_back(Interleave(v1, v2));
      continue;
    }
    if (auto rep = detector.Observe(sweeps, Interleave(v1, v2))) {
      res.converged = false;
      res.diagnostics.push_back({Diagnostic::Kind::kOscillation,
                                 "equilibrium values: " +
                                     DescribeOscillation(*rep, sweeps, PairNames(g)),
                                 rep});
      break;
    }
  }
  res.iterations = sweeps;
  res.v1 = std::move(v1);
  res.v2 = std::move(v2);
  res.mdp[0] = t1.strategy;
  res.mdp[1] = t2.strategy;
  return res;
}

}  // namespace

NzResult SolveNonzeroSum(const TwoPlayerGame& g, const NzObjective& o1, const NzObjective& o2,
                         const NzOptions& options) {
  if (o1.IsFinite() != o2.IsFinite()) {
    throw UnsupportedError("mixed finite/unbounded objective pair must be augmented first");
  }
  return o1.IsFinite() ? SolveFinite(g, o1, o2, options) : SolveInfinite(g, o1, o2, options);
}

}  // namespace csg
