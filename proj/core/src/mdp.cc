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

#include "csg/mdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "csg/qualitative.h"

namespace csg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool Better(Optimum opt, double a, double b) { return opt == Optimum::kMax ? a > b : a < b; }
double Worst(Optimum opt) { return opt == Optimum::kMax ? -kInf : kInf; }

bool IsActive(const StateSet* active, int s) { return active == nullptr || (*active)[s]; }

double Expect(const Mdp& m, int c, const std::vector<double>& v) {
  double sum = 0.0;
  for (const Transition& t : m.successors(c)) {
    const double x = v[t.target];
    if (x == 0.0) continue;
    sum += t.prob * x;
  }
  return sum;
}

// Picks, among near-optimal choices, ones that make progress towards
// `goal` (layered attractor), so that ties inside end components do not
// produce strategies that stall.
std::vector<int> ProgressiveStrategy(const Mdp& m, Optimum opt, const std::vector<double>& choice_value,
                                     const StateSet& goal, const StateSet& skip, double epsilon,
                                     const StateSet* active) {
  const int n = m.num_states();
  std::vector<int> strat(n, -1);
  std::vector<double> best(n, Worst(opt));
  for (int s = 0; s < n; ++s) {
    for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
      if (Better(opt, choice_value[c], best[s])) best[s] = choice_value[c];
    }
  }
  auto near = [&](int s, int c) {
    const double b = best[s];
    if (std::isinf(b)) return choice_value[c] == b;
    return std::abs(choice_value[c] - b) <= std::max(1e-9, epsilon) * std::max(1.0, std::abs(b));
  };
  StateSet fixed = Union(goal, skip);
  std::vector<int> added;
  bool changed = true;
  while (changed) {
    changed = false;
    added.clear();
    for (int s = 0; s < n; ++s) {
      if (fixed[s] || !IsActive(active, s)) continue;
      for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
        if (!near(s, c)) continue;
        bool hits = false;
        for (const Transition& t : m.successors(c)) hits = hits || (t.prob > 0.0 && fixed[t.target]);
        if (hits) {
          strat[s] = c;
          added.push_back(s);
          break;
        }
      }
    }
    for (int s : added) fixed[s] = 1;
    changed = !added.empty();
  }
  for (int s = 0; s < n; ++s) {
    if (strat[s] >= 0 || !IsActive(active, s) || m.num_choices(s) == 0) continue;
    int pick = m.choice_begin(s);
    for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
      if (Better(opt, choice_value[c], choice_value[pick])) pick = c;
    }
    strat[s] = pick;
  }
  return strat;
}

std::vector<int> GreedyStrategy(const Mdp& m, Optimum opt, const std::vector<double>& choice_value,
                                const StateSet* active) {
  std::vector<int> strat(m.num_states(), -1);
  for (int s = 0; s < m.num_states(); ++s) {
    if (!IsActive(active, s) || m.num_choices(s) == 0) continue;
    int pick = m.choice_begin(s);
    for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
      if (Better(opt, choice_value[c], choice_value[pick])) pick = c;
    }
    strat[s] = pick;
  }
  return strat;
}

}  // namespace

double DefaultGamma(const RewardStructure& r) {
  double sum = 0.0;
  int count = 0;
  for (double v : r.state) {
    if (v != 0.0) {
      sum += std::abs(v);
      ++count;
    }
  }
  for (double v : r.action) {
    if (v != 0.0) {
      sum += std::abs(v);
      ++count;
    }
  }
  return count == 0 ? 1.0 : sum / count;
}

MdpResult MdpNext(const Mdp& m, Optimum opt, const StateSet& phi, const StateSet* active) {
  const int n = m.num_states();
  std::vector<double> ind(n);
  for (int s = 0; s < n; ++s) ind[s] = phi[s] ? 1.0 : 0.0;
  MdpResult res;
  res.values.assign(n, kNaN);
  res.strategy.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (!IsActive(active, s)) continue;
    double best = Worst(opt);
    for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
      const double v = Expect(m, c, ind);
      if (Better(opt, v, best)) {
        best = v;
        res.strategy[s] = c;
      }
    }
    res.values[s] = best;
  }
  return res;
}

MdpLayers MdpBoundedUntil(const Mdp& m, Optimum opt, const StateSet& phi1, const StateSet& phi2,
                          int k, const StateSet* active) {
  const int n = m.num_states();
  MdpLayers out;
  out.values.assign(k + 1, std::vector<double>(n, kNaN));
  out.strategy.assign(k + 1, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    if (IsActive(active, s)) out.values[0][s] = phi2[s] ? 1.0 : 0.0;
  }
  for (int step = 1; step <= k; ++step) {
    const auto& prev = out.values[step - 1];
    auto& cur = out.values[step];
    for (int s = 0; s < n; ++s) {
      if (!IsActive(active, s)) continue;
      if (phi2[s]) {
        cur[s] = 1.0;
      } else if (!phi1[s]) {
        cur[s] = 0.0;
      } else {
        double best = Worst(opt);
        for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
          const double v = Expect(m, c, prev);
          if (Better(opt, v, best)) {
            best = v;
            out.strategy[step][s] = c;
          }
        }
        cur[s] = best;
      }
    }
  }
  return out;
}

MdpResult MdpUntil(const Mdp& m, Optimum opt, const StateSet& phi1, const StateSet& phi2,
                   const IterationSettings& settings, const StateSet* active) {
  const int n = m.num_states();
  const bool max = opt == Optimum::kMax;
  const StateSet no = max ? Prob0A(m, phi1, phi2) : Prob0E(m, phi1, phi2);
  const StateSet yes = max ? Prob1E(m, phi1, phi2) : Prob1A(m, phi1, phi2);

  MdpResult res;
  std::vector<double> v(n, 0.0);
  for (int s = 0; s < n; ++s) {
    if (!IsActive(active, s)) v[s] = kNaN;
    else if (yes[s]) v[s] = 1.0;
  }
  std::vector<double> next = v;
  res.converged = false;
  for (res.iterations = 0; res.iterations < settings.max_iters;) {
    for (int s = 0; s < n; ++s) {
      if (!IsActive(active, s) || yes[s] || no[s]) continue;
      double best = Worst(opt);
      for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
        const double x = Expect(m, c, v);
        if (Better(opt, x, best)) best = x;
      }
      next[s] = best;
    }
    ++res.iterations;
    const double diff = RelativeDifference(v, next);
    v.swap(next);
    if (diff < settings.epsilon) {
      res.converged = true;
      break;
    }
  }
  std::vector<double> choice_value(m.num_choices(), 0.0);
  for (int s = 0; s < n; ++s) {
    if (!IsActive(active, s)) continue;
    for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) choice_value[c] = Expect(m, c, v);
  }
  if (max) {
    res.strategy = ProgressiveStrategy(m, opt, choice_value, Intersect(phi2, FullSet(n)),
                                       Union(no, Complement(phi1)), settings.epsilon, active);
  } else {
    res.strategy = GreedyStrategy(m, opt, choice_value, active);
  }
  res.values = std::move(v);
  return res;
}

MdpLayers MdpInstantaneous(const Mdp& m, Optimum opt, const RewardStructure& r, int k,
                           const StateSet* active) {
  const int n = m.num_states();
  MdpLayers out;
  out.values.assign(k + 1, std::vector<double>(n, kNaN));
  out.strategy.assign(k + 1, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    if (IsActive(active, s)) out.values[0][s] = r.state[s];
  }
  for (int step = 1; step <= k; ++step) {
    for (int s = 0; s < n; ++s) {
      if (!IsActive(active, s)) continue;
      double best = Worst(opt);
      for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
        const double v = Expect(m, c, out.values[step - 1]);
        if (Better(opt, v, best)) {
          best = v;
          out.strategy[step][s] = c;
        }
      }
      out.values[step][s] = best;
    }
  }
  return out;
}

MdpLayers MdpCumulative(const Mdp& m, Optimum opt, const RewardStructure& r, int k,
                        const StateSet* active) {
  const int n = m.num_states();
  MdpLayers out;
  out.values.assign(k + 1, std::vector<double>(n, kNaN));
  out.strategy.assign(k + 1, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    if (IsActive(active, s)) out.values[0][s] = 0.0;
  }
  for (int step = 1; step <= k; ++step) {
    for (int s = 0; s < n; ++s) {
      if (!IsActive(active, s)) continue;
      double best = Worst(opt);
      for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
        const double v = r.action[c] + Expect(m, c, out.values[step - 1]);
        if (Better(opt, v, best)) {
          best = v;
          out.strategy[step][s] = c;
        }
      }
      out.values[step][s] = r.state[s] + best;
    }
  }
  return out;
}

MdpResult MdpReachReward(const Mdp& m, Optimum opt, const RewardStructure& r,
                         const StateSet& target, const IterationSettings& settings,
                         const ReachRewardOptions& options, const StateSet* active) {
  const int n = m.num_states();
  const bool max = opt == Optimum::kMax;
  StateSet sinf = EmptySet(n);
  if (!options.plain) {
    const StateSet all = FullSet(n);
    sinf = Minus(Complement(max ? Prob1A(m, all, target) : Prob1E(m, all, target)), target);
  }

  MdpResult res;
  std::vector<double> v(n, 0.0);
  for (int s = 0; s < n; ++s) {
    if (!IsActive(active, s)) v[s] = kNaN;
    else if (sinf[s]) v[s] = kInf;
  }

  auto iterate = [&](const std::vector<double>& rs, const std::vector<double>& ra) {
    std::vector<double> next = v;
    bool converged = false;
    int it = 0;
    for (; it < settings.max_iters;) {
      for (int s = 0; s < n; ++s) {
        if (!IsActive(active, s) || target[s] || sinf[s]) continue;
        double best = Worst(opt);
        for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
          const double x = ra[c] + Expect(m, c, v);
          if (Better(opt, x, best)) best = x;
        }
        next[s] = rs[s] + best;
      }
      ++it;
      const double diff = RelativeDifference(v, next);
      v.swap(next);
      if (diff < settings.epsilon) {
        converged = true;
        break;
      }
    }
    res.iterations += it;
    res.converged = res.converged && converged;
  };

  if (!options.plain) {
    const double gamma = options.gamma.value_or(DefaultGamma(r));
    std::vector<double> rs = r.state;
    std::vector<double> ra = r.action;
    for (double& x : rs) {
      if (x == 0.0) x = gamma;
    }
    for (double& x : ra) {
      if (x == 0.0) x = gamma;
    }
    iterate(rs, ra);
  }
  iterate(r.state, r.action);

  std::vector<double> choice_value(m.num_choices(), 0.0);
  for (int s = 0; s < n; ++s) {
    if (!IsActive(active, s)) continue;
    for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
      choice_value[c] = r.action[c] + Expect(m, c, v);
    }
  }
  if (max) {
    res.strategy = GreedyStrategy(m, opt, choice_value, active);
  } else {
    res.strategy =
        ProgressiveStrategy(m, opt, choice_value, target, sinf, settings.epsilon, active);
  }
  res.values = std::move(v);
  return res;
}

}  // namespace csg
