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

#include "csg/qualitative.h"

#include <string>
#include <vector>

namespace csg {
namespace {

// Choice index for (reacher action a, opponent action b).
int ChoiceFor(const TwoPlayerGame& g, Side reacher, int s, int a, int b) {
  return reacher == Side::kRow ? g.choice(s, a, b) : g.choice(s, b, a);
}

int ReacherActions(const TwoPlayerGame& g, Side reacher, int s) {
  return reacher == Side::kRow ? g.rows(s) : g.cols(s);
}

int OpponentActions(const TwoPlayerGame& g, Side reacher, int s) {
  return reacher == Side::kRow ? g.cols(s) : g.rows(s);
}

bool Hits(std::span<const Transition> succ, const StateSet& x) {
  for (const Transition& t : succ) {
    if (t.prob > 0.0 && x[t.target]) return true;
  }
  return false;
}

bool Inside(std::span<const Transition> succ, const StateSet& y) {
  for (const Transition& t : succ) {
    if (t.prob > 0.0 && !y[t.target]) return false;
  }
  return true;
}

// Reverse edges of an Mdp: for each target, the choices leading to it.
struct Predecessors {
  std::vector<int> offset;
  std::vector<int> choice;
};

Predecessors BuildPredecessors(const Mdp& m) {
  Predecessors p;
  const int n = m.num_states();
  p.offset.assign(n + 1, 0);
  for (int c = 0; c < m.num_choices(); ++c) {
    for (const Transition& t : m.successors(c)) {
      if (t.prob > 0.0) ++p.offset[t.target + 1];
    }
  }
  for (int s = 0; s < n; ++s) p.offset[s + 1] += p.offset[s];
  p.choice.resize(p.offset[n]);
  std::vector<int> fill(p.offset.begin(), p.offset.end() - 1);
  for (int c = 0; c < m.num_choices(); ++c) {
    for (const Transition& t : m.successors(c)) {
      if (t.prob > 0.0) p.choice[fill[t.target]++] = c;
    }
  }
  return p;
}

std::vector<int> ChoiceOwner(const Mdp& m) {
  std::vector<int> owner(m.num_choices());
  for (int s = 0; s < m.num_states(); ++s) {
    for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) owner[c] = s;
  }
  return owner;
}

// Existential backward reachability of `target` through `through`.
StateSet ExistsReach(const Mdp& m, const StateSet& through, const StateSet& target) {
  const Predecessors pred = BuildPredecessors(m);
  const std::vector<int> owner = ChoiceOwner(m);
  StateSet x = target;
  std::vector<int> stack;
  for (int s = 0; s < m.num_states(); ++s) {
    if (x[s]) stack.push_back(s);
  }
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int k = pred.offset[t]; k < pred.offset[t + 1]; ++k) {
      const int s = owner[pred.choice[k]];
      if (!x[s] && through[s]) {
        x[s] = 1;
        stack.push_back(s);
      }
    }
  }
  return x;
}

}  // namespace

StateSet PositiveUntil(const TwoPlayerGame& g, Side reacher, const StateSet& phi1,
                       const StateSet& phi2) {
  const int n = g.num_states();
  StateSet x = phi2;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (x[s] || !phi1[s]) continue;
      bool all_b = true;
      for (int b = 0; b < OpponentActions(g, reacher, s) && all_b; ++b) {
        bool some_a = false;
        for (int a = 0; a < ReacherActions(g, reacher, s) && !some_a; ++a) {
          some_a = Hits(g.successors(ChoiceFor(g, reacher, s, a, b)), x);
        }
        all_b = some_a;
      }
      if (all_b) {
        x[s] = 1;
        changed = true;
      }
    }
  }
  return x;
}

StateSet AlmostSureUntil(const TwoPlayerGame& g, Side reacher, const StateSet& phi1,
                         const StateSet& phi2) {
  const int n = g.num_states();
  StateSet y = FullSet(n);
  std::vector<std::vector<uint8_t>> safe(n);
  while (true) {
    // Reacher actions that stay in y against every opponent action.
    for (int s = 0; s < n; ++s) {
      const int na = ReacherActions(g, reacher, s);
      const int nb = OpponentActions(g, reacher, s);
      safe[s].assign(na, 1);
      for (int a = 0; a < na; ++a) {
        for (int b = 0; b < nb && safe[s][a]; ++b) {
          safe[s][a] = Inside(g.successors(ChoiceFor(g, reacher, s, a, b)), y);
        }
      }
    }
    StateSet x = Intersect(phi2, y);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < n; ++s) {
        if (x[s] || !phi1[s] || !y[s]) continue;
        const int na = ReacherActions(g, reacher, s);
        const int nb = OpponentActions(g, reacher, s);
        bool any_safe = false;
        for (int a = 0; a < na; ++a) any_safe = any_safe || safe[s][a];
        if (!any_safe) continue;
        bool all_b = true;
        for (int b = 0; b < nb && all_b; ++b) {
          bool some_a = false;
          for (int a = 0; a < na && !some_a; ++a) {
            some_a = safe[s][a] && Hits(g.successors(ChoiceFor(g, reacher, s, a, b)), x);
          }
          all_b = some_a;
        }
        if (all_b) {
          x[s] = 1;
          changed = true;
        }
      }
    }
    if (x == y) return y;
    y = std::move(x);
  }
}

std::vector<std::vector<double>> AlmostSureStrategy(const TwoPlayerGame& g, Side reacher,
                                                    const StateSet& phi2,
                                                    const StateSet& winning) {
  const int n = g.num_states();
  std::vector<std::vector<double>> out(n);
  for (int s = 0; s < n; ++s) {
    if (!winning[s] || phi2[s]) continue;
    const int na = ReacherActions(g, reacher, s);
    const int nb = OpponentActions(g, reacher, s);
    std::vector<double> d(na, 0.0);
    int count = 0;
    for (int a = 0; a < na; ++a) {
      bool ok = true;
      for (int b = 0; b < nb && ok; ++b) ok = Inside(g.successors(ChoiceFor(g, reacher, s, a, b)), winning);
      if (ok) {
        d[a] = 1.0;
        ++count;
      }
    }
    if (count == 0) continue;
    for (double& x : d) x /= count;
    out[s] = std::move(d);
  }
  return out;
}

QualitativeSets Prob0Prob1(const TwoPlayerGame& g, Side reacher, const StateSet& phi1,
                           const StateSet& phi2) {
  QualitativeSets q;
  q.prob0 = Complement(PositiveUntil(g, reacher, phi1, phi2));
  q.prob1 = AlmostSureUntil(g, reacher, phi1, phi2);
  return q;
}

StateSet InfiniteRewardStates(const TwoPlayerGame& g, Side minimizer, const StateSet& target) {
  return Complement(AlmostSureUntil(g, minimizer, FullSet(g.num_states()), target));
}

StateSet Prob0A(const Mdp& m, const StateSet& phi1, const StateSet& phi2) {
  return Complement(ExistsReach(m, phi1, phi2));
}

StateSet Prob0E(const Mdp& m, const StateSet& phi1, const StateSet& phi2) {
  // Complement of: every choice reaches the positive region.
  const int n = m.num_states();
  const Predecessors pred = BuildPredecessors(m);
  const std::vector<int> owner = ChoiceOwner(m);
  StateSet x = phi2;
  std::vector<int> hit_count(n, 0);
  std::vector<uint8_t> choice_hit(m.num_choices(), 0);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (x[s]) stack.push_back(s);
  }
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int k = pred.offset[t]; k < pred.offset[t + 1]; ++k) {
      const int c = pred.choice[k];
      if (choice_hit[c]) continue;
      choice_hit[c] = 1;
      const int s = owner[c];
      if (x[s] || !phi1[s]) continue;
      if (++hit_count[s] == m.num_choices(s)) {
        x[s] = 1;
        stack.push_back(s);
      }
    }
  }
  return Complement(x);
}

StateSet Prob1A(const Mdp& m, const StateSet& phi1, const StateSet& phi2) {
  const StateSet zero = Prob0E(m, phi1, phi2);
  const StateSet through = Minus(phi1, phi2);
  return Complement(ExistsReach(m, through, zero));
}

StateSet Prob1E(const Mdp& m, const StateSet& phi1, const StateSet& phi2) {
  const int n = m.num_states();
  StateSet y = FullSet(n);
  while (true) {
    StateSet x = Intersect(phi2, y);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < n; ++s) {
        if (x[s] || !phi1[s] || !y[s]) continue;
        for (int c = m.choice_begin(s); c < m.choice_end(s); ++c) {
          if (Inside(m.successors(c), y) && Hits(m.successors(c), x)) {
            x[s] = 1;
            changed = true;
            break;
          }
        }
      }
    }
    if (x == y) return y;
    y = std::move(x);
  }
}

AssumptionReport CheckNegativeRewardAbsorption(const TwoPlayerGame& g, const RewardStructure& r,
                                               const StateSet& target) {
  const int n = g.num_states();
  // Greatest zero-reward region closed under all joint actions.
  StateSet z = FullSet(n);
  for (int s = 0; s < n; ++s) {
    if (r.state[s] != 0.0) z[s] = 0;
    for (int c = g.choice_begin(s); c < g.choice_end(s) && z[s]; ++c) {
      if (r.action[c] != 0.0) z[s] = 0;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (!z[s]) continue;
      for (int c = g.choice_begin(s); c < g.choice_end(s); ++c) {
        if (!Inside(g.successors(c), z)) {
          z[s] = 0;
          changed = true;
          break;
        }
      }
    }
  }
  const StateSet goal = Union(target, z);
  const StateSet sure = Prob1A(g.mdp(), FullSet(n), goal);
  AssumptionReport rep;
  for (int s = 0; s < n; ++s) {
    if (!g.active()[s]) continue;
    bool negative = r.state[s] < 0.0;
    for (int c = g.choice_begin(s); c < g.choice_end(s) && !negative; ++c) {
      negative = r.action[c] < 0.0;
    }
    if (negative && !sure[s]) rep.violating_states.push_back(s);
  }
  rep.holds = rep.violating_states.empty();
  if (!rep.holds) {
    rep.message = "negative rewards at states that can avoid the target and the zero-reward region forever:";
    for (int s : rep.violating_states) rep.message += " " + g.state_name(s);
  }
  return rep;
}

AssumptionReport CheckAbsorption(const TwoPlayerGame& g, const StateSet& target,
                                 const std::string& what) {
  const int n = g.num_states();
  const StateSet sure = Prob1A(g.mdp(), FullSet(n), target);
  AssumptionReport rep;
  for (int s = 0; s < n; ++s) {
    if (g.active()[s] && !sure[s]) rep.violating_states.push_back(s);
  }
  rep.holds = rep.violating_states.empty();
  if (!rep.holds) {
    rep.message = what + ": some profile avoids the absorbing target forever from states:";
    for (int s : rep.violating_states) rep.message += " " + g.state_name(s);
  }
  return rep;
}

}  // namespace csg
