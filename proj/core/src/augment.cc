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

#include "csg/augment.h"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "csg/error.h"

namespace csg {

using Kind = NzObjective::Kind;

bool NeedsAugmentation(const NzObjective& o1, const NzObjective& o2) {
  return o1.IsFinite() != o2.IsFinite();
}

AugmentedGame Augment(const TwoPlayerGame& g, const NzObjective& o1, const NzObjective& o2) {
  if (!NeedsAugmentation(o1, o2)) throw UnsupportedError("pair does not mix horizons");
  const bool first_finite = o1.IsFinite();
  const NzObjective& fin = first_finite ? o1 : o2;
  const NzObjective& inf = first_finite ? o2 : o1;
  const bool prob_pair = (fin.kind == Kind::kNext || fin.kind == Kind::kBoundedUntil) &&
                         inf.kind == Kind::kUntil;
  const bool reward_pair = (fin.kind == Kind::kInstantaneous || fin.kind == Kind::kCumulative) &&
                           inf.kind == Kind::kReach;
  if (!prob_pair && !reward_pair) {
    throw UnsupportedError("unsupported mix of finite and unbounded objectives");
  }
  const int k = fin.bound;
  int cap = 0;
  switch (fin.kind) {
    case Kind::kNext:
      cap = 2;
      break;
    case Kind::kBoundedUntil:
    case Kind::kInstantaneous:
      cap = k + 1;
      break;
    default:
      cap = k;
      break;
  }

  const int n = g.num_states();
  AugmentedGame out;
  out.base_states = n;
  out.cap = cap;
  TwoPlayerGame& p = out.game;
  const int total = n * (cap + 1);
  std::vector<int> csg_choice;
  std::vector<Transition> dist;
  for (int layer = 0; layer <= cap; ++layer) {
    const int next_layer = std::min(layer + 1, cap);
    for (int s = 0; s < n; ++s) {
      std::vector<std::string> rows(g.rows(s));
      std::vector<std::string> cols(g.cols(s));
      for (int i = 0; i < g.rows(s); ++i) rows[i] = g.row_name(s, i);
      for (int j = 0; j < g.cols(s); ++j) cols[j] = g.col_name(s, j);
      p.AddState(g.state_name(s) + "@" + std::to_string(layer), std::move(rows), std::move(cols));
      for (int c = g.choice_begin(s); c < g.choice_end(s); ++c) {
        dist.clear();
        for (const Transition& t : g.successors(c)) {
          dist.push_back({next_layer * n + t.target, t.prob});
        }
        p.AddChoice(dist);
        csg_choice.push_back(g.csg_choice(c));
      }
    }
  }
  StateSet init = EmptySet(total);
  for (int s = 0; s < n; ++s) {
    if (g.active()[s]) init[s] = 1;
  }
  p.SetInitial(std::move(init));
  if (g.csg_choice(0) >= 0 || g.num_choices() == 0) {
    p.SetCoalitions(g.coalition(0), g.coalition(1), std::move(csg_choice));
  }
  p.Finish(false);

  // Lifts a base state set to every layer.
  auto lift = [&](const StateSet& base) {
    StateSet x = EmptySet(total);
    for (int layer = 0; layer <= cap; ++layer) {
      for (int s = 0; s < n; ++s) x[layer * n + s] = base[s];
    }
    return x;
  };
  auto lift_reward = [&](const RewardStructure& r) {
    RewardStructure x;
    x.state.assign(total, 0.0);
    x.action.assign(p.num_choices(), 0.0);
    for (int layer = 0; layer <= cap; ++layer) {
      for (int s = 0; s < n; ++s) {
        const int ps = layer * n + s;
        x.state[ps] = r.state[s];
        for (int c = g.choice_begin(s); c < g.choice_end(s); ++c) {
          x.action[p.choice_begin(ps) + (c - g.choice_begin(s))] = r.action[c];
        }
      }
    }
    return x;
  };

  NzObjective f;
  NzObjective u = inf;
  if (inf.kind == Kind::kUntil) {
    u.phi1 = lift(inf.phi1);
    u.phi2 = lift(inf.phi2);
  } else {
    u.phi2 = lift(inf.phi2);
    u.reward = lift_reward(inf.reward);
  }
  switch (fin.kind) {
    case Kind::kNext:
      f.kind = Kind::kUntil;
      f.phi1 = FullSet(total);
      f.phi2 = EmptySet(total);
      for (int s = 0; s < n; ++s) f.phi2[1 * n + s] = fin.phi2[s];
      break;
    case Kind::kBoundedUntil:
      f.kind = Kind::kUntil;
      f.phi1 = EmptySet(total);
      f.phi2 = EmptySet(total);
      for (int layer = 0; layer <= k; ++layer) {
        for (int s = 0; s < n; ++s) {
          f.phi1[layer * n + s] = fin.phi1[s];
          f.phi2[layer * n + s] = fin.phi2[s];
        }
      }
      break;
    case Kind::kInstantaneous:
      f.kind = Kind::kReach;
      f.phi2 = EmptySet(total);
      f.reward.state.assign(total, 0.0);
      f.reward.action.assign(p.num_choices(), 0.0);
      for (int s = 0; s < n; ++s) {
        f.phi2[(k + 1) * n + s] = 1;
        f.reward.state[k * n + s] = fin.reward.state[s];
      }
      break;
    default: {
      f.kind = Kind::kReach;
      f.phi2 = EmptySet(total);
      for (int s = 0; s < n; ++s) f.phi2[k * n + s] = 1;
      const RewardStructure all = lift_reward(fin.reward);
      f.reward.state.assign(total, 0.0);
      f.reward.action.assign(p.num_choices(), 0.0);
      for (int layer = 0; layer < k; ++layer) {
        for (int s = 0; s < n; ++s) {
          const int ps = layer * n + s;
          f.reward.state[ps] = all.state[ps];
          for (int c = p.choice_begin(ps); c < p.choice_end(ps); ++c) f.reward.action[c] = all.action[c];
        }
      }
      break;
    }
  }
  out.o1 = first_finite ? std::move(f) : std::move(u);
  out.o2 = first_finite ? std::move(u) : std::move(f);
  return out;
}

}  // namespace csg
