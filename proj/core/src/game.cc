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

#include "csg/game.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "csg/error.h"
#include "csg/model.h"

namespace csg {

StateSet EmptySet(int n) { return StateSet(n, 0); }
StateSet FullSet(int n) { return StateSet(n, 1); }

StateSet Complement(const StateSet& a) {
  StateSet r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = !a[i];
  return r;
}

StateSet Intersect(const StateSet& a, const StateSet& b) {
  StateSet r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
  return r;
}

StateSet Union(const StateSet& a, const StateSet& b) {
  StateSet r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
  return r;
}

StateSet Minus(const StateSet& a, const StateSet& b) {
  StateSet r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] && !b[i];
  return r;
}

int Count(const StateSet& a) {
  int n = 0;
  for (uint8_t v : a) n += v ? 1 : 0;
  return n;
}

// ---------------------------------------------------------------------------
// Mdp

void Mdp::AddChoice(std::span<const Transition> dist) {
  succ_.insert(succ_.end(), dist.begin(), dist.end());
  succ_offset_.push_back(static_cast<int>(succ_.size()));
  ++choice_offset_.back();
}

void Mdp::Reserve(int states, int choices, int transitions) {
  choice_offset_.reserve(states + 1);
  succ_offset_.reserve(choices + 1);
  succ_.reserve(transitions);
}

int Mdp::state_of_choice(int c) const {
  auto it = std::upper_bound(choice_offset_.begin(), choice_offset_.end(), c);
  return static_cast<int>(it - choice_offset_.begin()) - 1;
}

StateSet Mdp::Reachable(const StateSet& from) const {
  const int n = num_states();
  StateSet seen = from;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) stack.push_back(s);
  }
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int c = choice_begin(s); c < choice_end(s); ++c) {
      for (const Transition& t : successors(c)) {
        if (t.prob > 0.0 && !seen[t.target]) {
          seen[t.target] = 1;
          stack.push_back(t.target);
        }
      }
    }
  }
  return seen;
}

// ---------------------------------------------------------------------------
// Csg

int Csg::FindPlayer(const std::string& name) const {
  for (int p = 0; p < num_players(); ++p) {
    if (player_names_[p] == name) return p;
  }
  return -1;
}

int Csg::FindState(int id) const {
  auto it = std::lower_bound(state_ids_.begin(), state_ids_.end(), id);
  if (it == state_ids_.end() || *it != id) return -1;
  return static_cast<int>(it - state_ids_.begin());
}

std::vector<int> Csg::DecodeChoice(int s, int local) const {
  const int n = num_players();
  std::vector<int> acts(n, kIdle);
  for (int p = n - 1; p >= 0; --p) {
    const auto& av = available_[s][p];
    if (av.empty()) continue;
    const int radix = static_cast<int>(av.size());
    acts[p] = av[local % radix];
    local /= radix;
  }
  return acts;
}

int Csg::EncodeChoice(int s, std::span<const int> acts) const {
  const int n = num_players();
  if (static_cast<int>(acts.size()) != n) return -1;
  int local = 0;
  for (int p = 0; p < n; ++p) {
    const auto& av = available_[s][p];
    if (av.empty()) {
      if (acts[p] != kIdle) return -1;
      continue;
    }
    auto it = std::find(av.begin(), av.end(), acts[p]);
    if (it == av.end()) return -1;
    local = local * static_cast<int>(av.size()) + static_cast<int>(it - av.begin());
  }
  return local;
}

std::string Csg::JointActionName(int s, int local) const {
  const std::vector<int> acts = DecodeChoice(s, local);
  std::string out = "(";
  for (int p = 0; p < num_players(); ++p) {
    if (p > 0) out += ",";
    out += acts[p] == kIdle ? std::string("-") : actions_[p][acts[p]];
  }
  return out + ")";
}

class CsgAssembler {
 public:
  static Csg Build(const ModelSpec& spec);
};

namespace {

std::string TupleText(const std::vector<std::string>& acts) {
  std::string out = "(";
  for (size_t i = 0; i < acts.size(); ++i) {
    if (i > 0) out += ",";
    out += acts[i];
  }
  return out + ")";
}

}  // namespace

Csg CsgAssembler::Build(const ModelSpec& spec) {
  Csg g;
  const int np = static_cast<int>(spec.players.size());
  if (np == 0) throw ModelError("at least one player required");
  std::map<std::string, std::pair<int, int>> action_owner;
  for (int p = 0; p < np; ++p) {
    const auto& pl = spec.players[p];
    for (int q = 0; q < p; ++q) {
      if (g.player_names_[q] == pl.name) throw ModelError("duplicate player " + pl.name);
    }
    g.player_names_.push_back(pl.name);
    g.actions_.push_back(pl.actions);
    for (int a = 0; a < static_cast<int>(pl.actions.size()); ++a) {
      const std::string& name = pl.actions[a];
      if (name == "-") throw ModelError("'-' is reserved for the idle action");
      if (!action_owner.emplace(name, std::make_pair(p, a)).second) {
        throw ModelError("action " + name + " declared twice");
      }
    }
  }

  std::vector<const ModelSpec::State*> states;
  for (const auto& st : spec.states) states.push_back(&st);
  std::sort(states.begin(), states.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });
  for (size_t i = 1; i < states.size(); ++i) {
    if (states[i]->id == states[i - 1]->id) {
      throw ModelError("state " + std::to_string(states[i]->id) + " declared twice");
    }
  }
  const int ns = static_cast<int>(states.size());
  if (ns == 0) throw ModelError("model has no states");
  for (const auto* st : states) g.state_ids_.push_back(st->id);
  g.initial_ = EmptySet(ns);
  for (int s = 0; s < ns; ++s) {
    if (states[s]->initial) g.initial_[s] = 1;
    for (const std::string& l : states[s]->labels) {
      auto& set = g.labels_[l];
      if (set.empty()) set = EmptySet(ns);
      set[s] = 1;
    }
  }
  if (Count(g.initial_) == 0) throw ModelError("no initial state");

  auto index_of = [&](int id, const char* what) {
    const int s = g.FindState(id);
    if (s < 0) {
      throw ModelError(std::string("dangling state index ") + std::to_string(id) + " in " + what);
    }
    return s;
  };

  auto decode_tuple = [&](const std::vector<std::string>& acts, int id) {
    if (static_cast<int>(acts.size()) != np) {
      throw ModelError("action tuple " + TupleText(acts) + " at state " + std::to_string(id) +
                       " does not have one entry per player");
    }
    std::vector<int> out(np, kIdle);
    for (int p = 0; p < np; ++p) {
      if (acts[p] == "-") continue;
      auto it = action_owner.find(acts[p]);
      if (it == action_owner.end() || it->second.first != p) {
        throw ModelError("action " + acts[p] + " is not an action of player " +
                         g.player_names_[p]);
      }
      out[p] = it->second.second;
    }
    return out;
  };

  // Available sets from the declared transitions.
  std::vector<std::vector<const ModelSpec::Trans*>> by_state(ns);
  g.available_.assign(ns, std::vector<std::vector<int>>(np));
  std::vector<std::vector<uint8_t>> idle_seen(ns, std::vector<uint8_t>(np, 0));
  for (const auto& tr : spec.transitions) {
    const int s = index_of(tr.state, "transition source");
    const std::vector<int> acts = decode_tuple(tr.actions, tr.state);
    for (int p = 0; p < np; ++p) {
      if (acts[p] == kIdle) {
        idle_seen[s][p] = 1;
      } else {
        auto& av = g.available_[s][p];
        if (std::find(av.begin(), av.end(), acts[p]) == av.end()) av.push_back(acts[p]);
      }
    }
    by_state[s].push_back(&tr);
  }
  for (int s = 0; s < ns; ++s) {
    for (int p = 0; p < np; ++p) {
      auto& av = g.available_[s][p];
      std::sort(av.begin(), av.end());
      if (!av.empty() && idle_seen[s][p]) {
        throw ModelError("player " + g.player_names_[p] + " is both idle and active at state " +
                         std::to_string(g.state_ids_[s]));
      }
    }
    if (by_state[s].empty()) {
      throw ModelError("state " + std::to_string(g.state_ids_[s]) + " has no transitions");
    }
  }

  // Transitions in joint-action order.
  std::vector<int> choice_offset(ns + 1, 0);
  for (int s = 0; s < ns; ++s) {
    int n = 1;
    for (int p = 0; p < np; ++p) n *= std::max<int>(1, static_cast<int>(g.available_[s][p].size()));
    choice_offset[s + 1] = choice_offset[s] + n;
  }
  std::vector<std::vector<Transition>> dists(choice_offset[ns]);
  std::vector<uint8_t> defined(choice_offset[ns], 0);
  for (int s = 0; s < ns; ++s) {
    for (const auto* tr : by_state[s]) {
      const std::vector<int> acts = decode_tuple(tr->actions, tr->state);
      const int local = g.EncodeChoice(s, acts);
      const int c = choice_offset[s] + local;
      if (defined[c]) {
        throw ModelError("duplicate transition for " + TupleText(tr->actions) + " at state " +
                         std::to_string(tr->state));
      }
      defined[c] = 1;
      double sum = 0.0;
      std::map<int, double> merged;
      for (const auto& o : tr->outcomes) {
        if (!(o.prob >= 0.0) || !std::isfinite(o.prob)) {
          throw ModelError("invalid probability at state " + std::to_string(tr->state));
        }
        merged[index_of(o.target, "transition target")] += o.prob;
        sum += o.prob;
      }
      if (std::abs(sum - 1.0) > kDistributionTolerance) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", sum);
        throw ModelError(std::string("distribution sums to ") + buf + " at state " +
                         std::to_string(tr->state) + " action " + TupleText(tr->actions));
      }
      for (const auto& [t, p] : merged) {
        if (p > 0.0) dists[c].push_back({t, p / sum});
      }
    }
    for (int c = choice_offset[s]; c < choice_offset[s + 1]; ++c) {
      if (!defined[c]) {
        const std::vector<int> acts = g.DecodeChoice(s, c - choice_offset[s]);
        throw ModelError("missing transition for joint action " +
                         g.JointActionName(s, c - choice_offset[s]) + " at state " +
                         std::to_string(g.state_ids_[s]));
      }
    }
  }
  g.graph_.Reserve(ns, choice_offset[ns], 0);
  for (int s = 0; s < ns; ++s) {
    g.graph_.AddState();
    for (int c = choice_offset[s]; c < choice_offset[s + 1]; ++c) g.graph_.AddChoice(dists[c]);
  }

  // Rewards; unspecified entries are zero.
  auto reward = [&](const std::string& name) -> RewardStructure& {
    auto& r = g.rewards_[name];
    if (r.state.empty()) {
      r.state.assign(ns, 0.0);
      r.action.assign(choice_offset[ns], 0.0);
    }
    return r;
  };
  std::set<std::pair<std::string, int>> seen_state;
  for (const auto& sr : spec.state_rewards) {
    const int s = index_of(sr.state, "reward");
    if (!seen_state.emplace(sr.name, s).second) {
      throw ModelError("state reward " + sr.name + " defined twice at state " +
                       std::to_string(sr.state));
    }
    reward(sr.name).state[s] = sr.value;
  }
  std::set<std::pair<std::string, int>> seen_action;
  for (const auto& ar : spec.action_rewards) {
    const int s = index_of(ar.state, "reward");
    const std::vector<int> acts = decode_tuple(ar.actions, ar.state);
    const int local = g.EncodeChoice(s, acts);
    if (local < 0) {
      throw ModelError("reward " + ar.name + " on disabled joint action " +
                       TupleText(ar.actions) + " at state " + std::to_string(ar.state));
    }
    const int c = choice_offset[s] + local;
    if (!seen_action.emplace(ar.name, c).second) {
      throw ModelError("action reward " + ar.name + " defined twice for " +
                       TupleText(ar.actions) + " at state " + std::to_string(ar.state));
    }
    reward(ar.name).action[c] = ar.value;
  }
  for (auto& [name, r] : g.rewards_) {
    for (double v : r.state) {
      if (!std::isfinite(v)) throw ModelError("non-finite reward in " + name);
    }
    for (double v : r.action) {
      if (!std::isfinite(v)) throw ModelError("non-finite reward in " + name);
    }
  }

  g.reachable_ = g.graph_.Reachable(g.initial_);
  return g;
}

Csg BuildCsg(const ModelSpec& spec) { return CsgAssembler::Build(spec); }

// ---------------------------------------------------------------------------
// TwoPlayerGame

int TwoPlayerGame::AddState(std::string name, std::vector<std::string> row_names,
                            std::vector<std::string> col_names) {
  rows_.push_back(static_cast<int>(row_names.size()));
  cols_.push_back(static_cast<int>(col_names.size()));
  row_names_.push_back(std::move(row_names));
  col_names_.push_back(std::move(col_names));
  state_names_.push_back(std::move(name));
  mdp_.AddState();
  return num_states() - 1;
}

void TwoPlayerGame::AddChoice(std::span<const Transition> dist) { mdp_.AddChoice(dist); }

void TwoPlayerGame::SetCoalitions(std::vector<int> c1, std::vector<int> c2,
                                  std::vector<int> csg_choice) {
  coalition1_ = std::move(c1);
  coalition2_ = std::move(c2);
  csg_choice_ = std::move(csg_choice);
}

const StateSet& TwoPlayerGame::Label(const std::string& name) const {
  auto it = labels_.find(name);
  if (it == labels_.end()) throw FormulaError("unknown label \"" + name + "\"");
  return it->second;
}

const RewardStructure& TwoPlayerGame::Reward(const std::string& name) const {
  auto it = rewards_.find(name);
  if (it == rewards_.end()) throw FormulaError("unknown reward structure \"" + name + "\"");
  return it->second;
}

void TwoPlayerGame::Finish(bool all_states) {
  const int n = num_states();
  for (int s = 0; s < n; ++s) {
    if (rows_[s] < 1 || cols_[s] < 1 || mdp_.num_choices(s) != rows_[s] * cols_[s]) {
      throw ModelError("state " + state_names_[s] + " has an inconsistent action block");
    }
  }
  if (static_cast<int>(initial_.size()) != n) initial_ = EmptySet(n);
  for (auto& [name, set] : labels_) {
    if (static_cast<int>(set.size()) != n) throw ModelError("label " + name + " has wrong size");
  }
  for (auto& [name, r] : rewards_) {
    if (static_cast<int>(r.state.size()) != n || static_cast<int>(r.action.size()) != num_choices()) {
      throw ModelError("reward " + name + " has wrong size");
    }
  }
  active_ = all_states ? FullSet(n) : mdp_.Reachable(initial_);
}

TwoPlayerGame CoalitionGame(const Csg& game, const std::vector<int>& coalition, bool all_states) {
  const int np = game.num_players();
  std::vector<uint8_t> in_c(np, 0);
  for (int p : coalition) {
    if (p < 0 || p >= np) throw FormulaError("coalition refers to an unknown player");
    if (in_c[p]) throw FormulaError("player listed twice in a coalition");
    in_c[p] = 1;
  }
  std::vector<int> c1;
  std::vector<int> c2;
  for (int p = 0; p < np; ++p) (in_c[p] ? c1 : c2).push_back(p);

  // Product action tuples for one side at one state, first member most
  // significant.
  auto side_tuples = [&](int s, const std::vector<int>& members) {
    std::vector<std::vector<int>> tuples{{}};
    for (int p : members) {
      const auto av = game.available(s, p);
      std::vector<std::vector<int>> next;
      for (const auto& t : tuples) {
        if (av.empty()) {
          auto u = t;
          u.push_back(kIdle);
          next.push_back(std::move(u));
        } else {
          for (int a : av) {
            auto u = t;
            u.push_back(a);
            next.push_back(std::move(u));
          }
        }
      }
      tuples = std::move(next);
    }
    return tuples;
  };
  auto tuple_name = [&](const std::vector<int>& members, const std::vector<int>& t) {
    if (members.empty()) return std::string("-");
    auto one = [&](int k) {
      return t[k] == kIdle ? std::string("-") : game.actions(members[k])[t[k]];
    };
    if (members.size() == 1) return one(0);
    std::string out = "(";
    for (size_t k = 0; k < members.size(); ++k) {
      if (k > 0) out += ",";
      out += one(static_cast<int>(k));
    }
    return out + ")";
  };

  TwoPlayerGame g;
  std::vector<int> csg_choice;
  std::vector<int> joint(np, kIdle);
  for (int s = 0; s < game.num_states(); ++s) {
    const auto rows = side_tuples(s, c1);
    const auto cols = side_tuples(s, c2);
    std::vector<std::string> rn;
    std::vector<std::string> cn;
    for (const auto& t : rows) rn.push_back(tuple_name(c1, t));
    for (const auto& t : cols) cn.push_back(tuple_name(c2, t));
    g.AddState(std::to_string(game.state_id(s)), std::move(rn), std::move(cn));
    for (const auto& r : rows) {
      for (const auto& c : cols) {
        for (size_t k = 0; k < c1.size(); ++k) joint[c1[k]] = r[k];
        for (size_t k = 0; k < c2.size(); ++k) joint[c2[k]] = c[k];
        const int local = game.EncodeChoice(s, joint);
        if (local < 0) throw ModelError("coalition product produced a disabled joint action");
        const int gc = game.choice_begin(s) + local;
        g.AddChoice(game.successors(gc));
        csg_choice.push_back(gc);
      }
    }
  }
  g.SetInitial(game.initial());
  for (const auto& [name, set] : game.labels()) g.SetLabel(name, set);
  for (const auto& [name, r] : game.rewards()) {
    RewardStructure rr;
    rr.state = r.state;
    rr.action.resize(csg_choice.size());
    for (size_t c = 0; c < csg_choice.size(); ++c) rr.action[c] = r.action[csg_choice[c]];
    g.SetReward(name, std::move(rr));
  }
  g.SetCoalitions(std::move(c1), std::move(c2), std::move(csg_choice));
  g.Finish(all_states);
  return g;
}

}  // namespace csg
