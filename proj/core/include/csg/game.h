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

#ifndef CSG_GAME_H_
#define CSG_GAME_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace csg {

// Per-state membership flags. Bytes rather than bits so that distinct
// states can be written from different threads.
using StateSet = std::vector<uint8_t>;

StateSet EmptySet(int n);
StateSet FullSet(int n);
StateSet Complement(const StateSet& a);
StateSet Intersect(const StateSet& a, const StateSet& b);
StateSet Union(const StateSet& a, const StateSet& b);
StateSet Minus(const StateSet& a, const StateSet& b);
int Count(const StateSet& a);

struct Transition {
  int target = 0;
  double prob = 0.0;

  bool operator==(const Transition&) const = default;
};

// Rewards attached to states and to choices (joint actions). The choice
// vector is aligned with the owning structure's global choice indices.
struct RewardStructure {
  std::vector<double> state;
  std::vector<double> action;
};

// Sparse nondeterministic transition structure: each state owns a
// contiguous block of choices, each choice a distribution.
class Mdp {
 public:
  int num_states() const { return static_cast<int>(choice_offset_.size()) - 1; }
  int num_choices() const { return static_cast<int>(succ_offset_.size()) - 1; }
  int choice_begin(int s) const { return choice_offset_[s]; }
  int choice_end(int s) const { return choice_offset_[s + 1]; }
  int num_choices(int s) const { return choice_end(s) - choice_begin(s); }
  int state_of_choice(int c) const;
  std::span<const Transition> successors(int c) const {
    return {succ_.data() + succ_offset_[c], succ_.data() + succ_offset_[c + 1]};
  }

  // Construction: states in order, each followed by its choices.
  void AddState() { choice_offset_.push_back(choice_offset_.back()); }
  void AddChoice(std::span<const Transition> dist);
  void Reserve(int states, int choices, int transitions);

  // States reachable from `from` in the underlying graph.
  StateSet Reachable(const StateSet& from) const;

 private:
  std::vector<int> choice_offset_{0};
  std::vector<int> succ_offset_{0};
  std::vector<Transition> succ_;
};

inline constexpr int kIdle = -1;

// n-player concurrent stochastic game over dense state indices. Joint
// actions at a state are indexed in mixed radix over the players'
// available sets (first player most significant); a player with no
// available action is idle.
class Csg {
 public:
  int num_players() const { return static_cast<int>(player_names_.size()); }
  const std::string& player_name(int p) const { return player_names_[p]; }
  const std::vector<std::string>& actions(int p) const { return actions_[p]; }
  int FindPlayer(const std::string& name) const;

  int num_states() const { return static_cast<int>(state_ids_.size()); }
  int state_id(int s) const { return state_ids_[s]; }
  int FindState(int id) const;

  std::span<const int> available(int s, int p) const { return available_[s][p]; }
  int choice_begin(int s) const { return graph_.choice_begin(s); }
  int num_choices(int s) const { return graph_.num_choices(s); }
  std::vector<int> DecodeChoice(int s, int local) const;
  // Local joint-action index, or -1 if the tuple is not enabled.
  int EncodeChoice(int s, std::span<const int> acts) const;
  std::span<const Transition> successors(int global_choice) const {
    return graph_.successors(global_choice);
  }
  const Mdp& graph() const { return graph_; }

  const StateSet& initial() const { return initial_; }
  const StateSet& reachable() const { return reachable_; }
  const std::map<std::string, StateSet>& labels() const { return labels_; }
  const std::map<std::string, RewardStructure>& rewards() const { return rewards_; }

  std::string JointActionName(int s, int local) const;

 private:
  friend class CsgAssembler;

  std::vector<std::string> player_names_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<int> state_ids_;
  std::vector<std::vector<std::vector<int>>> available_;
  Mdp graph_;
  StateSet initial_;
  StateSet reachable_;
  std::map<std::string, StateSet> labels_;
  std::map<std::string, RewardStructure> rewards_;
};

// Two-player concurrent game: at state s, player 1 picks a row and player 2
// a column; choice index = choice_begin(s) + row * cols(s) + col. Used for
// coalition games and product constructions.
class TwoPlayerGame {
 public:
  int num_states() const { return static_cast<int>(rows_.size()); }
  int rows(int s) const { return rows_[s]; }
  int cols(int s) const { return cols_[s]; }
  int choice(int s, int i, int j) const { return mdp_.choice_begin(s) + i * cols_[s] + j; }
  int choice_begin(int s) const { return mdp_.choice_begin(s); }
  int choice_end(int s) const { return mdp_.choice_end(s); }
  int num_choices() const { return mdp_.num_choices(); }
  std::span<const Transition> successors(int c) const { return mdp_.successors(c); }
  const std::string& row_name(int s, int i) const { return row_names_[s][i]; }
  const std::string& col_name(int s, int j) const { return col_names_[s][j]; }
  const std::string& state_name(int s) const { return state_names_[s]; }

  // The induced MDP: every joint action becomes one choice, same indices.
  const Mdp& mdp() const { return mdp_; }

  const StateSet& initial() const { return initial_; }
  // States taking part in computations (reachable unless all states were
  // requested).
  const StateSet& active() const { return active_; }
  const std::map<std::string, StateSet>& labels() const { return labels_; }
  const std::map<std::string, RewardStructure>& rewards() const { return rewards_; }
  const StateSet& Label(const std::string& name) const;
  const RewardStructure& Reward(const std::string& name) const;

  // Coalition back-mapping (empty for games not built from a Csg).
  const std::vector<int>& coalition(int side) const { return side == 0 ? coalition1_ : coalition2_; }
  int csg_choice(int c) const { return csg_choice_.empty() ? -1 : csg_choice_[c]; }

  // Construction: AddState, then rows*cols AddChoice calls in row-major
  // order; then SetInitial/SetLabel/SetReward and Finish.
  int AddState(std::string name, std::vector<std::string> row_names,
               std::vector<std::string> col_names);
  void AddChoice(std::span<const Transition> dist);
  void SetInitial(StateSet initial) { initial_ = std::move(initial); }
  void SetLabel(const std::string& name, StateSet set) { labels_[name] = std::move(set); }
  void SetReward(const std::string& name, RewardStructure r) { rewards_[name] = std::move(r); }
  void SetCoalitions(std::vector<int> c1, std::vector<int> c2, std::vector<int> csg_choice);
  // Validates shape and computes the active set.
  void Finish(bool all_states);

 private:
  std::vector<int> rows_;
  std::vector<int> cols_;
  std::vector<std::vector<std::string>> row_names_;
  std::vector<std::vector<std::string>> col_names_;
  std::vector<std::string> state_names_;
  Mdp mdp_;
  StateSet initial_;
  StateSet active_;
  std::map<std::string, StateSet> labels_;
  std::map<std::string, RewardStructure> rewards_;
  std::vector<int> coalition1_;
  std::vector<int> coalition2_;
  std::vector<int> csg_choice_;
};

// Groups `coalition` (player indices) as player 1 and the remaining players
// as player 2. Either side may be empty, in which case it only idles.
TwoPlayerGame CoalitionGame(const Csg& game, const std::vector<int>& coalition,
                            bool all_states = false);

}  // namespace csg

#endif  // CSG_GAME_H_
