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

#ifndef CSG_QUALITATIVE_H_
#define CSG_QUALITATIVE_H_

#include <string>
#include <vector>

#include "csg/game.h"

namespace csg {

// Which player of a two-player game plays for the objective.
enum class Side { kRow, kCol };

inline Side Opponent(Side s) { return s == Side::kRow ? Side::kCol : Side::kRow; }

// States where `reacher` can make phi1 U phi2 hold with positive
// probability against every opponent strategy.
StateSet PositiveUntil(const TwoPlayerGame& g, Side reacher, const StateSet& phi1,
                       const StateSet& phi2);

// States where `reacher` can make phi1 U phi2 hold with probability one
// (almost-sure winning, computed by the nested fixpoint over Apre).
StateSet AlmostSureUntil(const TwoPlayerGame& g, Side reacher, const StateSet& phi1,
                         const StateSet& phi2);

// Reacher distribution at each state of `winning` (the almost-sure set)
// outside phi2: uniform over the actions that keep every successor inside
// `winning`. Empty vectors elsewhere.
std::vector<std::vector<double>> AlmostSureStrategy(const TwoPlayerGame& g, Side reacher,
                                                    const StateSet& phi2,
                                                    const StateSet& winning);

struct QualitativeSets {
  StateSet prob0;  // value 0
  StateSet prob1;  // almost-sure winning for the reacher
};

QualitativeSets Prob0Prob1(const TwoPlayerGame& g, Side reacher, const StateSet& phi1,
                           const StateSet& phi2);

// States where the player minimising an expected reachability reward
// cannot reach `target` almost surely: their value is infinite.
StateSet InfiniteRewardStates(const TwoPlayerGame& g, Side minimizer, const StateSet& target);

// MDP precomputations for phi1 U phi2. E = some scheduler, A = all.
StateSet Prob0A(const Mdp& m, const StateSet& phi1, const StateSet& phi2);  // Pmax = 0
StateSet Prob0E(const Mdp& m, const StateSet& phi1, const StateSet& phi2);  // Pmin = 0
StateSet Prob1A(const Mdp& m, const StateSet& phi1, const StateSet& phi2);  // Pmin = 1
StateSet Prob1E(const Mdp& m, const StateSet& phi1, const StateSet& phi2);  // Pmax = 1

struct AssumptionReport {
  bool holds = true;
  std::vector<int> violating_states;
  std::string message;
};

// Every state with a negative reward reaches target or the zero-reward
// closed region with probability one under all profiles.
AssumptionReport CheckNegativeRewardAbsorption(const TwoPlayerGame& g, const RewardStructure& r,
                                               const StateSet& target);

// Every active state reaches `target` with probability one under all
// profiles. `what` names the objective in the message.
AssumptionReport CheckAbsorption(const TwoPlayerGame& g, const StateSet& target,
                                 const std::string& what);

}  // namespace csg

#endif  // CSG_QUALITATIVE_H_
