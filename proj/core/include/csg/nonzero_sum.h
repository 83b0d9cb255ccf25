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

#ifndef CSG_NONZERO_SUM_H_
#define CSG_NONZERO_SUM_H_

#include <cstdint>
#include <vector>

#include "csg/formula.h"
#include "csg/game.h"
#include "csg/iteration.h"
#include "csg/zero_sum.h"

namespace csg {

// One objective of an equilibrium query, with its operands already
// evaluated on the game.
struct NzObjective {
  enum class Kind { kNext, kBoundedUntil, kUntil, kInstantaneous, kCumulative, kReach };
  Kind kind = Kind::kUntil;
  StateSet phi1;  // until: left operand
  StateSet phi2;  // next operand, until right operand, reachability target
  RewardStructure reward;
  int bound = 0;

  bool IsFinite() const { return kind != Kind::kUntil && kind != Kind::kReach; }
};

struct NzOptions {
  IterationSettings iteration;
  int workers = 1;
  // kMax: social welfare, kMin: social cost.
  Optimum optimum = Optimum::kMax;
};

// Which objectives are fixed at a state (their value can no longer change).
enum Decided : uint8_t { kNoneDecided = 0, kFirstDecided = 1, kSecondDecided = 2, kBothDecided = 3 };

struct NzLayer {
  StrategyLayer row;
  StrategyLayer col;
  std::vector<uint8_t> decided;
};

struct NzResult {
  std::vector<double> v1;
  std::vector<double> v2;
  bool finite = false;
  // Finite horizon: k = min(k1, k2); layers[n] is used with n steps left
  // (t = k - n steps taken), n = 0..k. Infinite horizon: one layer.
  int horizon = 0;
  int bound1 = 0;
  int bound2 = 0;
  std::vector<NzLayer> layers;
  // Cooperative MDP strategies (global choice per state) used once an
  // objective is decided: mdp[i][m] optimises objective i with m steps of
  // that objective left (single layer for unbounded objectives).
  std::vector<std::vector<int>> mdp[2];
  int iterations = 0;
  bool converged = true;
  std::vector<Diagnostic> diagnostics;
};

// SWNE (or SCNE) values of the pair (o1, o2) where the row player of `g`
// is the first coalition. Both objectives must be finite-horizon, or both
// must be unbounded; mixed pairs go through Augment first.
NzResult SolveNonzeroSum(const TwoPlayerGame& g, const NzObjective& o1, const NzObjective& o2,
                         const NzOptions& options = {});

}  // namespace csg

#endif  // CSG_NONZERO_SUM_H_
