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

#ifndef CSG_MDP_H_
#define CSG_MDP_H_

#include <optional>
#include <vector>

#include "csg/formula.h"
#include "csg/game.h"
#include "csg/iteration.h"

namespace csg {

struct MdpResult {
  std::vector<double> values;
  // Chosen global choice per state, -1 where no choice matters.
  std::vector<int> strategy;
  int iterations = 0;
  bool converged = true;
};

// Backward induction results indexed by remaining steps n = 0..k.
struct MdpLayers {
  std::vector<std::vector<double>> values;
  // strategy[n][s]: choice used with n steps remaining (n >= 1).
  std::vector<std::vector<int>> strategy;
};

// `active` restricts the computation (nullptr = all states); inactive
// states get NaN.
MdpResult MdpNext(const Mdp& m, Optimum opt, const StateSet& phi, const StateSet* active = nullptr);

MdpLayers MdpBoundedUntil(const Mdp& m, Optimum opt, const StateSet& phi1, const StateSet& phi2,
                          int k, const StateSet* active = nullptr);

MdpResult MdpUntil(const Mdp& m, Optimum opt, const StateSet& phi1, const StateSet& phi2,
                   const IterationSettings& settings, const StateSet* active = nullptr);

MdpLayers MdpInstantaneous(const Mdp& m, Optimum opt, const RewardStructure& r, int k,
                           const StateSet* active = nullptr);

MdpLayers MdpCumulative(const Mdp& m, Optimum opt, const RewardStructure& r, int k,
                        const StateSet* active = nullptr);

struct ReachRewardOptions {
  // Zero rewards are lifted to gamma in the upper-bound phase; default is
  // the mean absolute non-zero reward (1 if none).
  std::optional<double> gamma;
  // Plain iteration from 0: no infinite-state precomputation, no gamma
  // phase.
  bool plain = false;
};

MdpResult MdpReachReward(const Mdp& m, Optimum opt, const RewardStructure& r,
                         const StateSet& target, const IterationSettings& settings,
                         const ReachRewardOptions& options = {},
                         const StateSet* active = nullptr);

double DefaultGamma(const RewardStructure& r);

}  // namespace csg

#endif  // CSG_MDP_H_
