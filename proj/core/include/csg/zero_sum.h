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

#ifndef CSG_ZERO_SUM_H_
#define CSG_ZERO_SUM_H_

#include <optional>
#include <vector>

#include "csg/formula.h"
#include "csg/game.h"
#include "csg/iteration.h"

namespace csg {

// Mixed action per state; empty where nothing was computed.
using StrategyLayer = std::vector<std::vector<double>>;

struct ZsOptions {
  IterationSettings iteration;
  int workers = 1;
  // Reachability rewards: gamma for the upper-bound phase and the plain
  // variant (see ReachRewardOptions in mdp.h).
  std::optional<double> gamma;
  bool plain = false;
};

// Values of a zero-sum objective in a two-player game where the row player
// optimises `opt` and the column player the opposite.
struct ZsResult {
  std::vector<double> values;
  // Finite horizon: index n = steps remaining (1..k, entry 0 unused).
  // Infinite horizon: a single memoryless layer.
  std::vector<StrategyLayer> row;
  std::vector<StrategyLayer> col;
  // Finite horizon: values with n steps remaining, n = 0..k.
  std::vector<std::vector<double>> layers;
  int iterations = 0;
  bool converged = true;
  std::vector<Diagnostic> diagnostics;
};

ZsResult ZsNext(const TwoPlayerGame& g, Optimum opt, const StateSet& phi,
                const ZsOptions& options = {});
ZsResult ZsBoundedUntil(const TwoPlayerGame& g, Optimum opt, const StateSet& phi1,
                        const StateSet& phi2, int k, const ZsOptions& options = {});
ZsResult ZsUntil(const TwoPlayerGame& g, Optimum opt, const StateSet& phi1, const StateSet& phi2,
                 const ZsOptions& options = {});
ZsResult ZsInstantaneous(const TwoPlayerGame& g, Optimum opt, const RewardStructure& r, int k,
                         const ZsOptions& options = {});
ZsResult ZsCumulative(const TwoPlayerGame& g, Optimum opt, const RewardStructure& r, int k,
                      const ZsOptions& options = {});
ZsResult ZsReachReward(const TwoPlayerGame& g, Optimum opt, const RewardStructure& r,
                       const StateSet& target, const ZsOptions& options = {});

// Message body for an oscillation report, naming states.
std::string DescribeOscillation(const OscillationReport& rep, int sweeps,
                                const std::vector<std::string>& names);

}  // namespace csg

#endif  // CSG_ZERO_SUM_H_
