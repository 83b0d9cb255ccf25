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

#ifndef CSG_TESTS_ORACLE_NZ_ORACLE_H_
#define CSG_TESTS_ORACLE_NZ_ORACLE_H_

#include <utility>
#include <vector>

#include "csg/game.h"

namespace csg::oracle {

struct PairValues {
  std::vector<double> v1;
  std::vector<double> v2;
};

// SWNE values of P[phi1a U<=k phi2a] + P[phi1b U phi2b] on g by the direct
// recurrence over the steps left for the bounded objective: a decided
// objective keeps its value and the other one gets its cooperative MDP
// optimum, everything else is a one-shot bimatrix game over the values
// with one step less.
PairValues BoundedPlusUntil(const TwoPlayerGame& g, const StateSet& phi1a, const StateSet& phi2a,
                            int k, const StateSet& phi1b, const StateSet& phi2b);

}  // namespace csg::oracle

#endif  // CSG_TESTS_ORACLE_NZ_ORACLE_H_
