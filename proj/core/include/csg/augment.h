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

#ifndef CSG_AUGMENT_H_
#define CSG_AUGMENT_H_

#include "csg/game.h"
#include "csg/nonzero_sum.h"

namespace csg {

// Product of a game with a step counter n = 0..cap that turns a
// finite-horizon objective into an unbounded one. State (s, n) has index
// n * base_states + s.
struct AugmentedGame {
  TwoPlayerGame game;
  NzObjective o1;
  NzObjective o2;
  int base_states = 0;
  int cap = 0;

  int Index(int s, int n) const { return n * base_states + s; }
};

// True if exactly one objective is finite-horizon.
bool NeedsAugmentation(const NzObjective& o1, const NzObjective& o2);

// Supported pairs (either order): next or bounded until with until,
// instantaneous or bounded cumulative reward with reachability reward.
// Throws UnsupportedError for other shapes. The product's initial states
// are (s, 0) for every active s of g.
AugmentedGame Augment(const TwoPlayerGame& g, const NzObjective& o1, const NzObjective& o2);

}  // namespace csg

#endif  // CSG_AUGMENT_H_
