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

#ifndef CSG_BIMATRIX_H_
#define CSG_BIMATRIX_H_

#include <vector>

#include "csg/matrix.h"

namespace csg {

// Two-player general-sum one-shot game; a holds player 1's utilities and
// b player 2's, both indexed (row, column).
struct BimatrixGame {
  DenseMatrix a;
  DenseMatrix b;
};

struct Equilibrium {
  std::vector<double> x;
  std::vector<double> y;
  double u = 0.0;
  double v = 0.0;
};

struct EquilibriumSet {
  // Extreme equilibria, sorted by decreasing (u+v, u, v).
  std::vector<Equilibrium> equilibria;
  // Number of vertices where a player is indifferent across more actions
  // than its support size, i.e. the support sits in a solution family.
  int degenerate_vertices = 0;
};

// Finds every extreme Nash equilibrium by enumerating supports of the
// best-response polytopes and pairing completely labelled vertices.
EquilibriumSet EnumerateNash(const BimatrixGame& game);

// Social-welfare optimal equilibrium: max u+v, then max u, then max v,
// then enumeration order.
Equilibrium Swne(const BimatrixGame& game);

// Social-cost optimal equilibrium, computed as the negated SWNE of the
// utility-negated game.
Equilibrium Scne(const BimatrixGame& game);

Equilibrium SelectSwne(const std::vector<Equilibrium>& equilibria);

struct FilteredGame {
  BimatrixGame game;
  // Original indices of the surviving rows and columns.
  std::vector<int> rows;
  std::vector<int> cols;
};

// Iterated removal of strictly dominated pure strategies.
FilteredGame FilterDominated(const BimatrixGame& game);

}  // namespace csg

#endif  // CSG_BIMATRIX_H_
