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

#ifndef CSG_MATRIX_GAME_H_
#define CSG_MATRIX_GAME_H_

#include <vector>

#include "csg/matrix.h"

namespace csg {

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
};

inline constexpr double kVerifyTolerance = 1e-7;

// Value and optimal strategies of the zero-sum game where the row player
// maximises x^T Z y. Entries may be +inf (or -inf, but not both); the
// player who would be exposed to an infinite payoff avoids the
// corresponding actions. Throws NumericalError if the LP solution fails
// the minimax check even after the Bland fallback.
MatrixGameSolution SolveMatrixGame(const DenseMatrix& z);

// Row player minimises instead.
MatrixGameSolution SolveMatrixGameMin(const DenseMatrix& z);

}  // namespace csg

#endif  // CSG_MATRIX_GAME_H_
