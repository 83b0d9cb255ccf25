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

#ifndef CSG_LP_H_
#define CSG_LP_H_

#include <vector>

#include "csg/error.h"

namespace csg {

enum class ConstraintSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<double> coefficients;
  ConstraintSense sense = ConstraintSense::kLessEqual;
  double rhs = 0.0;
};

// maximise objective . x subject to constraints; variables are >= 0 unless
// flagged free.
struct LinearProgram {
  int num_variables = 0;
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<bool> free_variable;
};

struct LpSolution {
  double value = 0.0;
  std::vector<double> x;
  int pivots = 0;
};

enum class PivotRule {
  // Largest reduced cost, falling back to Bland's rule after degenerate pivots.
  kDantzig,
  // Smallest eligible index throughout.
  kBland,
};

class LpError : public NumericalError {
 public:
  enum class Kind { kInfeasible, kUnbounded, kNumerical };
  LpError(Kind kind, const std::string& what) : NumericalError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr double kPivotTolerance = 1e-9;

// Two-phase dense tableau simplex. Throws LpError on infeasible or
// unbounded programs.
LpSolution Maximize(const LinearProgram& lp, PivotRule rule = PivotRule::kDantzig);

}  // namespace csg

#endif  // CSG_LP_H_
