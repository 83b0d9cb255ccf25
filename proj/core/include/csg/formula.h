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

#ifndef CSG_FORMULA_H_
#define CSG_FORMULA_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csg/error.h"

namespace csg {

class Csg;

enum class Relation { kLess, kLessEqual, kGreaterEqual, kGreater };
enum class Optimum { kMin, kMax };

bool Compare(double value, Relation rel, double threshold);
Relation Flip(Relation rel);  // <= <-> >=, < <-> >
bool IsLowerBound(Relation rel);  // >= or >

struct StateFormula;
using FormulaPtr = std::shared_ptr<const StateFormula>;

struct PathFormula {
  enum class Kind { kNext, kUntil, kBoundedUntil, kEventually, kBoundedEventually, kGlobally };
  Kind kind = Kind::kNext;
  FormulaPtr left;   // until: phi1
  FormulaPtr right;  // next/eventually/globally operand, until: phi2
  int bound = 0;

  bool IsBounded() const { return kind == Kind::kBoundedUntil || kind == Kind::kBoundedEventually; }
};

struct RewardFormula {
  enum class Kind { kInstantaneous, kCumulative, kReach };
  Kind kind = Kind::kReach;
  int bound = 0;
  FormulaPtr target;
};

// One objective of an equilibrium operator.
struct Objective {
  bool is_reward = false;
  std::string reward;  // reward structure name
  PathFormula path;
  RewardFormula reward_formula;
};

// Threshold "rel q" or numerical query "min=?"/"max=?".
struct Bound {
  std::optional<Optimum> query;
  Relation relation = Relation::kGreaterEqual;
  double threshold = 0.0;

  bool IsQuery() const { return query.has_value(); }
};

struct StateFormula {
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kProb, kReward, kNash };
  Kind kind = Kind::kTrue;

  std::string atom;
  FormulaPtr left;
  FormulaPtr right;

  // kProb / kReward / kNash. Coalitions hold player names as written.
  std::vector<std::string> coalition;
  std::vector<std::string> coalition2;
  Bound bound;
  std::string reward;
  PathFormula path;
  RewardFormula reward_formula;
  // kNash: social welfare (max) or social cost (min).
  Optimum optimum = Optimum::kMax;
  Objective objective1;
  Objective objective2;
  // Result is 1 - value (per objective for kNash); introduced by normalize
  // when G is rewritten under a numerical query.
  bool complement = false;
};

// Parses a single state formula. Throws ParseError with positions.
FormulaPtr ParseProperty(std::string_view text);

// Parses a properties file: one formula per non-empty line, '//' and '#'
// start comments.
std::vector<std::string> SplitProperties(std::string_view text);

std::string Print(const StateFormula& f);
std::string Print(const PathFormula& p);
std::string Print(const RewardFormula& r);

bool Equal(const StateFormula& a, const StateFormula& b);

// Rewrites F/G into until form: F phi -> true U phi, F<=k -> U<=k,
// P~q[G phi] -> P~'(1-q)[F !phi], equilibrium thresholds over two G
// objectives -> flipped optimum with threshold 2-q. Throws
// UnsupportedError when no inversion exists.
FormulaPtr Normalize(const FormulaPtr& f);

// Checks atoms, reward names and players against the game; equilibrium
// operators need a proper partition of the players; nested numerical
// queries are rejected.
void Validate(const StateFormula& f, const Csg& game);

// Player indices of a coalition written with names or 1-based numbers.
std::vector<int> ResolveCoalition(const std::vector<std::string>& names, const Csg& game);

}  // namespace csg

#endif  // CSG_FORMULA_H_
