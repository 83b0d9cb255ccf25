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

#ifndef CSG_CHECKER_H_
#define CSG_CHECKER_H_

#include <map>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "csg/formula.h"
#include "csg/game.h"
#include "csg/iteration.h"
#include "csg/nonzero_sum.h"
#include "csg/qualitative.h"
#include "csg/strategy.h"

namespace csg {

struct CheckOptions {
  IterationSettings iteration;
  std::optional<double> gamma;
  int workers = 1;
  // Run even if a stopping assumption fails (reported as a diagnostic).
  bool force = false;
  // Compute every state instead of the reachable ones.
  bool all_states = false;
  // Synthesize (and certify) a profile for the outermost operator.
  bool synth = false;
  // Reachability rewards: plain iteration from 0, without the infinite
  // state precomputation and the gamma phase.
  bool plain_vi = false;
};

struct QueryResult {
  enum class Type { kBoolean, kValue, kPair };
  Type type = Type::kBoolean;
  StateSet sat;
  // kValue: the value; kPair: the sum of the pair.
  std::vector<double> values;
  std::vector<double> values1;
  std::vector<double> values2;
  int iterations = 0;
  std::vector<Diagnostic> diagnostics;

  // Filled when synthesis was requested and the outermost formula is an
  // operator. The profile refers to strategy_game, whose state for base
  // state s is strategy_state[s].
  std::shared_ptr<const TwoPlayerGame> strategy_game;
  std::optional<StrategyProfile> profile;
  std::vector<int> strategy_state;
  // Equilibria: deviation gains of the two players. Zero-sum: shortfall of
  // the synthesized strategy's guaranteed value (epsilon1).
  std::optional<EpsilonCertificate> certificate;
};

class ModelChecker {
 public:
  ModelChecker(const Csg& game, CheckOptions options);

  // Parses, validates and normalizes before checking.
  QueryResult Check(std::string_view property);
  QueryResult Check(const FormulaPtr& formula);

  const TwoPlayerGame& Coalition(const std::vector<int>& coalition);

 private:
  StateSet Sat(const StateFormula& f, QueryResult& out, bool top);
  StateSet ZeroSum(const StateFormula& f, QueryResult& out, bool top);
  StateSet Nash(const StateFormula& f, QueryResult& out, bool top);
  NzObjective MakeObjective(const Objective& o, const TwoPlayerGame& g, QueryResult& out);
  void Assume(int number, const AssumptionReport& report, QueryResult& out);
  std::shared_ptr<const TwoPlayerGame> CoalitionPtr(const std::vector<int>& coalition);

  const Csg& game_;
  CheckOptions options_;
  std::map<std::vector<int>, std::shared_ptr<const TwoPlayerGame>> coalitions_;
};

}  // namespace csg

#endif  // CSG_CHECKER_H_
