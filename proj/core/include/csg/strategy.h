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

#ifndef CSG_STRATEGY_H_
#define CSG_STRATEGY_H_

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csg/formula.h"
#include "csg/game.h"
#include "csg/nonzero_sum.h"
#include "csg/zero_sum.h"

namespace csg {

// Memory of a synthesized profile. Switched(i): an objective got decided
// and play follows the cooperative MDP strategy for objective i.
enum class Mode : uint8_t { kMain = 0, kSwitched1 = 1, kSwitched2 = 2 };

enum class Provenance : uint8_t { kMatrixLp, kBimatrixNe, kMdpOpt };

const char* ModeName(Mode m);
const char* ProvenanceName(Provenance p);

struct ProfileKey {
  int state = 0;
  Mode mode = Mode::kMain;
  int step = 0;  // 0 for step-independent profiles

  auto operator<=>(const ProfileKey&) const = default;
};

struct ProfileEntry {
  std::vector<double> row;
  std::vector<double> col;
  Provenance provenance = Provenance::kMatrixLp;
};

// Finite-memory profile of a two-player game. Entries exist for every
// (state, mode, step) reachable from the active states under arbitrary
// play, so deviations stay inside the table.
struct StrategyProfile {
  // -1: step-independent. Otherwise entries are indexed by steps taken,
  // 0..horizon-1.
  int horizon = -1;
  std::map<ProfileKey, ProfileEntry> entries;
  // Mode adopted on entering (state, step) in the main mode.
  std::map<std::pair<int, int>, Mode> switches;

  Mode Enter(int s, Mode m, int step) const;
  const ProfileEntry* Find(int s, Mode m, int step) const;
  int NextStep(int step) const { return horizon < 0 ? 0 : step + 1; }
  bool HasSwitchedEntries() const;
};

StrategyProfile AssembleZeroSum(const TwoPlayerGame& g, const ZsResult& r);
StrategyProfile AssembleNonzeroSum(const TwoPlayerGame& g, const NzResult& r);

// Markov chain induced by the profile from (s, main, 0) for every active s.
struct InducedChain {
  struct Node {
    int state = 0;
    Mode mode = Mode::kMain;
    int step = 0;
  };
  std::vector<Node> nodes;
  // successors[v]: (node, probability), merged and sorted by node.
  std::vector<std::vector<std::pair<int, double>>> successors;
  std::vector<int> start;  // per base state, -1 if inactive
};

InducedChain BuildInducedChain(const TwoPlayerGame& g, const StrategyProfile& p);

// Value of one objective when both players follow the profile, from
// (s, main, 0) for every active s (NaN elsewhere). Unbounded objectives
// are solved exactly with a sparse LU factorisation, bounded ones by
// backward induction.
std::vector<double> EvaluateProfile(const TwoPlayerGame& g, const StrategyProfile& p,
                                    const NzObjective& o);

// Optimal value for `deviator` (0 = row, 1 = column) optimising `opt`
// against the other player's part of the profile.
std::vector<double> BestResponse(const TwoPlayerGame& g, const StrategyProfile& p,
                                 const NzObjective& o, int deviator, Optimum opt);

struct EpsilonCertificate {
  // Per player: max over active states of best response minus achieved
  // (achieved minus best response for social cost), floored at 0.
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double epsilon = 0.0;
  std::vector<double> achieved1;
  std::vector<double> achieved2;
  std::vector<double> best1;
  std::vector<double> best2;
};

EpsilonCertificate CertifyEpsilon(const TwoPlayerGame& g, const StrategyProfile& p,
                                  const NzObjective& o1, const NzObjective& o2, Optimum opt);

// Table export: CSV "state,memory,step,action,prob" with actions written
// as 1:<row action> or 2:<column action>.
struct TableRow {
  std::string state;
  std::string memory;
  int step = 0;
  std::string action;
  double prob = 0.0;

  bool operator==(const TableRow&) const = default;
};

std::vector<TableRow> ProfileRows(const TwoPlayerGame& g, const StrategyProfile& p);
std::string FormatTable(const std::vector<TableRow>& rows);
std::vector<TableRow> ParseTable(std::string_view text);
std::string ExportTable(const TwoPlayerGame& g, const StrategyProfile& p);

// Graph export (dot syntax) of the induced chain from the initial states.
std::string ExportGraph(const TwoPlayerGame& g, const StrategyProfile& p);

}  // namespace csg

#endif  // CSG_STRATEGY_H_
