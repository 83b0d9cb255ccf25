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

#ifndef CSG_MODEL_H_
#define CSG_MODEL_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csg/error.h"
#include "csg/game.h"

namespace csg {

// Parsed model text. Positions are kept for diagnostics but ignored by
// equality.
struct ModelSpec {
  struct Player {
    std::string name;
    std::vector<std::string> actions;
    SourcePosition pos;
  };
  struct State {
    int id = 0;
    bool initial = false;
    std::vector<std::string> labels;
    SourcePosition pos;
  };
  struct Outcome {
    double prob = 0.0;
    int target = 0;
  };
  struct Trans {
    int state = 0;
    // One entry per player, "-" for idle.
    std::vector<std::string> actions;
    std::vector<Outcome> outcomes;
    SourcePosition pos;
  };
  struct StateReward {
    std::string name;
    int state = 0;
    double value = 0.0;
    SourcePosition pos;
  };
  struct ActionReward {
    std::string name;
    int state = 0;
    std::vector<std::string> actions;
    double value = 0.0;
    SourcePosition pos;
  };

  std::vector<Player> players;
  std::vector<State> states;
  std::vector<Trans> transitions;
  std::vector<StateReward> state_rewards;
  std::vector<ActionReward> action_rewards;

  bool operator==(const ModelSpec& o) const;
};

inline constexpr double kDistributionTolerance = 1e-9;

// Parses the line-based model format:
//
//   csg
//   players 2
//   player p1 actions r1 p1a s1
//   state 0 init labels {a, b}
//   trans 0 (r1,-) -> 1/3:1 + 2/3:2
//   reward steps state 0 = 1
//   reward steps act 0 (r1,-) = 2*0.5
//
// Numbers may be arithmetic expressions over literals (+ - * / and
// parentheses). Throws ParseError with every diagnostic found.
ModelSpec ParseModel(std::string_view text);

// Canonical text: sections in a fixed order, states sorted by id,
// transitions and rewards sorted by state then action tuple.
std::string PrintModel(const ModelSpec& spec);

// Throws ModelError for structural problems (missing joint actions,
// distributions not summing to one, dangling targets).
Csg BuildCsg(const ModelSpec& spec);

// Replaces every ${name} with its value.
std::string SubstituteParameters(std::string_view text,
                                 const std::vector<std::pair<std::string, std::string>>& params);

}  // namespace csg

#endif  // CSG_MODEL_H_
