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

#include <gtest/gtest.h>

#include "csg/error.h"
#include "csg/game.h"
#include "random_models.h"

namespace csg {
namespace {

using oracle::ParseCsg;
using oracle::ReadModel;

TEST(StateSetTest, Algebra) {
  const StateSet a = {1, 0, 1, 0};
  const StateSet b = {1, 1, 0, 0};
  EXPECT_EQ(Union(a, b), (StateSet{1, 1, 1, 0}));
  EXPECT_EQ(Intersect(a, b), (StateSet{1, 0, 0, 0}));
  EXPECT_EQ(Minus(a, b), (StateSet{0, 0, 1, 0}));
  EXPECT_EQ(Complement(a), (StateSet{0, 1, 0, 1}));
  EXPECT_EQ(Count(a), 2);
  EXPECT_EQ(Count(EmptySet(5)), 0);
  EXPECT_EQ(Count(FullSet(5)), 5);
}

TEST(CsgTest, RockPaperScissorsShape) {
  const Csg g = ParseCsg(ReadModel("rps.csg"));
  EXPECT_EQ(g.num_players(), 2);
  EXPECT_EQ(g.num_states(), 4);
  // r/p/s for both players at s0 only; t is the restart action elsewhere.
  EXPECT_EQ(g.num_choices(0), 9);
  for (int s = 1; s < 4; ++s) EXPECT_EQ(g.num_choices(s), 1);
  EXPECT_EQ(g.initial(), (StateSet{1, 0, 0, 0}));
  EXPECT_EQ(g.labels().at("win1"), (StateSet{0, 1, 0, 0}));
  EXPECT_EQ(g.JointActionName(0, 0), "(r1,r2)");
}

TEST(CsgTest, DecodeEncodeRoundTrip) {
  const Csg g = ParseCsg(ReadModel("stag_hunt3.csg"));
  for (int local = 0; local < g.num_choices(0); ++local) {
    const std::vector<int> acts = g.DecodeChoice(0, local);
    EXPECT_EQ(g.EncodeChoice(0, acts), local);
  }
  EXPECT_EQ(g.num_choices(0), 8);
  EXPECT_EQ(g.num_choices(1), 1);
}

TEST(CoalitionGameTest, TwoPlayers) {
  const Csg csg = ParseCsg(ReadModel("rps.csg"));
  const TwoPlayerGame g = CoalitionGame(csg, {0});
  EXPECT_EQ(g.num_states(), 4);
  EXPECT_EQ(g.rows(0), 3);
  EXPECT_EQ(g.cols(0), 3);
  EXPECT_EQ(g.row_name(0, 1), "p1");
  EXPECT_EQ(g.col_name(0, 2), "s2");
  EXPECT_EQ(g.state_name(2), "2");
  EXPECT_EQ(g.coalition(0), (std::vector<int>{0}));
  EXPECT_EQ(g.coalition(1), (std::vector<int>{1}));
  // (p1, s2) leads to player 2's win.
  const auto succ = g.successors(g.choice(0, 1, 2));
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(succ[0].target, 2);
  EXPECT_EQ(g.Label("draw"), (StateSet{0, 0, 0, 1}));
}

TEST(CoalitionGameTest, ThreePlayersGroupColumns) {
  const Csg csg = ParseCsg(ReadModel("stag_hunt3.csg"));
  const TwoPlayerGame g = CoalitionGame(csg, {0});
  EXPECT_EQ(g.rows(0), 2);
  EXPECT_EQ(g.cols(0), 4);
  EXPECT_EQ(g.col_name(0, 1), "(stag2,hare3)");
  const RewardStructure& food1 = g.Reward("food1");
  EXPECT_EQ(food1.action[g.choice(0, 0, 0)], 6.0);
  EXPECT_EQ(food1.action[g.choice(0, 0, 1)], 4.0);
  EXPECT_EQ(food1.action[g.choice(0, 1, 3)], 2.0);
  EXPECT_EQ(food1.action[g.choice(0, 0, 3)], 0.0);

  const TwoPlayerGame h = CoalitionGame(csg, {1, 2});
  EXPECT_EQ(h.rows(0), 4);
  EXPECT_EQ(h.cols(0), 2);
}

TEST(CoalitionGameTest, EmptyCoalitionIdles) {
  const Csg csg = ParseCsg(ReadModel("rps.csg"));
  const TwoPlayerGame g = CoalitionGame(csg, {});
  EXPECT_EQ(g.rows(0), 1);
  EXPECT_EQ(g.row_name(0, 0), "-");
  EXPECT_EQ(g.cols(0), 9);
}

TEST(CoalitionGameTest, RejectsBadCoalitions) {
  const Csg csg = ParseCsg(ReadModel("rps.csg"));
  EXPECT_THROW(CoalitionGame(csg, {0, 0}), FormulaError);
  EXPECT_THROW(CoalitionGame(csg, {2}), FormulaError);
}

TEST(CoalitionGameTest, ActiveStatesAreReachable) {
  const std::string text =
      "csg\nplayers 1\nplayer p actions a\n"
      "state 0 init\nstate 1\nstate 2\n"
      "trans 0 (a) -> 1:1\ntrans 1 (a) -> 1:1\ntrans 2 (a) -> 1:0\n";
  const Csg csg = ParseCsg(text);
  EXPECT_EQ(CoalitionGame(csg, {0}).active(), (StateSet{1, 1, 0}));
  EXPECT_EQ(CoalitionGame(csg, {0}, true).active(), (StateSet{1, 1, 1}));
}

TEST(MdpTest, ReachableFollowsEveryChoice) {
  Mdp m;
  const Transition to1[] = {{1, 1.0}};
  const Transition to2[] = {{2, 0.5}, {0, 0.5}};
  const Transition self2[] = {{2, 1.0}};
  const Transition self3[] = {{3, 1.0}};
  m.AddState();
  m.AddChoice(to1);
  m.AddState();
  m.AddChoice(to2);
  m.AddState();
  m.AddChoice(self2);
  m.AddState();
  m.AddChoice(self3);
  EXPECT_EQ(m.num_states(), 4);
  EXPECT_EQ(m.num_choices(), 4);
  EXPECT_EQ(m.state_of_choice(1), 1);
  EXPECT_EQ(m.Reachable({1, 0, 0, 0}), (StateSet{1, 1, 1, 0}));
}

TEST(CsgTest, RandomModelsAreWellFormed) {
  for (uint32_t seed = 0; seed < 50; ++seed) {
    const Csg g = ParseCsg(oracle::RandomCsgText(seed));
    for (int s = 0; s < g.num_states(); ++s) {
      for (int c = g.choice_begin(s); c < g.choice_begin(s) + g.num_choices(s); ++c) {
        double sum = 0.0;
        for (const Transition& t : g.successors(c)) sum += t.prob;
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace csg
