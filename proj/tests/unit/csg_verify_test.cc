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

#include <cmath>
#include <string>

#include "csg/augment.h"
#include "csg/checker.h"
#include "csg/error.h"
#include "csg/model.h"
#include "nz_oracle.h"
#include "random_models.h"

namespace csg {
namespace {

using oracle::ParseCsg;
using oracle::ReadModel;

CheckOptions Tight(bool all_states = true) {
  CheckOptions o;
  o.iteration.epsilon = 1e-12;
  o.all_states = all_states;
  return o;
}

QueryResult Verify(const Csg& g, const std::string& prop, CheckOptions o = Tight()) {
  ModelChecker checker(g, o);
  return checker.Check(prop);
}

Csg Mac(const char* q) { return ParseCsg(SubstituteParameters(ReadModel("mac.csg"), {{"q", q}})); }

bool HasDiagnostic(const QueryResult& r, Diagnostic::Kind kind) {
  for (const Diagnostic& d : r.diagnostics)
    if (d.kind == kind) return true;
  return false;
}

TEST(ZeroSumTest, RockPaperScissorsValue) {
  const Csg g = ParseCsg(ReadModel("rps.csg"));
  CheckOptions o = Tight();
  o.synth = true;
  const QueryResult r = Verify(g, "<<p1>>Pmax=? [ !\"win2\" U \"win1\" ]", o);
  ASSERT_EQ(r.type, QueryResult::Type::kValue);
  EXPECT_NEAR(r.values[0], 0.5, 1e-9);
  EXPECT_EQ(r.values[1], 1.0);
  EXPECT_EQ(r.values[2], 0.0);
  ASSERT_TRUE(r.profile.has_value());
  const ProfileEntry* e = r.profile->Find(r.strategy_state[0], Mode::kMain, 0);
  ASSERT_NE(e, nullptr);
  for (double p : e->row) EXPECT_NEAR(p, 1.0 / 3, 1e-6);
  for (double p : e->col) EXPECT_NEAR(p, 1.0 / 3, 1e-6);
}

TEST(ZeroSumTest, RockPaperScissorsFiniteHorizon) {
  const Csg g = ParseCsg(ReadModel("rps.csg"));
  EXPECT_NEAR(Verify(g, "<<p1>>Pmax=? [ !\"win2\" U<=1 \"win1\" ]").values[0], 1.0 / 3, 1e-12);
  EXPECT_NEAR(Verify(g, "<<p1>>Pmax=? [ X \"win1\" ]").values[0], 1.0 / 3, 1e-12);
  const QueryResult zero = Verify(g, "<<p1>>Pmax=? [ !\"win2\" U<=0 \"win1\" ]");
  EXPECT_EQ(zero.values[0], 0.0);
  EXPECT_EQ(zero.values[1], 1.0);
  // Two rounds: win now, or draw and win the round after the restart.
  EXPECT_NEAR(Verify(g, "<<p1>>Pmax=? [ !\"win2\" U<=3 \"win1\" ]").values[0], 1.0 / 3 + 1.0 / 9,
              1e-12);
}

TEST(ZeroSumTest, ThresholdsAndBooleanStructure) {
  const Csg g = ParseCsg(ReadModel("rps.csg"));
  EXPECT_EQ(Verify(g, "true").sat, FullSet(4));
  EXPECT_EQ(Verify(g, "init").sat, (StateSet{1, 0, 0, 0}));
  EXPECT_EQ(Verify(g, "\"win1\" | \"win2\"").sat, (StateSet{0, 1, 1, 0}));
  const char* until = "[ !\"win2\" U \"win1\" ]";
  EXPECT_EQ(Verify(g, std::string("<<p1>>P>=0.4 ") + until).sat, (StateSet{1, 1, 0, 1}));
  EXPECT_EQ(Verify(g, std::string("<<p1>>P>0.6 ") + until).sat, (StateSet{0, 1, 0, 0}));
  // Upper bounds are checked in the complement coalition's game.
  EXPECT_EQ(Verify(g, std::string("<<p1>>P<=0.6 ") + until).sat, (StateSet{1, 0, 1, 1}));
  EXPECT_EQ(Verify(g, std::string("<<p1>>P<0.4 ") + until).sat, (StateSet{0, 0, 1, 0}));
  EXPECT_EQ(Verify(g, "<<p1>>P>=1 [ F \"win1\" ]").sat, FullSet(4));
}

TEST(ZeroSumTest, NestedFormula) {
  const Csg g = ParseCsg(ReadModel("rps.csg"));
  const QueryResult r =
      Verify(g, "<<p1>>Pmax=? [ X <<p1:p2>>max>=2 ( P [ X \"win1\" ] + P [ X \"win1\" ] ) ]");
  EXPECT_EQ(r.values[0], 0.0);
  for (int s = 1; s < 4; ++s) EXPECT_EQ(r.values[s], 1.0);
}

TEST(ZeroSumTest, GloballyIsDual) {
  const Csg g = ParseCsg(ReadModel("rps.csg"));
  const double f = Verify(g, "<<p2>>Pmin=? [ F \"win2\" ]").values[0];
  const double gl = Verify(g, "<<p2>>Pmax=? [ G !\"win2\" ]").values[0];
  EXPECT_NEAR(gl, 1.0 - f, 1e-12);
}

TEST(ZeroSumTest, DeterminacyOnRandomGames) {
  for (uint32_t seed = 0; seed < 50; ++seed) {
    const Csg g = ParseCsg(oracle::RandomCsgText(seed));
    const char* path = "[ \"safe\" U \"goal\" ]";
    const QueryResult a = Verify(g, std::string("<<p1>>Pmax=? ") + path);
    const QueryResult b = Verify(g, std::string("<<p2>>Pmin=? ") + path);
    const QueryResult c = Verify(g, std::string("<<p1>>Pmin=? ") + path);
    const QueryResult d = Verify(g, std::string("<<p2>>Pmax=? ") + path);
    const QueryResult hi = Verify(g, std::string("<<p1,p2>>Pmax=? ") + path);
    const QueryResult lo = Verify(g, std::string("<<p1,p2>>Pmin=? ") + path);
    for (int s = 0; s < g.num_states(); ++s) {
      EXPECT_NEAR(a.values[s], b.values[s], 1e-5) << "seed " << seed << " state " << s;
      EXPECT_NEAR(c.values[s], d.values[s], 1e-5) << "seed " << seed << " state " << s;
      // Any adversarial value sits between the cooperative extremes.
      for (const QueryResult* r : {&a, &c}) {
        EXPECT_LE(r->values[s], hi.values[s] + 1e-6) << "seed " << seed << " state " << s;
        EXPECT_GE(r->values[s], lo.values[s] - 1e-6) << "seed " << seed << " state " << s;
      }
    }
  }
}

TEST(ZeroSumTest, FiniteHorizonStrategiesAreOptimal) {
  for (uint32_t seed = 0; seed < 30; ++seed) {
    const Csg g = ParseCsg(oracle::RandomCsgText(seed));
    CheckOptions o = Tight();
    o.synth = true;
    const QueryResult r = Verify(g, "<<p1>>Pmax=? [ \"safe\" U<=4 \"goal\" ]", o);
    ASSERT_TRUE(r.profile && r.strategy_game);
    const TwoPlayerGame& sg = *r.strategy_game;
    NzObjective obj;
    obj.kind = NzObjective::Kind::kBoundedUntil;
    obj.phi1 = sg.Label("safe");
    obj.phi2 = sg.Label("goal");
    obj.bound = 4;
    // Player 2's best reply to player 1's strategy, and vice versa.
    const std::vector<double> vs_col = BestResponse(sg, *r.profile, obj, 1, Optimum::kMin);
    const std::vector<double> vs_row = BestResponse(sg, *r.profile, obj, 0, Optimum::kMax);
    for (int s = 0; s < g.num_states(); ++s) {
      const int t = r.strategy_state[s];
      EXPECT_GE(vs_col[t], r.values[s] - 1e-9) << "seed " << seed << " state " << s;
      EXPECT_LE(vs_row[t], r.values[s] + 1e-9) << "seed " << seed << " state " << s;
    }
    ASSERT_TRUE(r.certificate.has_value());
    EXPECT_LE(r.certificate->epsilon1, 1e-9);
  }
}

TEST(ZeroSumTest, BoundedSandwich) {
  for (uint32_t seed = 0; seed < 30; ++seed) {
    const Csg g = ParseCsg(oracle::RandomCsgText(seed));
    const QueryResult full = Verify(g, "<<p1>>Pmax=? [ \"safe\" U \"goal\" ]");
    std::vector<double> prev(g.num_states(), 0.0);
    for (int k = 0; k <= 8; ++k) {
      const QueryResult r =
          Verify(g, "<<p1>>Pmax=? [ \"safe\" U<=" + std::to_string(k) + " \"goal\" ]");
      for (int s = 0; s < g.num_states(); ++s) {
        EXPECT_GE(r.values[s], prev[s] - 1e-12) << "seed " << seed << " k " << k;
        EXPECT_LE(r.values[s], full.values[s] + 1e-9) << "seed " << seed << " k " << k;
      }
      prev = r.values;
    }
  }
}

TEST(ZeroSumTest, CumulativeAndInstantaneousRewards) {
  for (uint32_t seed = 0; seed < 20; ++seed) {
    const Csg g = ParseCsg(oracle::RandomCsgText(seed));
    const QueryResult i0 = Verify(g, "<<p1>>R{\"r1\"}max=? [ I=0 ]");
    const QueryResult c0 = Verify(g, "<<p1>>R{\"r1\"}max=? [ C<=0 ]");
    const RewardStructure& r = g.rewards().at("r1");
    for (int s = 0; s < g.num_states(); ++s) {
      EXPECT_EQ(i0.values[s], r.state[s]);
      EXPECT_EQ(c0.values[s], 0.0);
    }
    std::vector<double> prev(g.num_states(), 0.0);
    for (int k = 1; k <= 5; ++k) {
      const QueryResult c = Verify(g, "<<p1>>R{\"r1\"}max=? [ C<=" + std::to_string(k) + " ]");
      // Non-negative rewards accumulate.
      for (int s = 0; s < g.num_states(); ++s) EXPECT_GE(c.values[s], prev[s] - 1e-12);
      prev = c.values;
    }
  }
}

TEST(ZeroSumTest, ReachRewardDeterministicStep) {
  const Csg g = ParseCsg(
      "csg\nplayers 2\nplayer p actions a\nplayer q actions b\n"
      "state 0 init\nstate 1 labels {t}\ntrans 0 (a,b) -> 1:1\ntrans 1 (-,-) -> 1:1\n"
      "reward r act 0 (a,b) = 1\n");
  EXPECT_NEAR(Verify(g, "<<p>>R{\"r\"}min=? [ F \"t\" ]").values[0], 1.0, 1e-12);
  const QueryResult all = Verify(g, "<<p>>R{\"r\"}max=? [ F true ]");
  EXPECT_EQ(all.values[0], 0.0);
  EXPECT_EQ(all.values[1], 0.0);
}

TEST(NashTest, MediumAccessSuccess) {
  for (const char* q : {"0.5", "0.9"}) {
    const Csg g = Mac(q);
    CheckOptions o = Tight();
    o.force = true;
    const QueryResult r = Verify(g, "<<p1:p2>>max=? ( P [ F \"tr1\" ] + P [ F \"tr2\" ] )", o);
    ASSERT_EQ(r.type, QueryResult::Type::kPair);
    EXPECT_NEAR(r.values1[0], 1.0, 1e-9) << q;
    EXPECT_NEAR(r.values2[0], 1.0, 1e-9) << q;
    EXPECT_NEAR(r.values[0], 2.0, 1e-9) << q;
  }
}

TEST(NashTest, MediumAccessFirstToTransmit) {
  for (double q : {0.5, 0.9}) {
    const Csg g = Mac(q == 0.5 ? "0.5" : "0.9");
    CheckOptions o = Tight();
    o.force = true;
    const QueryResult r =
        Verify(g, "<<p1:p2>>max=? ( P [ !\"tr2\" U \"tr1\" ] + P [ !\"tr1\" U \"tr2\" ] )", o);
    EXPECT_NEAR(r.values1[0], q, 1e-9);
    EXPECT_NEAR(r.values2[0], q, 1e-9);
  }
}

TEST(NashTest, MediumAccessNeedsForce) {
  // A user that never transmits keeps the play in state 0 forever.
  try {
    Verify(Mac("0.5"), "<<p1:p2>>max=? ( P [ F \"tr1\" ] + P [ F \"tr2\" ] )");
    FAIL();
  } catch (const AssumptionError& e) {
    EXPECT_EQ(e.assumption(), 2);
  }
}

TEST(NashTest, CooperationDominatesZeroSumRegression) {
  const Csg g = Mac("0.9");
  CheckOptions o = Tight();
  o.force = true;
  o.synth = true;
  const QueryResult nash = Verify(g, "<<p1:p2>>max=? ( P [ F \"tr1\" ] + P [ F \"tr2\" ] )", o);
  const QueryResult zs = Verify(g, "<<p1>>Pmax=? [ F \"tr1\" ]", o);
  ASSERT_TRUE(zs.profile);
  const TwoPlayerGame& sg = *zs.strategy_game;
  NzObjective o2;
  o2.phi1 = FullSet(sg.num_states());
  o2.phi2 = sg.Label("tr2");
  const std::vector<double> reply = BestResponse(sg, *zs.profile, o2, 1, Optimum::kMax);
  EXPECT_GE(nash.values[0], zs.values[0] + reply[zs.strategy_state[0]] - 1e-9);
}

TEST(NashTest, StagHuntRewards) {
  const Csg g = ParseCsg(ReadModel("stag_hunt3.csg"));
  const QueryResult swne =
      Verify(g, "<<h1:h2,h3>>max=? ( R{\"food1\"} [ C<=1 ] + R{\"food23\"} [ C<=1 ] )");
  EXPECT_NEAR(swne.values1[0], 6, 1e-9);
  EXPECT_NEAR(swne.values2[0], 9, 1e-9);
  const QueryResult scne =
      Verify(g, "<<h1:h2,h3>>min=? ( R{\"food1\"} [ C<=1 ] + R{\"food23\"} [ C<=1 ] )");
  EXPECT_NEAR(scne.values1[0], 2, 1e-9);
  EXPECT_NEAR(scne.values2[0], 0, 1e-9);
}

TEST(NashTest, SocialCostIsNegatedWelfare) {
  oracle::RandomCsgOptions pos;
  oracle::RandomCsgOptions neg;
  neg.reward_sign = -1;
  const std::string prop_min = "<<p1:p2>>min=? ( R{\"r1\"} [ C<=3 ] + R{\"r2\"} [ C<=3 ] )";
  const std::string prop_max = "<<p1:p2>>max=? ( R{\"r1\"} [ C<=3 ] + R{\"r2\"} [ C<=3 ] )";
  for (uint32_t seed = 0; seed < 20; ++seed) {
    const Csg a = ParseCsg(oracle::RandomCsgText(seed, pos));
    const Csg b = ParseCsg(oracle::RandomCsgText(seed, neg));
    const QueryResult cost = Verify(a, prop_min);
    const QueryResult welfare = Verify(b, prop_max);
    for (int s = 0; s < a.num_states(); ++s) {
      EXPECT_NEAR(cost.values1[s], -welfare.values1[s], 1e-9) << seed;
      EXPECT_NEAR(cost.values2[s], -welfare.values2[s], 1e-9) << seed;
    }
  }
}

TEST(NashTest, InstantaneousBaseCase) {
  const Csg g = ParseCsg(oracle::RandomCsgText(3));
  const QueryResult r = Verify(g, "<<p1:p2>>max=? ( R{\"r1\"} [ I=0 ] + R{\"r2\"} [ I=0 ] )");
  for (int s = 0; s < g.num_states(); ++s) {
    EXPECT_EQ(r.values1[s], g.rewards().at("r1").state[s]);
    EXPECT_EQ(r.values2[s], g.rewards().at("r2").state[s]);
  }
}

TEST(NashTest, BothTargetsReached) {
  const Csg g = Mac("0.5");
  CheckOptions o = Tight();
  o.force = true;
  const QueryResult r = Verify(g, "<<p1:p2>>max=? ( P [ F \"tr1\" ] + P [ F \"tr2\" ] )", o);
  EXPECT_EQ(r.values1[5], 1.0);
  EXPECT_EQ(r.values2[5], 1.0);
  // State 2: both used their energy and failed.
  EXPECT_EQ(r.values1[2], 0.0);
}

TEST(AugmentTest, LayerCounts) {
  const TwoPlayerGame g = CoalitionGame(ParseCsg(ReadModel("rps.csg")), {0});
  NzObjective next;
  next.kind = NzObjective::Kind::kNext;
  next.phi2 = g.Label("win1");
  NzObjective until;
  until.phi1 = FullSet(4);
  until.phi2 = g.Label("win2");
  EXPECT_FALSE(NeedsAugmentation(until, until));
  EXPECT_TRUE(NeedsAugmentation(next, until));
  EXPECT_EQ(Augment(g, next, until).game.num_states(), 12);
  NzObjective bounded = until;
  bounded.kind = NzObjective::Kind::kBoundedUntil;
  bounded.bound = 3;
  const AugmentedGame a = Augment(g, bounded, until);
  EXPECT_EQ(a.game.num_states(), 20);
  EXPECT_EQ(a.Index(2, 4), 18);
  // Flipped order gives the same product.
  EXPECT_EQ(Augment(g, until, bounded).game.num_states(), 20);
}

TEST(AugmentTest, CounterDynamicsAndRewardAudit) {
  oracle::RandomCsgOptions opts;
  opts.min_states = opts.max_states = 5;
  for (uint32_t seed = 0; seed < 10; ++seed) {
    const TwoPlayerGame g =
        CoalitionGame(ParseCsg(oracle::RandomCsgText(seed, opts)), {0}, true);
    NzObjective cum;
    cum.kind = NzObjective::Kind::kCumulative;
    cum.bound = 2;
    cum.reward = g.Reward("r1");
    NzObjective reach;
    reach.kind = NzObjective::Kind::kReach;
    reach.phi2 = g.Label("goal");
    reach.reward = g.Reward("r2");
    const AugmentedGame a = Augment(g, cum, reach);
    ASSERT_EQ(a.game.num_states(), 5 * (a.cap + 1));
    for (int n = 0; n <= a.cap; ++n) {
      for (int s = 0; s < 5; ++s) {
        const int ps = a.Index(s, n);
        EXPECT_EQ(a.o1.reward.state[ps], n < 2 ? g.Reward("r1").state[s] : 0.0);
        EXPECT_EQ(a.o2.reward.state[ps], g.Reward("r2").state[s]);
        EXPECT_EQ(a.o2.phi2[ps], g.Label("goal")[s]);
        for (int c = g.choice_begin(s); c < g.choice_end(s); ++c) {
          const int pc = a.game.choice_begin(ps) + (c - g.choice_begin(s));
          EXPECT_EQ(a.o1.reward.action[pc], n < 2 ? g.Reward("r1").action[c] : 0.0);
          EXPECT_EQ(a.o2.reward.action[pc], g.Reward("r2").action[c]);
          const auto base = g.successors(c);
          const auto lifted = a.game.successors(pc);
          ASSERT_EQ(base.size(), lifted.size());
          for (size_t t = 0; t < base.size(); ++t) {
            EXPECT_EQ(lifted[t].target, a.Index(base[t].target, std::min(n + 1, a.cap)));
            EXPECT_EQ(lifted[t].prob, base[t].prob);
          }
        }
      }
    }
  }
}

TEST(AugmentTest, MatchesDirectRecurrence) {
  for (uint32_t seed = 0; seed < 12; ++seed) {
    const Csg csg = ParseCsg(oracle::RandomCsgText(seed));
    const TwoPlayerGame g = CoalitionGame(csg, {0}, true);
    const StateSet& safe = g.Label("safe");
    const StateSet& goal = g.Label("goal");
    const StateSet not_goal = Complement(goal);
    for (int k = 0; k <= 4; ++k) {
      CheckOptions o = Tight();
      o.force = true;
      const QueryResult r = Verify(csg,
                                "<<p1:p2>>max=? ( P [ \"safe\" U<=" + std::to_string(k) +
                                    " \"goal\" ] + P [ !\"goal\" U \"safe\" ] )",
                                o);
      const oracle::PairValues want = oracle::BoundedPlusUntil(g, safe, goal, k, not_goal, safe);
      for (int s = 0; s < g.num_states(); ++s) {
        EXPECT_NEAR(r.values1[s], want.v1[s], 1e-6) << "seed " << seed << " k " << k << " s " << s;
        EXPECT_NEAR(r.values2[s], want.v2[s], 1e-6) << "seed " << seed << " k " << k << " s " << s;
      }
    }
  }
}

TEST(OscillationTest, NegativeRewardLoopIsRejected) {
  const Csg g = ParseCsg(ReadModel("osc_reward.csg"));
  const char* prop = "<<p1,p2>>R{\"r\"}max=? [ F \"a\" ]";
  try {
    Verify(g, prop);
    FAIL();
  } catch (const AssumptionError& e) {
    EXPECT_EQ(e.assumption(), 1);
  }
  CheckOptions o = Tight();
  o.force = true;
  const QueryResult forced = Verify(g, prop, o);
  EXPECT_TRUE(HasDiagnostic(forced, Diagnostic::Kind::kAssumption));
  EXPECT_TRUE(std::isinf(forced.values[0]));
  EXPECT_TRUE(std::isinf(forced.values[1]));

  o.plain_vi = true;
  const QueryResult plain = Verify(g, prop, o);
  bool found = false;
  for (const Diagnostic& d : plain.diagnostics) {
    if (d.kind != Diagnostic::Kind::kOscillation || !d.oscillation) continue;
    EXPECT_EQ(d.oscillation->period, 2);
    for (const auto& [state, cycle] : d.oscillation->cycles) {
      if (state != 0) continue;
      found = true;
      ASSERT_EQ(cycle.size(), 2u);
      EXPECT_EQ(std::min(cycle[0], cycle[1]), -1.0);
      EXPECT_EQ(std::max(cycle[0], cycle[1]), 0.0);
    }
  }
  EXPECT_TRUE(found);
}

TEST(OscillationTest, EndComponentPairOscillates) {
  const Csg g = ParseCsg(ReadModel("osc_until.csg"));
  const char* prop = "<<p1:p2>>max=? ( P [ F \"a1\" ] + P [ F \"a2\" ] )";
  try {
    Verify(g, prop);
    FAIL();
  } catch (const AssumptionError& e) {
    EXPECT_EQ(e.assumption(), 2);
  }
  CheckOptions o = Tight();
  o.force = true;
  const QueryResult r = Verify(g, prop, o);
  EXPECT_TRUE(HasDiagnostic(r, Diagnostic::Kind::kPairOscillation));
  EXPECT_NEAR(r.values[0], 1.0, 1e-9);
  EXPECT_NEAR(std::min(r.values1[0], r.values2[0]), 0.25, 1e-9);
  EXPECT_NEAR(std::max(r.values1[0], r.values2[0]), 0.75, 1e-9);
}

TEST(OscillationTest, UnreachedRewardTargetsOscillate) {
  const Csg g = ParseCsg(ReadModel("osc_mixed.csg"));
  const char* prop = "<<p1:p2>>max=? ( R{\"r1\"} [ F \"a\" ] + R{\"r2\"} [ F \"a\" ] )";
  try {
    Verify(g, prop);
    FAIL();
  } catch (const AssumptionError& e) {
    EXPECT_EQ(e.assumption(), 3);
  }
  CheckOptions o = Tight();
  o.force = true;
  const QueryResult r = Verify(g, prop, o);
  EXPECT_TRUE(HasDiagnostic(r, Diagnostic::Kind::kOscillation) ||
              HasDiagnostic(r, Diagnostic::Kind::kPairOscillation));
}

TEST(CheckerTest, RejectsMixedEquilibriumObjectives) {
  const Csg g = ParseCsg(ReadModel("osc_mixed.csg"));
  EXPECT_THROW(Verify(g, "<<p1:p2>>max=? ( P [ F \"a\" ] + R{\"r1\"} [ F \"a\" ] )"), FormulaError);
}

}  // namespace
}  // namespace csg
