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

#include "csg/checker.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "csg/augment.h"
#include "csg/error.h"
#include "csg/zero_sum.h"

namespace csg {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using K = StateFormula::Kind;

Optimum Other(Optimum o) { return o == Optimum::kMax ? Optimum::kMin : Optimum::kMax; }

StateSet Threshold(const std::vector<double>& v, const Bound& b) {
  StateSet out(v.size(), 0);
  for (size_t s = 0; s < v.size(); ++s) {
    out[s] = !std::isnan(v[s]) && Compare(v[s], b.relation, b.threshold);
  }
  return out;
}

std::vector<int> Identity(int n) {
  std::vector<int> out(n);
  for (int s = 0; s < n; ++s) out[s] = s;
  return out;
}

}  // namespace

ModelChecker::ModelChecker(const Csg& game, CheckOptions options)
    : game_(game), options_(std::move(options)) {
  if (options_.iteration.epsilon <= 0.0) throw CsgError("epsilon must be positive");
  if (options_.workers < 1) throw CsgError("worker count must be at least 1");
}

std::shared_ptr<const TwoPlayerGame> ModelChecker::CoalitionPtr(const std::vector<int>& c) {
  auto it = coalitions_.find(c);
  if (it != coalitions_.end()) return it->second;
  auto g = std::make_shared<const TwoPlayerGame>(CoalitionGame(game_, c, options_.all_states));
  coalitions_.emplace(c, g);
  return g;
}

const TwoPlayerGame& ModelChecker::Coalition(const std::vector<int>& c) { return *CoalitionPtr(c); }

QueryResult ModelChecker::Check(std::string_view property) { return Check(ParseProperty(property)); }

QueryResult ModelChecker::Check(const FormulaPtr& formula) {
  Validate(*formula, game_);
  const FormulaPtr f = Normalize(formula);
  QueryResult out;
  out.sat = Sat(*f, out, true);
  return out;
}

void ModelChecker::Assume(int number, const AssumptionReport& report, QueryResult& out) {
  if (report.holds) return;
  if (!options_.force) throw AssumptionError(number, report.violating_states, report.message);
  out.diagnostics.push_back({Diagnostic::Kind::kAssumption,
                             "assumption " + std::to_string(number) + " violated (forced): " +
                                 report.message,
                             std::nullopt});
}

StateSet ModelChecker::Sat(const StateFormula& f, QueryResult& out, bool top) {
  const int n = game_.num_states();
  switch (f.kind) {
    case K::kTrue:
      return FullSet(n);
    case K::kFalse:
      return EmptySet(n);
    case K::kAtom:
      if (f.atom == "init") return game_.initial();
      return game_.labels().at(f.atom);
    case K::kNot:
      return Complement(Sat(*f.left, out, false));
    case K::kAnd:
      return Intersect(Sat(*f.left, out, false), Sat(*f.right, out, false));
    case K::kOr:
      return Union(Sat(*f.left, out, false), Sat(*f.right, out, false));
    case K::kProb:
    case K::kReward:
      return ZeroSum(f, out, top);
    case K::kNash:
      return Nash(f, out, top);
  }
  return EmptySet(n);
}

NzObjective ModelChecker::MakeObjective(const Objective& o, const TwoPlayerGame& g,
                                        QueryResult& out) {
  NzObjective r;
  const int n = game_.num_states();
  if (!o.is_reward) {
    const PathFormula& p = o.path;
    r.bound = p.bound;
    r.phi1 = p.left ? Sat(*p.left, out, false) : FullSet(n);
    r.phi2 = Sat(*p.right, out, false);
    switch (p.kind) {
      case PathFormula::Kind::kNext:
        r.kind = NzObjective::Kind::kNext;
        break;
      case PathFormula::Kind::kBoundedUntil:
        r.kind = NzObjective::Kind::kBoundedUntil;
        break;
      case PathFormula::Kind::kUntil:
        r.kind = NzObjective::Kind::kUntil;
        break;
      default:
        throw UnsupportedError("path formula left un-normalized");
    }
    return r;
  }
  const RewardFormula& rf = o.reward_formula;
  r.reward = g.Reward(o.reward);
  r.bound = rf.bound;
  switch (rf.kind) {
    case RewardFormula::Kind::kInstantaneous:
      r.kind = NzObjective::Kind::kInstantaneous;
      break;
    case RewardFormula::Kind::kCumulative:
      r.kind = NzObjective::Kind::kCumulative;
      break;
    case RewardFormula::Kind::kReach:
      r.kind = NzObjective::Kind::kReach;
      r.phi2 = Sat(*rf.target, out, false);
      break;
  }
  return r;
}

StateSet ModelChecker::ZeroSum(const StateFormula& f, QueryResult& out, bool top) {
  std::vector<int> coalition = ResolveCoalition(f.coalition, game_);
  Optimum opt = Optimum::kMax;
  if (f.bound.IsQuery()) {
    opt = *f.bound.query;
  } else if (!IsLowerBound(f.bound.relation)) {
    // Upper bounds: the other players maximise (the game is determined).
    std::vector<int> rest;
    for (int p = 0; p < game_.num_players(); ++p) {
      if (std::find(coalition.begin(), coalition.end(), p) == coalition.end()) rest.push_back(p);
    }
    coalition = std::move(rest);
  }
  const std::shared_ptr<const TwoPlayerGame> gp = CoalitionPtr(coalition);
  const TwoPlayerGame& g = *gp;

  Objective obj;
  obj.is_reward = f.kind == K::kReward;
  obj.reward = f.reward;
  obj.path = f.path;
  obj.reward_formula = f.reward_formula;
  const NzObjective o = MakeObjective(obj, g, out);

  ZsOptions zo;
  zo.iteration = options_.iteration;
  zo.workers = options_.workers;
  zo.gamma = options_.gamma;
  zo.plain = options_.plain_vi;
  ZsResult res;
  switch (o.kind) {
    case NzObjective::Kind::kNext:
      res = ZsNext(g, opt, o.phi2, zo);
      break;
    case NzObjective::Kind::kBoundedUntil:
      res = ZsBoundedUntil(g, opt, o.phi1, o.phi2, o.bound, zo);
      break;
    case NzObjective::Kind::kUntil:
      res = ZsUntil(g, opt, o.phi1, o.phi2, zo);
      break;
    case NzObjective::Kind::kInstantaneous:
      res = ZsInstantaneous(g, opt, o.reward, o.bound, zo);
      break;
    case NzObjective::Kind::kCumulative:
      res = ZsCumulative(g, opt, o.reward, o.bound, zo);
      break;
    case NzObjective::Kind::kReach:
      Assume(1, CheckNegativeRewardAbsorption(g, o.reward, o.phi2), out);
      res = ZsReachReward(g, opt, o.reward, o.phi2, zo);
      break;
  }
  out.iterations += res.iterations;
  for (auto& d : res.diagnostics) out.diagnostics.push_back(std::move(d));

  std::vector<double> values = res.values;
  if (f.complement) {
    for (double& v : values) v = 1.0 - v;
  }
  StateSet sat = f.bound.IsQuery() ? EmptySet(game_.num_states()) : Threshold(values, f.bound);
  if (!top) return sat;

  out.type = f.bound.IsQuery() ? QueryResult::Type::kValue : QueryResult::Type::kBoolean;
  out.values = values;
  if (options_.synth) {
    out.strategy_game = gp;
    out.strategy_state = Identity(game_.num_states());
    out.profile = AssembleZeroSum(g, res);
    // Guaranteed value of the synthesized row strategy.
    EpsilonCertificate cert;
    cert.achieved1 = res.values;
    cert.best1 = BestResponse(g, *out.profile, o, 1, Other(opt));
    for (size_t s = 0; s < res.values.size(); ++s) {
      const double a = res.values[s];
      const double b = cert.best1[s];
      if (std::isnan(a) || a == b) continue;
      const double gap = opt == Optimum::kMax ? a - b : b - a;
      if (!std::isnan(gap)) cert.epsilon1 = std::max(cert.epsilon1, gap);
    }
    cert.epsilon = cert.epsilon1;
    out.certificate = std::move(cert);
  }
  return sat;
}

StateSet ModelChecker::Nash(const StateFormula& f, QueryResult& out, bool top) {
  const std::vector<int> coalition = ResolveCoalition(f.coalition, game_);
  const std::shared_ptr<const TwoPlayerGame> gp = CoalitionPtr(coalition);
  const TwoPlayerGame& g = *gp;
  const NzObjective o1 = MakeObjective(f.objective1, g, out);
  const NzObjective o2 = MakeObjective(f.objective2, g, out);
  for (const NzObjective* o : {&o1, &o2}) {
    if (o->kind == NzObjective::Kind::kUntil) {
      Assume(2, CheckAbsorption(g, Union(Complement(o->phi1), o->phi2), "until objective"), out);
    } else if (o->kind == NzObjective::Kind::kReach) {
      Assume(3, CheckAbsorption(g, o->phi2, "reward objective"), out);
    }
  }

  NzOptions no;
  no.iteration = options_.iteration;
  no.workers = options_.workers;
  no.optimum = f.optimum;
  const int n = game_.num_states();
  std::vector<double> v1(n, kNaN);
  std::vector<double> v2(n, kNaN);
  std::shared_ptr<const TwoPlayerGame> sg = gp;
  std::vector<int> state_map = Identity(n);
  NzObjective so1 = o1;
  NzObjective so2 = o2;
  NzResult res;
  if (NeedsAugmentation(o1, o2)) {
    AugmentedGame aug = Augment(g, o1, o2);
    res = SolveNonzeroSum(aug.game, aug.o1, aug.o2, no);
    for (int s = 0; s < n; ++s) {
      state_map[s] = aug.Index(s, 0);
      v1[s] = res.v1[state_map[s]];
      v2[s] = res.v2[state_map[s]];
    }
    so1 = std::move(aug.o1);
    so2 = std::move(aug.o2);
    sg = std::make_shared<const TwoPlayerGame>(std::move(aug.game));
  } else {
    res = SolveNonzeroSum(g, o1, o2, no);
    v1 = res.v1;
    v2 = res.v2;
  }
  out.iterations += res.iterations;
  for (auto& d : res.diagnostics) out.diagnostics.push_back(std::move(d));
  if (f.complement) {
    for (double& v : v1) v = 1.0 - v;
    for (double& v : v2) v = 1.0 - v;
  }
  std::vector<double> sum(n);
  for (int s = 0; s < n; ++s) sum[s] = v1[s] + v2[s];
  StateSet sat = f.bound.IsQuery() ? EmptySet(n) : Threshold(sum, f.bound);
  if (!top) return sat;

  out.type = f.bound.IsQuery() ? QueryResult::Type::kPair : QueryResult::Type::kBoolean;
  out.values = sum;
  out.values1 = v1;
  out.values2 = v2;
  if (options_.synth) {
    out.strategy_game = sg;
    out.strategy_state = state_map;
    out.profile = AssembleNonzeroSum(*sg, res);
    out.certificate = CertifyEpsilon(*sg, *out.profile, so1, so2, f.optimum);
  }
  return sat;
}

}  // namespace csg
