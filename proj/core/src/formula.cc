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

#include "csg/formula.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>
#include <vector>

#include "csg/game.h"

namespace csg {

bool Compare(double value, Relation rel, double threshold) {
  switch (rel) {
    case Relation::kLess:
      return value < threshold;
    case Relation::kLessEqual:
      return value <= threshold;
    case Relation::kGreaterEqual:
      return value >= threshold;
    case Relation::kGreater:
      return value > threshold;
  }
  return false;
}

Relation Flip(Relation rel) {
  switch (rel) {
    case Relation::kLess:
      return Relation::kGreater;
    case Relation::kLessEqual:
      return Relation::kGreaterEqual;
    case Relation::kGreaterEqual:
      return Relation::kLessEqual;
    case Relation::kGreater:
      return Relation::kLess;
  }
  return rel;
}

bool IsLowerBound(Relation rel) {
  return rel == Relation::kGreaterEqual || rel == Relation::kGreater;
}

namespace {

using K = StateFormula::Kind;

std::string Num(double v) {
  for (int prec = 1; prec <= 17; ++prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::stod(buf) == v) return buf;
  }
  return std::to_string(v);
}

const char* RelText(Relation r) {
  switch (r) {
    case Relation::kLess:
      return "<";
    case Relation::kLessEqual:
      return "<=";
    case Relation::kGreaterEqual:
      return ">=";
    case Relation::kGreater:
      return ">";
  }
  return "?";
}

bool IsBinary(const StateFormula& f) { return f.kind == K::kAnd || f.kind == K::kOr; }

std::string Operand(const FormulaPtr& f) {
  const std::string s = Print(*f);
  return IsBinary(*f) ? "(" + s + ")" : s;
}

std::string BoundText(const Bound& b, const char* prefix) {
  if (b.IsQuery()) {
    return std::string(prefix) + (*b.query == Optimum::kMax ? "max" : "min") + "=?";
  }
  return std::string(prefix) + RelText(b.relation) + Num(b.threshold);
}

std::string CoalitionText(const std::vector<std::string>& c) {
  std::string out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i > 0) out += ",";
    out += c[i];
  }
  return out;
}

std::string ObjectiveText(const Objective& o) {
  if (o.is_reward) return "R{\"" + o.reward + "\"}[ " + Print(o.reward_formula) + " ]";
  return "P[ " + Print(o.path) + " ]";
}

bool EqualPtr(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return !a && !b;
  return Equal(*a, *b);
}

bool EqualPath(const PathFormula& a, const PathFormula& b) {
  return a.kind == b.kind && a.bound == b.bound && EqualPtr(a.left, b.left) &&
         EqualPtr(a.right, b.right);
}

bool EqualReward(const RewardFormula& a, const RewardFormula& b) {
  return a.kind == b.kind && a.bound == b.bound && EqualPtr(a.target, b.target);
}

bool EqualObjective(const Objective& a, const Objective& b) {
  if (a.is_reward != b.is_reward) return false;
  if (a.is_reward) return a.reward == b.reward && EqualReward(a.reward_formula, b.reward_formula);
  return EqualPath(a.path, b.path);
}

bool EqualBound(const Bound& a, const Bound& b) {
  if (a.query != b.query) return false;
  if (a.IsQuery()) return true;
  return a.relation == b.relation && a.threshold == b.threshold;
}

FormulaPtr Make(StateFormula f) { return std::make_shared<const StateFormula>(std::move(f)); }

FormulaPtr True() {
  StateFormula f;
  f.kind = K::kTrue;
  return Make(std::move(f));
}

FormulaPtr Not(FormulaPtr a) {
  StateFormula f;
  f.kind = K::kNot;
  f.left = std::move(a);
  return Make(std::move(f));
}

PathFormula NormalizePath(const PathFormula& p) {
  PathFormula q;
  q.bound = p.bound;
  switch (p.kind) {
    case PathFormula::Kind::kNext:
      q.kind = PathFormula::Kind::kNext;
      q.right = Normalize(p.right);
      break;
    case PathFormula::Kind::kUntil:
    case PathFormula::Kind::kBoundedUntil:
      q.kind = p.kind;
      q.left = Normalize(p.left);
      q.right = Normalize(p.right);
      break;
    case PathFormula::Kind::kEventually:
      q.kind = PathFormula::Kind::kUntil;
      q.left = True();
      q.right = Normalize(p.right);
      break;
    case PathFormula::Kind::kBoundedEventually:
      q.kind = PathFormula::Kind::kBoundedUntil;
      q.left = True();
      q.right = Normalize(p.right);
      break;
    case PathFormula::Kind::kGlobally:
      throw UnsupportedError("G must be rewritten at the operator");
  }
  return q;
}

// G phi == !(true U !phi).
PathFormula InvertGlobally(const PathFormula& p) {
  PathFormula q;
  q.kind = PathFormula::Kind::kUntil;
  q.left = True();
  q.right = Not(Normalize(p.right));
  return q;
}

Optimum Other(Optimum o) { return o == Optimum::kMax ? Optimum::kMin : Optimum::kMax; }

Objective NormalizeObjective(const Objective& o) {
  Objective r = o;
  if (o.is_reward) {
    if (o.reward_formula.target) r.reward_formula.target = Normalize(o.reward_formula.target);
  } else {
    r.path = NormalizePath(o.path);
  }
  return r;
}

bool IsGlobally(const Objective& o) {
  return !o.is_reward && o.path.kind == PathFormula::Kind::kGlobally;
}

void ValidateRec(const StateFormula& f, const Csg& game, int depth) {
  auto check_target = [&](const FormulaPtr& p) {
    if (p) ValidateRec(*p, game, depth + 1);
  };
  auto check_path = [&](const PathFormula& p) {
    check_target(p.left);
    check_target(p.right);
  };
  auto check_reward = [&](const std::string& name) {
    if (name.empty()) throw FormulaError("reward structure name required");
    if (!game.rewards().count(name)) {
      throw FormulaError("unknown reward structure \"" + name + "\"");
    }
  };
  switch (f.kind) {
    case K::kTrue:
    case K::kFalse:
      return;
    case K::kAtom:
      if (f.atom != "init" && !game.labels().count(f.atom)) {
        throw FormulaError("unknown label \"" + f.atom + "\"");
      }
      return;
    case K::kNot:
      ValidateRec(*f.left, game, depth);
      return;
    case K::kAnd:
    case K::kOr:
      ValidateRec(*f.left, game, depth);
      ValidateRec(*f.right, game, depth);
      return;
    case K::kProb:
    case K::kReward:
    case K::kNash:
      break;
  }
  if (depth > 0 && f.bound.IsQuery()) {
    throw FormulaError("numerical query not allowed inside another formula");
  }
  const std::vector<int> c1 = ResolveCoalition(f.coalition, game);
  if (f.kind == K::kProb) {
    check_path(f.path);
  } else if (f.kind == K::kReward) {
    check_reward(f.reward);
    check_target(f.reward_formula.target);
  } else {
    const std::vector<int> c2 = ResolveCoalition(f.coalition2, game);
    std::vector<int> all = c1;
    all.insert(all.end(), c2.begin(), c2.end());
    std::sort(all.begin(), all.end());
    const bool disjoint = std::adjacent_find(all.begin(), all.end()) == all.end();
    if (c1.empty() || c2.empty() || !disjoint ||
        static_cast<int>(all.size()) != game.num_players()) {
      throw FormulaError("equilibrium coalitions must partition the players into two non-empty sets");
    }
    if (f.objective1.is_reward != f.objective2.is_reward) {
      throw FormulaError("equilibrium objectives must be both probabilistic or both rewards");
    }
    for (const Objective* o : {&f.objective1, &f.objective2}) {
      if (o->is_reward) {
        check_reward(o->reward);
        check_target(o->reward_formula.target);
      } else {
        check_path(o->path);
      }
    }
  }
}

}  // namespace

std::string Print(const PathFormula& p) {
  switch (p.kind) {
    case PathFormula::Kind::kNext:
      return "X " + Operand(p.right);
    case PathFormula::Kind::kUntil:
      return Operand(p.left) + " U " + Operand(p.right);
    case PathFormula::Kind::kBoundedUntil:
      return Operand(p.left) + " U<=" + std::to_string(p.bound) + " " + Operand(p.right);
    case PathFormula::Kind::kEventually:
      return "F " + Operand(p.right);
    case PathFormula::Kind::kBoundedEventually:
      return "F<=" + std::to_string(p.bound) + " " + Operand(p.right);
    case PathFormula::Kind::kGlobally:
      return "G " + Operand(p.right);
  }
  return "";
}

std::string Print(const RewardFormula& r) {
  switch (r.kind) {
    case RewardFormula::Kind::kInstantaneous:
      return "I=" + std::to_string(r.bound);
    case RewardFormula::Kind::kCumulative:
      return "C<=" + std::to_string(r.bound);
    case RewardFormula::Kind::kReach:
      return "F " + Operand(r.target);
  }
  return "";
}

std::string Print(const StateFormula& f) {
  switch (f.kind) {
    case K::kTrue:
      return "true";
    case K::kFalse:
      return "false";
    case K::kAtom:
      return "\"" + f.atom + "\"";
    case K::kNot:
      return "!" + Operand(f.left);
    case K::kAnd:
    case K::kOr: {
      const bool is_and = f.kind == K::kAnd;
      auto side = [&](const FormulaPtr& c, bool right) {
        const bool paren = IsBinary(*c) && ((is_and && c->kind == K::kOr) || (right && c->kind == f.kind));
        return paren ? "(" + Print(*c) + ")" : Print(*c);
      };
      return side(f.left, false) + (is_and ? " & " : " | ") + side(f.right, true);
    }
    case K::kProb:
    case K::kReward:
    case K::kNash:
      break;
  }
  std::string out;
  if (f.complement) out += "1-(";
  if (f.kind == K::kProb) {
    out += "<<" + CoalitionText(f.coalition) + ">> " + BoundText(f.bound, "P") + " [ " +
           Print(f.path) + " ]";
  } else if (f.kind == K::kReward) {
    out += "<<" + CoalitionText(f.coalition) + ">> " +
           BoundText(f.bound, ("R{\"" + f.reward + "\"}").c_str()) + " [ " +
           Print(f.reward_formula) + " ]";
  } else {
    out += "<<" + CoalitionText(f.coalition) + ":" + CoalitionText(f.coalition2) + ">> ";
    out += f.optimum == Optimum::kMax ? "max" : "min";
    if (f.bound.IsQuery()) {
      out += "=?";
    } else {
      out += std::string(RelText(f.bound.relation)) + Num(f.bound.threshold);
    }
    out += " (" + ObjectiveText(f.objective1) + " + " + ObjectiveText(f.objective2) + ")";
  }
  if (f.complement) out += ")";
  return out;
}

bool Equal(const StateFormula& a, const StateFormula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case K::kTrue:
    case K::kFalse:
      return true;
    case K::kAtom:
      return a.atom == b.atom;
    case K::kNot:
      return EqualPtr(a.left, b.left);
    case K::kAnd:
    case K::kOr:
      return EqualPtr(a.left, b.left) && EqualPtr(a.right, b.right);
    case K::kProb:
      return a.coalition == b.coalition && EqualBound(a.bound, b.bound) &&
             a.complement == b.complement && EqualPath(a.path, b.path);
    case K::kReward:
      return a.coalition == b.coalition && EqualBound(a.bound, b.bound) && a.reward == b.reward &&
             a.complement == b.complement && EqualReward(a.reward_formula, b.reward_formula);
    case K::kNash:
      return a.coalition == b.coalition && a.coalition2 == b.coalition2 &&
             a.optimum == b.optimum && EqualBound(a.bound, b.bound) &&
             a.complement == b.complement && EqualObjective(a.objective1, b.objective1) &&
             EqualObjective(a.objective2, b.objective2);
  }
  return false;
}

FormulaPtr Normalize(const FormulaPtr& in) {
  const StateFormula& f = *in;
  StateFormula g = f;
  switch (f.kind) {
    case K::kTrue:
    case K::kFalse:
    case K::kAtom:
      return in;
    case K::kNot:
      g.left = Normalize(f.left);
      return Make(std::move(g));
    case K::kAnd:
    case K::kOr:
      g.left = Normalize(f.left);
      g.right = Normalize(f.right);
      return Make(std::move(g));
    case K::kProb:
      if (f.path.kind == PathFormula::Kind::kGlobally) {
        g.path = InvertGlobally(f.path);
        if (f.bound.IsQuery()) {
          g.bound.query = Other(*f.bound.query);
          g.complement = !f.complement;
        } else {
          g.bound.relation = Flip(f.bound.relation);
          g.bound.threshold = 1.0 - f.bound.threshold;
        }
      } else {
        g.path = NormalizePath(f.path);
      }
      return Make(std::move(g));
    case K::kReward:
      if (f.reward_formula.target) g.reward_formula.target = Normalize(f.reward_formula.target);
      return Make(std::move(g));
    case K::kNash: {
      const bool g1 = IsGlobally(f.objective1);
      const bool g2 = IsGlobally(f.objective2);
      if (g1 != g2) {
        throw UnsupportedError(
            "G in an equilibrium objective is only supported when both objectives use G");
      }
      if (!g1) {
        g.objective1 = NormalizeObjective(f.objective1);
        g.objective2 = NormalizeObjective(f.objective2);
        return Make(std::move(g));
      }
      g.objective1.path = InvertGlobally(f.objective1.path);
      g.objective2.path = InvertGlobally(f.objective2.path);
      g.optimum = Other(f.optimum);
      if (f.bound.IsQuery()) {
        g.bound.query = g.optimum;
        g.complement = !f.complement;
      } else {
        g.bound.relation = Flip(f.bound.relation);
        g.bound.threshold = 2.0 - f.bound.threshold;
      }
      return Make(std::move(g));
    }
  }
  return in;
}

std::vector<int> ResolveCoalition(const std::vector<std::string>& names, const Csg& game) {
  std::vector<int> out;
  for (const std::string& n : names) {
    int p = game.FindPlayer(n);
    if (p < 0 && !n.empty() && std::all_of(n.begin(), n.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      const int k = std::stoi(n);
      if (k >= 1 && k <= game.num_players()) p = k - 1;
    }
    if (p < 0) throw FormulaError("unknown player " + n);
    if (std::find(out.begin(), out.end(), p) != out.end()) {
      throw FormulaError("player " + n + " listed twice in a coalition");
    }
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Validate(const StateFormula& f, const Csg& game) { ValidateRec(f, game, 0); }

}  // namespace csg
