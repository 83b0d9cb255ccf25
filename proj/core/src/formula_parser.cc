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

#include <cctype>
#include <cstdio>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "csg/error.h"
#include "csg/formula.h"

namespace csg {
namespace {

enum class T { kIdent, kNumber, kString, kSymbol, kEnd };

struct Tok {
  T kind = T::kEnd;
  std::string text;
  SourcePosition pos;
};

struct Failure {
  SourcePosition pos;
  std::string message;
};

std::vector<Tok> Tokenize(std::string_view s) {
  std::vector<Tok> out;
  int line = 1;
  int col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  static const char* kTwo[] = {"<<", ">>", "<=", ">=", "=?"};
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Tok t;
    t.pos = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = T::kIdent;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          j = k;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
      }
      t.kind = T::kNumber;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      size_t j = i + 1;
      while (j < s.size() && s[j] != '"' && s[j] != '\n') ++j;
      if (j >= s.size() || s[j] != '"') throw Failure{t.pos, "unterminated string"};
      t.kind = T::kString;
      t.text = std::string(s.substr(i + 1, j - i - 1));
      advance(j + 1 - i);
    } else {
      t.kind = T::kSymbol;
      t.text = std::string(1, c);
      for (const char* two : kTwo) {
        if (s.substr(i, 2) == two) {
          t.text = two;
          break;
        }
      }
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  Tok end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

bool IsKeyword(const std::string& w) {
  static const char* kKeywords[] = {"true", "false", "X", "U", "F", "G", "P", "R", "I", "C",
                                    "Pmax", "Pmin", "Rmax", "Rmin", "min", "max"};
  for (const char* k : kKeywords) {
    if (w == k) return true;
  }
  return false;
}

FormulaPtr Make(StateFormula f) { return std::make_shared<const StateFormula>(std::move(f)); }

FormulaPtr MakeNot(FormulaPtr a) {
  StateFormula f;
  f.kind = StateFormula::Kind::kNot;
  f.left = std::move(a);
  return Make(std::move(f));
}

class Parser {
 public:
  explicit Parser(std::vector<Tok> toks) : toks_(std::move(toks)) {}

  FormulaPtr ParseTop() {
    FormulaPtr f = Formula(0);
    if (Peek().kind != T::kEnd) Fail("unexpected input after formula");
    return f;
  }

 private:
  const Tok& Peek(int k = 0) const {
    const size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  Tok Next() {
    Tok t = Peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool IsSym(std::string_view s, int k = 0) const {
    return Peek(k).kind == T::kSymbol && Peek(k).text == s;
  }
  bool IsWord(std::string_view s, int k = 0) const {
    return Peek(k).kind == T::kIdent && Peek(k).text == s;
  }
  bool Accept(std::string_view s) {
    if (IsSym(s)) {
      Next();
      return true;
    }
    return false;
  }
  void Expect(std::string_view s) {
    if (!Accept(s)) Fail("expected '" + std::string(s) + "'");
  }
  void ExpectWord(std::string_view s) {
    if (!IsWord(s)) Fail("expected '" + std::string(s) + "'");
    Next();
  }
  [[noreturn]] void Fail(const std::string& msg) const {
    const Tok& t = Peek();
    const std::string found = t.kind == T::kEnd ? std::string("end of input") : "'" + t.text + "'";
    throw Failure{t.pos, msg + ", found " + found};
  }

  double Number() {
    bool neg = Accept("-");
    if (Peek().kind != T::kNumber) Fail("expected number");
    const Tok t = Next();
    double v = 0.0;
    try {
      size_t used = 0;
      v = std::stod(t.text, &used);
      if (used != t.text.size()) throw Failure{t.pos, "malformed number " + t.text};
    } catch (const std::logic_error&) {
      throw Failure{t.pos, "malformed number " + t.text};
    }
    return neg ? -v : v;
  }

  int Integer() {
    if (Peek().kind != T::kNumber) Fail("expected step bound");
    const Tok t = Next();
    for (char c : t.text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw Failure{t.pos, "step bound must be a non-negative integer"};
      }
    }
    return std::stoi(t.text);
  }

  Relation Rel() {
    if (Accept("<=")) return Relation::kLessEqual;
    if (Accept(">=")) return Relation::kGreaterEqual;
    if (Accept("<")) return Relation::kLess;
    if (Accept(">")) return Relation::kGreater;
    Fail("expected comparison operator");
  }

  // depth > 0 inside another operator.
  FormulaPtr Formula(int depth) {
    FormulaPtr f = Conj(depth);
    while (IsSym("|")) {
      Next();
      StateFormula g;
      g.kind = StateFormula::Kind::kOr;
      g.left = f;
      g.right = Conj(depth);
      f = Make(std::move(g));
    }
    return f;
  }

  FormulaPtr Conj(int depth) {
    FormulaPtr f = Unary(depth);
    while (IsSym("&")) {
      Next();
      StateFormula g;
      g.kind = StateFormula::Kind::kAnd;
      g.left = f;
      g.right = Unary(depth);
      f = Make(std::move(g));
    }
    return f;
  }

  FormulaPtr Unary(int depth) {
    if (Accept("!")) return MakeNot(Unary(depth));
    if (Accept("(")) {
      FormulaPtr f = Formula(depth);
      Expect(")");
      return f;
    }
    if (IsSym("<<")) return Operator(depth);
    const Tok t = Peek();
    if (t.kind == T::kString) {
      Next();
      StateFormula f;
      f.kind = StateFormula::Kind::kAtom;
      f.atom = t.text;
      return Make(std::move(f));
    }
    if (t.kind == T::kIdent) {
      if (t.text == "true" || t.text == "false") {
        Next();
        StateFormula f;
        f.kind = t.text == "true" ? StateFormula::Kind::kTrue : StateFormula::Kind::kFalse;
        return Make(std::move(f));
      }
      if (!IsKeyword(t.text)) {
        Next();
        StateFormula f;
        f.kind = StateFormula::Kind::kAtom;
        f.atom = t.text;
        return Make(std::move(f));
      }
    }
    Fail("expected state formula");
  }

  std::vector<std::string> Coalition() {
    std::vector<std::string> c;
    if (Peek().kind != T::kIdent && Peek().kind != T::kNumber) return c;
    while (true) {
      if (Peek().kind != T::kIdent && Peek().kind != T::kNumber) Fail("expected player");
      c.push_back(Next().text);
      if (!Accept(",")) break;
    }
    return c;
  }

  // "=?" after min/max, or a threshold.
  Bound QueryOrThreshold(std::optional<Optimum> opt) {
    Bound b;
    if (opt) {
      if (Accept("=?")) {
        b.query = opt;
        return b;
      }
      if (IsSym("=")) {
        Next();
        Expect("?");
        b.query = opt;
        return b;
      }
      Fail("expected '=?'");
    }
    b.relation = Rel();
    b.threshold = Number();
    return b;
  }

  PathFormula Path(int depth) {
    PathFormula p;
    if (IsWord("X")) {
      Next();
      p.kind = PathFormula::Kind::kNext;
      p.right = Formula(depth);
      return p;
    }
    if (IsWord("F")) {
      Next();
      if (Accept("<=")) {
        p.kind = PathFormula::Kind::kBoundedEventually;
        p.bound = Integer();
      } else {
        p.kind = PathFormula::Kind::kEventually;
      }
      p.right = Formula(depth);
      return p;
    }
    if (IsWord("G")) {
      Next();
      if (IsSym("<=")) Fail("bounded G is not supported");
      p.kind = PathFormula::Kind::kGlobally;
      p.right = Formula(depth);
      return p;
    }
    p.left = Formula(depth);
    ExpectWord("U");
    if (Accept("<=")) {
      p.kind = PathFormula::Kind::kBoundedUntil;
      p.bound = Integer();
    } else {
      p.kind = PathFormula::Kind::kUntil;
    }
    p.right = Formula(depth);
    return p;
  }

  RewardFormula RewardPath(int depth) {
    RewardFormula r;
    if (IsWord("I")) {
      Next();
      Expect("=");
      r.kind = RewardFormula::Kind::kInstantaneous;
      r.bound = Integer();
      return r;
    }
    if (IsWord("C")) {
      Next();
      Expect("<=");
      r.kind = RewardFormula::Kind::kCumulative;
      r.bound = Integer();
      return r;
    }
    if (IsWord("F")) {
      Next();
      r.kind = RewardFormula::Kind::kReach;
      r.target = Formula(depth);
      return r;
    }
    Fail("expected I=k, C<=k or F");
  }

  std::string RewardName() {
    if (!Accept("{")) return "";
    if (Peek().kind != T::kString && Peek().kind != T::kIdent) Fail("expected reward name");
    std::string name = Next().text;
    Expect("}");
    return name;
  }

  Objective Obj(int depth) {
    Objective o;
    if (IsWord("P")) {
      Next();
      Expect("[");
      o.path = Path(depth);
      Expect("]");
      return o;
    }
    if (IsWord("R")) {
      Next();
      o.is_reward = true;
      o.reward = RewardName();
      Expect("[");
      o.reward_formula = RewardPath(depth);
      Expect("]");
      return o;
    }
    Fail("expected P[...] or R{...}[...]");
  }

  FormulaPtr Operator(int depth) {
    const SourcePosition start = Peek().pos;
    Expect("<<");
    StateFormula f;
    f.coalition = Coalition();
    bool nash = false;
    if (Accept(":")) {
      nash = true;
      f.coalition2 = Coalition();
    }
    Expect(">>");
    const int inner = depth + 1;
    const SourcePosition bound_pos = Peek().pos;
    if (nash) {
      f.kind = StateFormula::Kind::kNash;
      if (IsWord("max")) f.optimum = Optimum::kMax;
      else if (IsWord("min")) f.optimum = Optimum::kMin;
      else Fail("expected 'min' or 'max'");
      Next();
      if (IsSym("=?") || IsSym("=")) {
        f.bound = QueryOrThreshold(f.optimum);
      } else {
        f.bound.relation = Rel();
        f.bound.threshold = Number();
      }
      Expect("(");
      f.objective1 = Obj(inner);
      Expect("+");
      f.objective2 = Obj(inner);
      Expect(")");
      if (!f.bound.IsQuery() && !f.objective1.is_reward && !f.objective2.is_reward &&
          (f.bound.threshold < 0.0 || f.bound.threshold > 2.0)) {
        throw Failure{bound_pos, "threshold for a sum of two probabilities must be in [0,2]"};
      }
    } else if (IsWord("P") || IsWord("Pmax") || IsWord("Pmin")) {
      f.kind = StateFormula::Kind::kProb;
      const std::string w = Next().text;
      if (w == "P") {
        if (IsWord("max") || IsWord("min")) {
          const Optimum o = Peek().text == "max" ? Optimum::kMax : Optimum::kMin;
          Next();
          f.bound = QueryOrThreshold(o);
        } else {
          f.bound = QueryOrThreshold(std::nullopt);
        }
      } else {
        f.bound = QueryOrThreshold(w == "Pmax" ? Optimum::kMax : Optimum::kMin);
      }
      if (!f.bound.IsQuery() && (f.bound.threshold < 0.0 || f.bound.threshold > 1.0)) {
        throw Failure{bound_pos, "probability threshold must be in [0,1]"};
      }
      Expect("[");
      f.path = Path(inner);
      Expect("]");
    } else if (IsWord("R") || IsWord("Rmax") || IsWord("Rmin")) {
      f.kind = StateFormula::Kind::kReward;
      const std::string w = Next().text;
      f.reward = RewardName();
      if (w == "R") {
        if (IsWord("max") || IsWord("min")) {
          const Optimum o = Peek().text == "max" ? Optimum::kMax : Optimum::kMin;
          Next();
          f.bound = QueryOrThreshold(o);
        } else {
          f.bound = QueryOrThreshold(std::nullopt);
        }
      } else {
        f.bound = QueryOrThreshold(w == "Rmax" ? Optimum::kMax : Optimum::kMin);
      }
      Expect("[");
      f.reward_formula = RewardPath(inner);
      Expect("]");
    } else {
      Fail("expected P, R or an equilibrium operator");
    }
    if (depth > 0 && f.bound.IsQuery()) {
      throw Failure{start, "numerical query not allowed inside another formula"};
    }
    return Make(std::move(f));
  }

  std::vector<Tok> toks_;
  size_t pos_ = 0;
};

}  // namespace

FormulaPtr ParseProperty(std::string_view text) {
  try {
    Parser p(Tokenize(text));
    return p.ParseTop();
  } catch (const Failure& f) {
    throw ParseError({{f.pos, f.message}});
  }
}

std::vector<std::string> SplitProperties(std::string_view text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    size_t cut = line.find("//");
    if (cut != std::string::npos) line.resize(cut);
    cut = line.find('#');
    if (cut != std::string::npos) line.resize(cut);
    const size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const size_t e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace csg
