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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "csg/error.h"
#include "csg/model.h"

namespace csg {

std::string FormatDiagnostic(const ParseDiagnostic& d) {
  if (d.position.line <= 0) return d.message;
  return std::to_string(d.position.line) + ":" + std::to_string(d.position.column) + ": " +
         d.message;
}

namespace {

std::string JoinDiagnostics(const std::vector<ParseDiagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "\n";
    out += FormatDiagnostic(d);
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::vector<ParseDiagnostic> diagnostics)
    : CsgError(JoinDiagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

AssumptionError::AssumptionError(int assumption, std::vector<int> states, const std::string& what)
    : CsgError(what), assumption_(assumption), states_(std::move(states)) {}

namespace {

enum class Tok { kIdent, kNumber, kSymbol, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  int column = 0;
};

struct LineError {
  int column;
  std::string message;
};

std::vector<Token> Lex(std::string_view line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.column = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) {
        ++j;
      }
      t.kind = Tok::kIdent;
      t.text = std::string(line.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t j = i;
      while (j < line.size() && (std::isdigit(static_cast<unsigned char>(line[j])) || line[j] == '.')) ++j;
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
          j = k;
          while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
        }
      }
      t.kind = Tok::kNumber;
      t.text = std::string(line.substr(i, j - i));
      i = j;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      t.kind = Tok::kSymbol;
      t.text = "->";
      i += 2;
    } else {
      t.kind = Tok::kSymbol;
      t.text = std::string(1, c);
      ++i;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.column = static_cast<int>(line.size()) + 1;
  out.push_back(end);
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& Peek() const { return toks_[pos_]; }
  bool AtEnd() const { return Peek().kind == Tok::kEnd; }
  Token Next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool Accept(std::string_view sym) {
    if (Peek().kind != Tok::kEnd && Peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }

  void Expect(std::string_view sym) {
    if (!Accept(sym)) Fail("expected '" + std::string(sym) + "'");
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    const Token& t = Peek();
    const std::string found = t.kind == Tok::kEnd ? std::string("end of line") : "'" + t.text + "'";
    throw LineError{t.column, msg + ", found " + found};
  }

  std::string Ident(const char* what) {
    if (Peek().kind != Tok::kIdent) Fail(std::string("expected ") + what);
    return Next().text;
  }

  int Integer(const char* what) {
    if (Peek().kind != Tok::kNumber) Fail(std::string("expected ") + what);
    const Token t = Next();
    for (char c : t.text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw LineError{t.column, std::string("expected integer ") + what};
      }
    }
    return std::stoi(t.text);
  }

  double Expr() {
    double v = Term();
    while (true) {
      if (Accept("+")) {
        v += Term();
      } else if (Peek().text == "-" && Peek().kind == Tok::kSymbol) {
        Next();
        v -= Term();
      } else {
        return v;
      }
    }
  }

  // Action tuple "(a,-,b)".
  std::vector<std::string> Tuple() {
    std::vector<std::string> acts;
    Expect("(");
    while (true) {
      if (Accept("-")) {
        acts.push_back("-");
      } else {
        acts.push_back(Ident("action name or '-'"));
      }
      if (Accept(")")) break;
      Expect(",");
    }
    return acts;
  }

  void ExpectEnd() {
    if (!AtEnd()) Fail("unexpected trailing input");
  }

 private:
  double Term() {
    double v = Unary();
    while (true) {
      if (Accept("*")) {
        v *= Unary();
      } else if (Accept("/")) {
        const int col = Peek().column;
        const double d = Unary();
        if (d == 0.0) throw LineError{col, "division by zero"};
        v /= d;
      } else {
        return v;
      }
    }
  }

  double Unary() {
    if (Accept("-")) return -Unary();
    if (Accept("(")) {
      const double v = Expr();
      Expect(")");
      return v;
    }
    if (Peek().kind != Tok::kNumber) Fail("expected number");
    const Token t = Next();
    try {
      size_t used = 0;
      const double v = std::stod(t.text, &used);
      if (used != t.text.size()) throw LineError{t.column, "malformed number " + t.text};
      return v;
    } catch (const std::logic_error&) {
      throw LineError{t.column, "malformed number " + t.text};
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

std::string FormatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char tmp[64];
    std::snprintf(tmp, sizeof(tmp), "%.*g", prec, v);
    if (std::stod(tmp) == v) return tmp;
  }
  return buf;
}

std::string TupleString(const std::vector<std::string>& acts) {
  std::string out = "(";
  for (size_t i = 0; i < acts.size(); ++i) {
    if (i > 0) out += ",";
    out += acts[i];
  }
  return out + ")";
}

// Orders an action tuple by the owning players' declaration order.
std::vector<int> TupleKey(const ModelSpec& spec, const std::vector<std::string>& acts) {
  std::vector<int> key;
  for (size_t p = 0; p < acts.size(); ++p) {
    int k = -1;
    if (p < spec.players.size()) {
      const auto& a = spec.players[p].actions;
      auto it = std::find(a.begin(), a.end(), acts[p]);
      if (it != a.end()) k = static_cast<int>(it - a.begin());
    }
    key.push_back(k);
  }
  return key;
}

ModelSpec Canonical(const ModelSpec& in) {
  ModelSpec s = in;
  std::sort(s.states.begin(), s.states.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (auto& st : s.states) {
    std::sort(st.labels.begin(), st.labels.end());
    st.labels.erase(std::unique(st.labels.begin(), st.labels.end()), st.labels.end());
  }
  std::stable_sort(s.transitions.begin(), s.transitions.end(), [&](const auto& a, const auto& b) {
    if (a.state != b.state) return a.state < b.state;
    return TupleKey(in, a.actions) < TupleKey(in, b.actions);
  });
  std::stable_sort(s.state_rewards.begin(), s.state_rewards.end(),
                   [](const auto& a, const auto& b) {
                     return std::tie(a.name, a.state) < std::tie(b.name, b.state);
                   });
  std::stable_sort(s.action_rewards.begin(), s.action_rewards.end(),
                   [&](const auto& a, const auto& b) {
                     if (a.name != b.name) return a.name < b.name;
                     if (a.state != b.state) return a.state < b.state;
                     return TupleKey(in, a.actions) < TupleKey(in, b.actions);
                   });
  return s;
}

}  // namespace

bool ModelSpec::operator==(const ModelSpec& other) const {
  const ModelSpec a = Canonical(*this);
  const ModelSpec b = Canonical(other);
  if (a.players.size() != b.players.size() || a.states.size() != b.states.size() ||
      a.transitions.size() != b.transitions.size() ||
      a.state_rewards.size() != b.state_rewards.size() ||
      a.action_rewards.size() != b.action_rewards.size()) {
    return false;
  }
  for (size_t i = 0; i < a.players.size(); ++i) {
    if (a.players[i].name != b.players[i].name || a.players[i].actions != b.players[i].actions) {
      return false;
    }
  }
  for (size_t i = 0; i < a.states.size(); ++i) {
    const auto& x = a.states[i];
    const auto& y = b.states[i];
    if (x.id != y.id || x.initial != y.initial || x.labels != y.labels) return false;
  }
  for (size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& x = a.transitions[i];
    const auto& y = b.transitions[i];
    if (x.state != y.state || x.actions != y.actions || x.outcomes.size() != y.outcomes.size()) {
      return false;
    }
    for (size_t k = 0; k < x.outcomes.size(); ++k) {
      if (x.outcomes[k].prob != y.outcomes[k].prob || x.outcomes[k].target != y.outcomes[k].target) {
        return false;
      }
    }
  }
  for (size_t i = 0; i < a.state_rewards.size(); ++i) {
    const auto& x = a.state_rewards[i];
    const auto& y = b.state_rewards[i];
    if (x.name != y.name || x.state != y.state || x.value != y.value) return false;
  }
  for (size_t i = 0; i < a.action_rewards.size(); ++i) {
    const auto& x = a.action_rewards[i];
    const auto& y = b.action_rewards[i];
    if (x.name != y.name || x.state != y.state || x.actions != y.actions || x.value != y.value) {
      return false;
    }
  }
  return true;
}

ModelSpec ParseModel(std::string_view text) {
  ModelSpec spec;
  std::vector<ParseDiagnostic> diags;
  int declared_players = -1;
  SourcePosition players_pos;
  bool header = false;

  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    LineParser p(Lex(line));
    if (p.AtEnd()) {
      if (end == text.size()) break;
      continue;
    }
    const SourcePosition pos{line_no, p.Peek().column};
    try {
      const std::string kw = p.Ident("keyword");
      if (!header) {
        if (kw != "csg") throw LineError{pos.column, "model must start with 'csg'"};
        header = true;
        p.ExpectEnd();
      } else if (kw == "players") {
        declared_players = p.Integer("player count");
        players_pos = pos;
        p.ExpectEnd();
      } else if (kw == "player") {
        ModelSpec::Player pl;
        pl.pos = pos;
        pl.name = p.Ident("player name");
        if (p.Peek().text != "actions") p.Fail("expected 'actions'");
        p.Next();
        while (!p.AtEnd()) pl.actions.push_back(p.Ident("action name"));
        spec.players.push_back(std::move(pl));
      } else if (kw == "state") {
        ModelSpec::State st;
        st.pos = pos;
        st.id = p.Integer("state index");
        while (!p.AtEnd()) {
          const std::string w = p.Ident("'init' or 'labels'");
          if (w == "init") {
            st.initial = true;
          } else if (w == "labels") {
            p.Expect("{");
            if (!p.Accept("}")) {
              while (true) {
                st.labels.push_back(p.Ident("label"));
                if (p.Accept("}")) break;
                p.Expect(",");
              }
            }
          } else {
            throw LineError{pos.column, "unknown state attribute '" + w + "'"};
          }
        }
        spec.states.push_back(std::move(st));
      } else if (kw == "trans") {
        ModelSpec::Trans tr;
        tr.pos = pos;
        tr.state = p.Integer("state index");
        tr.actions = p.Tuple();
        p.Expect("->");
        while (true) {
          ModelSpec::Outcome o;
          o.prob = p.Expr();
          p.Expect(":");
          o.target = p.Integer("target state");
          tr.outcomes.push_back(o);
          if (p.AtEnd()) break;
          p.Expect("+");
        }
        spec.transitions.push_back(std::move(tr));
      } else if (kw == "reward") {
        const std::string name = p.Ident("reward name");
        const std::string kind = p.Ident("'state' or 'act'");
        if (kind == "state") {
          ModelSpec::StateReward r;
          r.pos = pos;
          r.name = name;
          r.state = p.Integer("state index");
          p.Expect("=");
          r.value = p.Expr();
          p.ExpectEnd();
          spec.state_rewards.push_back(std::move(r));
        } else if (kind == "act") {
          ModelSpec::ActionReward r;
          r.pos = pos;
          r.name = name;
          r.state = p.Integer("state index");
          r.actions = p.Tuple();
          p.Expect("=");
          r.value = p.Expr();
          p.ExpectEnd();
          spec.action_rewards.push_back(std::move(r));
        } else {
          throw LineError{pos.column, "expected 'state' or 'act' after reward name"};
        }
      } else {
        throw LineError{pos.column, "unknown statement '" + kw + "'"};
      }
    } catch (const LineError& e) {
      diags.push_back({{line_no, e.column}, e.message});
    }
    if (end == text.size()) break;
  }

  if (!header) diags.push_back({{1, 1}, "model must start with 'csg'"});
  if (declared_players == 0 || spec.players.empty()) {
    diags.push_back({players_pos, "at least one player required"});
  } else if (declared_players > 0 && declared_players != static_cast<int>(spec.players.size())) {
    diags.push_back({players_pos, "declared " + std::to_string(declared_players) +
                                      " players but found " +
                                      std::to_string(spec.players.size())});
  }

  // Semantic checks that can point at a line.
  std::map<std::string, std::pair<size_t, std::string>> owner;
  for (size_t p = 0; p < spec.players.size(); ++p) {
    for (const auto& a : spec.players[p].actions) {
      if (!owner.emplace(a, std::make_pair(p, spec.players[p].name)).second) {
        diags.push_back({spec.players[p].pos, "action " + a + " declared twice"});
      }
    }
  }
  std::set<int> ids;
  for (const auto& st : spec.states) {
    if (!ids.insert(st.id).second) {
      diags.push_back({st.pos, "state " + std::to_string(st.id) + " declared twice"});
    }
  }
  auto check_tuple = [&](const std::vector<std::string>& acts, SourcePosition pos) {
    if (spec.players.empty()) return;
    if (acts.size() != spec.players.size()) {
      diags.push_back({pos, "action tuple " + TupleString(acts) + " needs " +
                                std::to_string(spec.players.size()) + " entries"});
      return;
    }
    for (size_t p = 0; p < acts.size(); ++p) {
      if (acts[p] == "-") continue;
      auto it = owner.find(acts[p]);
      if (it == owner.end()) {
        diags.push_back({pos, "unknown action " + acts[p]});
      } else if (it->second.first != p) {
        diags.push_back({pos, "action " + acts[p] + " belongs to player " + it->second.second});
      }
    }
  };
  auto check_state = [&](int id, SourcePosition pos, const char* what) {
    if (!ids.count(id)) {
      diags.push_back({pos, std::string("dangling state index ") + std::to_string(id) + " in " + what});
    }
  };
  for (const auto& tr : spec.transitions) {
    check_state(tr.state, tr.pos, "transition source");
    check_tuple(tr.actions, tr.pos);
    double sum = 0.0;
    for (const auto& o : tr.outcomes) {
      check_state(o.target, tr.pos, "transition target");
      if (o.prob < 0.0) diags.push_back({tr.pos, "negative probability"});
      sum += o.prob;
    }
    if (std::abs(sum - 1.0) > kDistributionTolerance) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.12g", sum);
      diags.push_back({tr.pos, std::string("distribution sums to ") + buf + " at state " +
                                   std::to_string(tr.state)});
    }
  }
  for (const auto& r : spec.state_rewards) check_state(r.state, r.pos, "reward");
  for (const auto& r : spec.action_rewards) {
    check_state(r.state, r.pos, "reward");
    check_tuple(r.actions, r.pos);
  }

  if (!diags.empty()) throw ParseError(std::move(diags));
  return spec;
}

std::string PrintModel(const ModelSpec& in) {
  const ModelSpec s = Canonical(in);
  std::string out = "csg\n";
  out += "players " + std::to_string(s.players.size()) + "\n";
  for (const auto& p : s.players) {
    out += "player " + p.name + " actions";
    for (const auto& a : p.actions) out += " " + a;
    out += "\n";
  }
  for (const auto& st : s.states) {
    out += "state " + std::to_string(st.id);
    if (st.initial) out += " init";
    if (!st.labels.empty()) {
      out += " labels {";
      for (size_t i = 0; i < st.labels.size(); ++i) {
        if (i > 0) out += ", ";
        out += st.labels[i];
      }
      out += "}";
    }
    out += "\n";
  }
  for (const auto& tr : s.transitions) {
    out += "trans " + std::to_string(tr.state) + " " + TupleString(tr.actions) + " ->";
    for (size_t i = 0; i < tr.outcomes.size(); ++i) {
      out += i == 0 ? " " : " + ";
      out += FormatNumber(tr.outcomes[i].prob) + ":" + std::to_string(tr.outcomes[i].target);
    }
    out += "\n";
  }
  for (const auto& r : s.state_rewards) {
    out += "reward " + r.name + " state " + std::to_string(r.state) + " = " + FormatNumber(r.value) + "\n";
  }
  for (const auto& r : s.action_rewards) {
    out += "reward " + r.name + " act " + std::to_string(r.state) + " " + TupleString(r.actions) +
           " = " + FormatNumber(r.value) + "\n";
  }
  return out;
}

std::string SubstituteParameters(std::string_view text,
                                 const std::vector<std::pair<std::string, std::string>>& params) {
  std::string out(text);
  for (const auto& [name, value] : params) {
    const std::string key = "${" + name + "}";
    size_t pos = 0;
    while ((pos = out.find(key, pos)) != std::string::npos) {
      out.replace(pos, key.size(), value);
      pos += value.size();
    }
  }
  return out;
}

}  // namespace csg
