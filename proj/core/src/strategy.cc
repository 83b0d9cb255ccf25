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

#include "csg/strategy.h"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "csg/error.h"
#include "csg/mdp.h"
#include "csg/qualitative.h"

namespace csg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Kind = NzObjective::Kind;

std::vector<double> FirstAction(int n) {
  std::vector<double> d(n, 0.0);
  d[0] = 1.0;
  return d;
}

std::vector<double> Pure(int n, int a) {
  std::vector<double> d(n, 0.0);
  d[a] = 1.0;
  return d;
}

using SwitchFn = std::function<std::optional<Mode>(int s, int step)>;
using EntryFn = std::function<ProfileEntry(int s, Mode m, int step)>;

// Explores (state, mode, step) under every joint action from each active
// state and records the entries and switches met on the way.
StrategyProfile Assemble(const TwoPlayerGame& g, int horizon, const SwitchFn& sw,
                         const EntryFn& entry) {
  StrategyProfile p;
  p.horizon = horizon;
  std::deque<ProfileKey> queue;
  auto enter = [&](int s, Mode m, int step) {
    if (m == Mode::kMain) {
      if (auto to = sw(s, step)) {
        p.switches[{s, step}] = *to;
        m = *to;
      }
    }
    ProfileKey key{s, m, step};
    if (horizon >= 0 && step >= horizon) return;
    if (p.entries.count(key)) return;
    ProfileEntry e = entry(s, m, step);
    if (e.row.empty()) e.row = FirstAction(g.rows(s));
    if (e.col.empty()) e.col = FirstAction(g.cols(s));
    p.entries.emplace(key, std::move(e));
    queue.push_back(key);
  };
  for (int s = 0; s < g.num_states(); ++s) {
    if (g.active()[s]) enter(s, Mode::kMain, 0);
  }
  while (!queue.empty()) {
    const ProfileKey k = queue.front();
    queue.pop_front();
    const int next = p.NextStep(k.step);
    for (int c = g.choice_begin(k.state); c < g.choice_end(k.state); ++c) {
      for (const Transition& t : g.successors(c)) {
        if (t.prob > 0.0) enter(t.target, k.mode, next);
      }
    }
  }
  return p;
}

ProfileEntry MdpEntry(const TwoPlayerGame& g, int s, int choice) {
  ProfileEntry e;
  e.provenance = Provenance::kMdpOpt;
  if (choice < 0) return e;
  const int local = choice - g.choice_begin(s);
  e.row = Pure(g.rows(s), local / g.cols(s));
  e.col = Pure(g.cols(s), local % g.cols(s));
  return e;
}

Mode SwitchFor(uint8_t decided) {
  return decided == kSecondDecided ? Mode::kSwitched1 : Mode::kSwitched2;
}

// Product of the game with the profile memory. deviator < 0 gives the
// induced chain (one choice per node); otherwise the deviator's actions
// become the choices and the other side plays its profile part.
struct Product {
  Mdp mdp;
  std::vector<InducedChain::Node> nodes;
  std::vector<int> start;
  RewardStructure reward;
};

Product BuildProduct(const TwoPlayerGame& g, const StrategyProfile& p, int deviator,
                     const RewardStructure* r, int step_cap, const StateSet& from) {
  Product out;
  std::map<ProfileKey, int> index;
  std::vector<std::vector<std::vector<Transition>>> choices;
  std::vector<std::vector<double>> choice_reward;
  std::deque<int> queue;
  auto node = [&](int s, Mode m, int step) {
    m = p.Enter(s, m, step);
    const ProfileKey key{s, m, step};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(out.nodes.size());
    index.emplace(key, id);
    out.nodes.push_back({s, m, step});
    choices.emplace_back();
    choice_reward.emplace_back();
    queue.push_back(id);
    return id;
  };
  out.start.assign(g.num_states(), -1);
  for (int s = 0; s < g.num_states(); ++s) {
    if (from[s]) out.start[s] = node(s, Mode::kMain, 0);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const InducedChain::Node nd = out.nodes[v];
    const int s = nd.state;
    if (step_cap >= 0 && nd.step >= step_cap) {
      choices[v].push_back({{v, 1.0}});
      choice_reward[v].push_back(0.0);
      continue;
    }
    const ProfileEntry* e = p.Find(s, nd.mode, nd.step);
    if (e == nullptr) {
      throw CsgError("profile has no entry for state " + g.state_name(s) + " (" +
                     ModeName(nd.mode) + ", step " + std::to_string(nd.step) + ")");
    }
    const int next = p.NextStep(nd.step);
    const int own = deviator < 0 ? 1 : (deviator == 0 ? g.rows(s) : g.cols(s));
    for (int a = 0; a < own; ++a) {
      std::map<int, double> dist;
      double rew = 0.0;
      for (int i = 0; i < g.rows(s); ++i) {
        for (int j = 0; j < g.cols(s); ++j) {
          double w = 0.0;
          if (deviator < 0) w = e->row[i] * e->col[j];
          else if (deviator == 0) w = i == a ? e->col[j] : 0.0;
          else w = j == a ? e->row[i] : 0.0;
          if (w == 0.0) continue;
          const int c = g.choice(s, i, j);
          if (r != nullptr) rew += w * r->action[c];
          for (const Transition& t : g.successors(c)) {
            if (t.prob > 0.0) dist[node(t.target, nd.mode, next)] += w * t.prob;
          }
        }
      }
      std::vector<Transition> d;
      for (const auto& [to, pr] : dist) d.push_back({to, pr});
      choices[v].push_back(std::move(d));
      choice_reward[v].push_back(rew);
    }
  }
  for (size_t v = 0; v < out.nodes.size(); ++v) {
    out.mdp.AddState();
    for (const auto& d : choices[v]) out.mdp.AddChoice(d);
  }
  if (r != nullptr) {
    out.reward.state.resize(out.nodes.size());
    for (size_t v = 0; v < out.nodes.size(); ++v) {
      out.reward.state[v] = r->state[out.nodes[v].state];
      for (double x : choice_reward[v]) out.reward.action.push_back(x);
    }
  }
  return out;
}

StateSet Lift(const Product& prod, const StateSet& base) {
  StateSet x(prod.nodes.size());
  for (size_t v = 0; v < prod.nodes.size(); ++v) x[v] = base[prod.nodes[v].state];
  return x;
}

std::vector<double> AtStarts(const Product& prod, const std::vector<double>& v) {
  std::vector<double> out(prod.start.size(), kNaN);
  for (size_t s = 0; s < prod.start.size(); ++s) {
    if (prod.start[s] >= 0) out[s] = v[prod.start[s]];
  }
  return out;
}

int Bound(const NzObjective& o) { return o.kind == Kind::kNext ? 1 : o.bound; }

// Exact solution of x = b + P x on `unknown` (other entries fixed in x).
void SolveLinear(const Mdp& chain, const StateSet& unknown, const std::vector<double>& local,
                 std::vector<double>& x) {
  const int n = chain.num_states();
  std::vector<int> idx(n, -1);
  int m = 0;
  for (int v = 0; v < n; ++v) {
    if (unknown[v]) idx[v] = m++;
  }
  if (m == 0) return;
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd b(m);
  for (int v = 0; v < n; ++v) {
    if (!unknown[v]) continue;
    const int i = idx[v];
    double rhs = local[v];
    double diag = 1.0;
    for (const Transition& t : chain.successors(chain.choice_begin(v))) {
      if (unknown[t.target]) {
        if (t.target == v) diag -= t.prob;
        else trip.emplace_back(i, idx[t.target], -t.prob);
      } else {
        rhs += t.prob * x[t.target];
      }
    }
    trip.emplace_back(i, i, diag);
    b[i] = rhs;
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw NumericalError("induced chain system is singular");
  const Eigen::VectorXd sol = lu.solve(b);
  if (lu.info() != Eigen::Success) throw NumericalError("induced chain solve failed");
  for (int v = 0; v < n; ++v) {
    if (unknown[v]) x[v] = sol[idx[v]];
  }
}

std::vector<double> SolveProduct(const Product& prod, const NzObjective& o, bool chain,
                                 Optimum opt) {
  const Mdp& m = prod.mdp;
  const int n = m.num_states();
  switch (o.kind) {
    case Kind::kNext:
      return MdpNext(m, opt, Lift(prod, o.phi2)).values;
    case Kind::kBoundedUntil:
      return MdpBoundedUntil(m, opt, Lift(prod, o.phi1), Lift(prod, o.phi2), o.bound).values.back();
    case Kind::kInstantaneous:
      return MdpInstantaneous(m, opt, prod.reward, o.bound).values.back();
    case Kind::kCumulative:
      return MdpCumulative(m, opt, prod.reward, o.bound).values.back();
    default:
      break;
  }
  if (!chain) {
    IterationSettings it;
    it.epsilon = 1e-12;
    it.max_iters = 10000000;
    if (o.kind == Kind::kUntil) {
      return MdpUntil(m, opt, Lift(prod, o.phi1), Lift(prod, o.phi2), it).values;
    }
    return MdpReachReward(m, opt, prod.reward, Lift(prod, o.phi2), it).values;
  }
  std::vector<double> x(n, 0.0);
  std::vector<double> local(n, 0.0);
  StateSet unknown(n, 0);
  if (o.kind == Kind::kUntil) {
    const StateSet phi1 = Lift(prod, o.phi1);
    const StateSet phi2 = Lift(prod, o.phi2);
    const StateSet zero = Prob0A(m, phi1, phi2);
    for (int v = 0; v < n; ++v) {
      if (phi2[v]) x[v] = 1.0;
      else if (!zero[v]) unknown[v] = 1;
    }
  } else {
    const StateSet target = Lift(prod, o.phi2);
    const StateSet sure = Prob1A(m, FullSet(n), target);
    for (int v = 0; v < n; ++v) {
      if (target[v]) continue;
      if (!sure[v]) {
        x[v] = kInf;
      } else {
        unknown[v] = 1;
        local[v] = prod.reward.state[v] + prod.reward.action[m.choice_begin(v)];
      }
    }
  }
  SolveLinear(m, unknown, local, x);
  return x;
}

int StepCap(const StrategyProfile& p, const NzObjective& o) {
  if (!o.IsFinite()) {
    if (p.horizon >= 0) throw UnsupportedError("unbounded objective under a finite-horizon profile");
    return -1;
  }
  return p.horizon < 0 ? -1 : Bound(o);
}

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string Short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

}  // namespace

const char* ModeName(Mode m) {
  switch (m) {
    case Mode::kMain:
      return "main";
    case Mode::kSwitched1:
      return "switched1";
    case Mode::kSwitched2:
      return "switched2";
  }
  return "?";
}

const char* ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kMatrixLp:
      return "matrix-LP";
    case Provenance::kBimatrixNe:
      return "bimatrix-NE";
    case Provenance::kMdpOpt:
      return "mdp-opt";
  }
  return "?";
}

Mode StrategyProfile::Enter(int s, Mode m, int step) const {
  if (m != Mode::kMain) return m;
  auto it = switches.find({s, step});
  return it == switches.end() ? m : it->second;
}

const ProfileEntry* StrategyProfile::Find(int s, Mode m, int step) const {
  auto it = entries.find({s, m, step});
  return it == entries.end() ? nullptr : &it->second;
}

bool StrategyProfile::HasSwitchedEntries() const {
  for (const auto& [k, e] : entries) {
    if (k.mode != Mode::kMain) return true;
  }
  return false;
}

StrategyProfile AssembleZeroSum(const TwoPlayerGame& g, const ZsResult& r) {
  const bool finite = !r.layers.empty();
  const int k = finite ? static_cast<int>(r.layers.size()) - 1 : -1;
  return Assemble(
      g, k, [](int, int) { return std::nullopt; },
      [&](int s, Mode, int step) {
        const int layer = finite ? k - step : 0;
        ProfileEntry e;
        e.provenance = Provenance::kMatrixLp;
        e.row = r.row[layer][s];
        e.col = r.col[layer][s];
        return e;
      });
}

StrategyProfile AssembleNonzeroSum(const TwoPlayerGame& g, const NzResult& r) {
  if (!r.finite) {
    const NzLayer& layer = r.layers[0];
    return Assemble(
        g, -1,
        [&](int s, int) -> std::optional<Mode> {
          if (layer.decided[s] == kNoneDecided) return std::nullopt;
          return SwitchFor(layer.decided[s]);
        },
        [&](int s, Mode m, int) {
          if (m == Mode::kMain) {
            ProfileEntry e;
            e.provenance = Provenance::kBimatrixNe;
            e.row = layer.row[s];
            e.col = layer.col[s];
            return e;
          }
          const int obj = m == Mode::kSwitched1 ? 0 : 1;
          return MdpEntry(g, s, r.mdp[obj][0][s]);
        });
  }
  const int k = r.horizon;
  const int bounds[2] = {r.bound1, r.bound2};
  return Assemble(
      g, std::max(r.bound1, r.bound2),
      [&](int s, int step) -> std::optional<Mode> {
        if (step > k) return Mode::kSwitched2;
        const uint8_t d = r.layers[k - step].decided[s];
        if (d == kNoneDecided) return std::nullopt;
        return SwitchFor(d);
      },
      [&](int s, Mode m, int step) {
        if (m == Mode::kMain) {
          ProfileEntry e;
          e.provenance = Provenance::kBimatrixNe;
          e.row = r.layers[k - step].row[s];
          e.col = r.layers[k - step].col[s];
          return e;
        }
        const int obj = m == Mode::kSwitched1 ? 0 : 1;
        const int left = bounds[obj] - step;
        if (left < 1) return ProfileEntry{{}, {}, Provenance::kMdpOpt};
        return MdpEntry(g, s, r.mdp[obj][left][s]);
      });
}

InducedChain BuildInducedChain(const TwoPlayerGame& g, const StrategyProfile& p) {
  Product prod = BuildProduct(g, p, -1, nullptr, p.horizon, g.initial());
  InducedChain c;
  c.nodes = prod.nodes;
  c.start = prod.start;
  c.successors.resize(prod.nodes.size());
  for (size_t v = 0; v < prod.nodes.size(); ++v) {
    for (const Transition& t : prod.mdp.successors(prod.mdp.choice_begin(static_cast<int>(v)))) {
      c.successors[v].emplace_back(t.target, t.prob);
    }
  }
  return c;
}

std::vector<double> EvaluateProfile(const TwoPlayerGame& g, const StrategyProfile& p,
                                    const NzObjective& o) {
  const bool rew = o.kind == Kind::kInstantaneous || o.kind == Kind::kCumulative ||
                   o.kind == Kind::kReach;
  const Product prod = BuildProduct(g, p, -1, rew ? &o.reward : nullptr, StepCap(p, o), g.active());
  return AtStarts(prod, SolveProduct(prod, o, true, Optimum::kMax));
}

std::vector<double> BestResponse(const TwoPlayerGame& g, const StrategyProfile& p,
                                 const NzObjective& o, int deviator, Optimum opt) {
  const bool rew = o.kind == Kind::kInstantaneous || o.kind == Kind::kCumulative ||
                   o.kind == Kind::kReach;
  const Product prod =
      BuildProduct(g, p, deviator, rew ? &o.reward : nullptr, StepCap(p, o), g.active());
  return AtStarts(prod, SolveProduct(prod, o, false, opt));
}

EpsilonCertificate CertifyEpsilon(const TwoPlayerGame& g, const StrategyProfile& p,
                                  const NzObjective& o1, const NzObjective& o2, Optimum opt) {
  EpsilonCertificate cert;
  cert.achieved1 = EvaluateProfile(g, p, o1);
  cert.achieved2 = EvaluateProfile(g, p, o2);
  cert.best1 = BestResponse(g, p, o1, 0, opt);
  cert.best2 = BestResponse(g, p, o2, 1, opt);
  auto deficit = [&](const std::vector<double>& achieved, const std::vector<double>& best) {
    double eps = 0.0;
    for (size_t s = 0; s < achieved.size(); ++s) {
      if (std::isnan(achieved[s]) || achieved[s] == best[s]) continue;
      const double d = opt == Optimum::kMax ? best[s] - achieved[s] : achieved[s] - best[s];
      if (std::isnan(d)) continue;
      eps = std::max(eps, d);
    }
    return eps;
  };
  cert.epsilon1 = deficit(cert.achieved1, cert.best1);
  cert.epsilon2 = deficit(cert.achieved2, cert.best2);
  cert.epsilon = std::max(cert.epsilon1, cert.epsilon2);
  return cert;
}

std::vector<TableRow> ProfileRows(const TwoPlayerGame& g, const StrategyProfile& p) {
  std::vector<TableRow> rows;
  for (const auto& [k, e] : p.entries) {
    const std::string state = g.state_name(k.state);
    for (size_t i = 0; i < e.row.size(); ++i) {
      if (e.row[i] > 0.0) {
        rows.push_back({state, ModeName(k.mode), k.step, "1:" + g.row_name(k.state, i), e.row[i]});
      }
    }
    for (size_t j = 0; j < e.col.size(); ++j) {
      if (e.col[j] > 0.0) {
        rows.push_back({state, ModeName(k.mode), k.step, "2:" + g.col_name(k.state, j), e.col[j]});
      }
    }
  }
  return rows;
}

namespace {

// Action names of grouped players contain commas, so fields are quoted
// when needed.
std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

bool SplitCsv(std::string_view line, std::vector<std::string>& fields) {
  fields.assign(1, "");
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch != '"') {
        fields.back() += ch;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return !quoted;
}

}  // namespace

std::string FormatTable(const std::vector<TableRow>& rows) {
  std::string out = "state,memory,step,action,prob\n";
  for (const TableRow& r : rows) {
    out += Quote(r.state) + "," + Quote(r.memory) + "," + std::to_string(r.step) + "," +
           Quote(r.action) + "," + Num(r.prob) + "\n";
  }
  return out;
}

std::vector<TableRow> ParseTable(std::string_view text) {
  std::vector<TableRow> rows;
  size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty() || line_no == 1) continue;
    std::vector<std::string> f;
    if (!SplitCsv(line, f) || f.size() != 5) {
      throw ParseError({{{line_no, 1}, "expected 5 fields in strategy table row"}});
    }
    TableRow r;
    r.state = f[0];
    r.memory = f[1];
    r.action = f[3];
    auto [p1, e1] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), r.step);
    auto [p2, e2] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), r.prob);
    if (e1 != std::errc() || e2 != std::errc()) {
      throw ParseError({{{line_no, 1}, "bad number in strategy table row"}});
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string ExportTable(const TwoPlayerGame& g, const StrategyProfile& p) {
  return FormatTable(ProfileRows(g, p));
}

std::string ExportGraph(const TwoPlayerGame& g, const StrategyProfile& p) {
  const InducedChain c = BuildInducedChain(g, p);
  std::ostringstream out;
  out << "digraph profile {\n";
  for (size_t v = 0; v < c.nodes.size(); ++v) {
    const auto& nd = c.nodes[v];
    std::string label = g.state_name(nd.state);
    if (nd.mode != Mode::kMain) label += std::string(" [") + ModeName(nd.mode) + "]";
    if (p.horizon >= 0) label += " t=" + std::to_string(nd.step);
    if (const ProfileEntry* e = p.Find(nd.state, nd.mode, nd.step)) {
      for (size_t i = 0; i < e->row.size(); ++i) {
        if (e->row[i] > 0.0) label += "\\n1:" + g.row_name(nd.state, i) + ":" + Short(e->row[i]);
      }
      for (size_t j = 0; j < e->col.size(); ++j) {
        if (e->col[j] > 0.0) label += "\\n2:" + g.col_name(nd.state, j) + ":" + Short(e->col[j]);
      }
    }
    out << "  n" << v << " [label=\"" << label << "\"";
    if (c.start[nd.state] == static_cast<int>(v)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (size_t v = 0; v < c.nodes.size(); ++v) {
    for (const auto& [to, pr] : c.successors[v]) {
      out << "  n" << v << " -> n" << to << " [label=\"" << Short(pr) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace csg
