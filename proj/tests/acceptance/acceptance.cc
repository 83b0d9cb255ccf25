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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bimatrix_oracle.h"
#include "csg/bimatrix.h"
#include "csg/checker.h"
#include "csg/error.h"
#include "csg/matrix_game.h"
#include "csg/model.h"
#include "nz_oracle.h"
#include "random_models.h"
#include "robot_grid.h"

namespace csg {
namespace {

using oracle::ParseCsg;
using oracle::ReadModel;

// Collects failed checks; an empty list means the criterion passed.
class Checks {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void Near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: got %.12g want %.12g (tol %g)", what.c_str(), got, want,
                    tol);
      failures_.push_back(buf);
    }
  }
  void Note(const std::string& note) { notes_.push_back(note); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

QueryResult Check(const Csg& g, const std::string& prop, CheckOptions o = {}) {
  ModelChecker checker(g, o);
  return checker.Check(prop);
}

bool HasKind(const QueryResult& r, Diagnostic::Kind kind) {
  for (const Diagnostic& d : r.diagnostics)
    if (d.kind == kind) return true;
  return false;
}

void MatrixKernel(Checks& c) {
  const MatrixGameSolution s = SolveMatrixGame(DenseMatrix{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
  c.Near(s.value, 0.0, 1e-9, "value");
  for (int i = 0; i < 3; ++i) {
    c.Near(s.row_strategy[i], 1.0 / 3, 1e-9, "row strategy");
    c.Near(s.col_strategy[i], 1.0 / 3, 1e-9, "column strategy");
  }
}

void BimatrixKernel(Checks& c) {
  const BimatrixGame g{DenseMatrix{{2, 2, 2}, {0, 4, 6}}, DenseMatrix{{4, 2, 0}, {4, 6, 9}}};
  const EquilibriumSet set = EnumerateNash(g);
  c.Expect(set.equilibria.size() == 3, "three equilibria");
  const double want[3][2] = {{6, 9}, {2, 4}, {2, 4}};
  bool mixed = false;
  for (size_t i = 0; i < set.equilibria.size() && i < 3; ++i) {
    const Equilibrium& e = set.equilibria[i];
    c.Near(e.u, want[i][0], 1e-9, "NE value u");
    c.Near(e.v, want[i][1], 1e-9, "NE value v");
    if (e.x.size() == 2 && e.y.size() == 3 && std::abs(e.x[0] - 5.0 / 9) < 1e-9 &&
        std::abs(e.x[1] - 4.0 / 9) < 1e-9 && std::abs(e.y[0] - 2.0 / 3) < 1e-9 &&
        std::abs(e.y[1]) < 1e-9 && std::abs(e.y[2] - 1.0 / 3) < 1e-9) {
      mixed = true;
    }
  }
  c.Expect(mixed, "mixed profile (5/9,4/9)/(2/3,0,1/3)");
  const Equilibrium swne = Swne(g);
  c.Near(swne.u, 6, 1e-9, "SWNE u");
  c.Near(swne.v, 9, 1e-9, "SWNE v");
  const Equilibrium scne = Scne(g);
  c.Near(scne.u, 2, 1e-9, "SCNE u");
  c.Near(scne.v, 0, 1e-9, "SCNE v");
  const EquilibriumSet neg = EnumerateNash({g.a.Negated(), g.b.Negated()});
  const double nwant[3][2] = {{-2, 0}, {0, -4}, {-2, -4}};
  c.Expect(neg.equilibria.size() == 3, "three equilibria in the negated game");
  for (size_t i = 0; i < neg.equilibria.size() && i < 3; ++i) {
    c.Near(neg.equilibria[i].u, nwant[i][0], 1e-9, "negated NE u");
    c.Near(neg.equilibria[i].v, nwant[i][1], 1e-9, "negated NE v");
  }
}

// Distinct value pairs, compared within tol.
std::vector<std::pair<double, double>> Distinct(std::vector<std::pair<double, double>> v,
                                                double tol) {
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& p : v) {
    bool dup = false;
    for (const auto& q : out)
      dup = dup || (std::abs(p.first - q.first) <= tol && std::abs(p.second - q.second) <= tol);
    if (!dup) out.push_back(p);
  }
  return out;
}

void OracleEquivalence(Checks& c) {
  std::mt19937 rng(20240607);
  int mismatched = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 4);
    const int cols = 1 + static_cast<int>(rng() % 4);
    const oracle::IntMatrix a = oracle::RandomIntMatrix(rng, r, cols, -2, 2);
    const oracle::IntMatrix b = oracle::RandomIntMatrix(rng, r, cols, -2, 2);
    std::vector<std::pair<double, double>> exact;
    double best = -1e300;
    for (const auto& e : oracle::ExtremeEquilibria(a, b)) {
      exact.emplace_back(e.u.get_d(), e.v.get_d());
      best = std::max(best, mpq_class(e.u + e.v).get_d());
    }
    BimatrixGame g{DenseMatrix(r, cols), DenseMatrix(r, cols)};
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < cols; ++j) {
        g.a(i, j) = a[i][j];
        g.b(i, j) = b[i][j];
      }
    }
    std::vector<std::pair<double, double>> got;
    for (const Equilibrium& e : EnumerateNash(g).equilibria) got.emplace_back(e.u, e.v);
    const auto want_set = Distinct(exact, 1e-6);
    const auto got_set = Distinct(got, 1e-6);
    bool same = want_set.size() == got_set.size();
    for (size_t i = 0; same && i < want_set.size(); ++i) {
      same = std::abs(want_set[i].first - got_set[i].first) <= 1e-6 &&
             std::abs(want_set[i].second - got_set[i].second) <= 1e-6;
    }
    if (!same) ++mismatched;
    const Equilibrium swne = Swne(g);
    c.Near(swne.u + swne.v, best, 1e-6, "SWNE sum, trial " + std::to_string(trial));
  }
  c.Expect(mismatched == 0, std::to_string(mismatched) + " games with a different value set");
}

void ZeroSumRps(Checks& c) {
  const Csg g = ParseCsg(ReadModel("rps.csg"));
  CheckOptions o;
  o.synth = true;
  const QueryResult r = Check(g, "<<p1>> Pmax=? [ !\"win2\" U \"win1\" ]", o);
  c.Near(r.values[0], 0.5, 1e-6, "value at s0");
  const ProfileEntry* e = r.profile ? r.profile->Find(r.strategy_state[0], Mode::kMain, 0) : nullptr;
  c.Expect(e != nullptr, "strategy at s0");
  if (e) {
    for (double p : e->row) c.Near(p, 1.0 / 3, 1e-6, "mix at s0");
  }
}

void NonzeroSumMac(Checks& c) {
  for (const char* q : {"0.5", "0.9"}) {
    const Csg g = ParseCsg(SubstituteParameters(ReadModel("mac.csg"), {{"q", q}}));
    // Staying silent forever is allowed, so the absorption assumption
    // fails and the check has to be forced.
    CheckOptions o;
    o.force = true;
    o.synth = true;
    const double qv = std::stod(q);
    const std::string tag = std::string(" q=") + q;
    const QueryResult s = Check(g, "<<p1:p2>>max=? ( P [ F \"tr1\" ] + P [ F \"tr2\" ] )", o);
    c.Near(s.values1[0], 1, 1e-6, "success V1" + tag);
    c.Near(s.values2[0], 1, 1e-6, "success V2" + tag);
    c.Expect(s.certificate && s.certificate->epsilon <= 1e-6, "success epsilon" + tag);
    const QueryResult f =
        Check(g, "<<p1:p2>>max=? ( P [ !\"tr2\" U \"tr1\" ] + P [ !\"tr1\" U \"tr2\" ] )", o);
    c.Near(f.values1[0], qv, 1e-6, "first-to-transmit V1" + tag);
    c.Near(f.values2[0], qv, 1e-6, "first-to-transmit V2" + tag);
    c.Expect(f.certificate && f.certificate->epsilon <= 1e-6, "first-to-transmit epsilon" + tag);
  }
}

void RobotGrid(Checks& c) {
  const std::pair<int, double> zero_sum[] = {{5, 0.9116}, {10, 0.9392}};
  for (const auto& [size, want] : zero_sum) {
    tools::RobotGridOptions o;
    o.size = size;
    const Csg g = ParseCsg(tools::RobotGridModel(o));
    const QueryResult r = Check(g, "<<rbt1>> Pmax=? [ !\"c\" U \"g1\" ]");
    c.Near(r.values[0], want, 5e-4, "zero-sum l=" + std::to_string(size));
    char buf[64];
    std::snprintf(buf, sizeof buf, "l=%d: %.6f", size, r.values[0]);
    c.Note(buf);
  }
  for (int size : {4, 5, 10}) {
    tools::RobotGridOptions o;
    o.size = size;
    const Csg g = ParseCsg(tools::RobotGridModel(o));
    const QueryResult r =
        Check(g, "<<rbt1:rbt2>>max=? ( P [ !\"c\" U \"g1\" ] + P [ !\"c\" U \"g2\" ] )");
    c.Near(r.values1[0], 1, 5e-4, "pair V1 l=" + std::to_string(size));
    c.Near(r.values2[0], 1, 5e-4, "pair V2 l=" + std::to_string(size));
    char buf[96];
    std::snprintf(buf, sizeof buf, "pair l=%d: (%.6f, %.6f)", size, r.values1[0], r.values2[0]);
    c.Note(buf);
  }
}

int RejectedBy(const Csg& g, const std::string& prop) {
  try {
    Check(g, prop);
  } catch (const AssumptionError& e) {
    return e.assumption();
  }
  return 0;
}

void Appendices(Checks& c) {
  CheckOptions forced;
  forced.force = true;

  const Csg b = ParseCsg(ReadModel("osc_reward.csg"));
  const std::string pb = "<<p1,p2>>R{\"r\"}max=? [ F \"a\" ]";
  c.Expect(RejectedBy(b, pb) == 1, "B rejected by assumption 1");
  CheckOptions plain = forced;
  plain.plain_vi = true;
  const QueryResult rb = Check(b, pb, plain);
  bool b_cycle = false;
  for (const Diagnostic& d : rb.diagnostics) {
    if (d.kind != Diagnostic::Kind::kOscillation || !d.oscillation) continue;
    for (const auto& [state, cycle] : d.oscillation->cycles) {
      if (state == 0 && cycle.size() == 2 && std::min(cycle[0], cycle[1]) == -1.0 &&
          std::max(cycle[0], cycle[1]) == 0.0) {
        b_cycle = true;
      }
    }
  }
  c.Expect(b_cycle, "B: s1 alternates between 0 and -1");
  const QueryResult rb_default = Check(b, pb, forced);
  c.Expect(std::isinf(rb_default.values[0]) && std::isinf(rb_default.values[1]),
           "B with the default scheme: infinite values at s1 and s2");

  const Csg cc = ParseCsg(ReadModel("osc_until.csg"));
  const std::string pc = "<<p1:p2>>max=? ( P [ F \"a1\" ] + P [ F \"a2\" ] )";
  c.Expect(RejectedBy(cc, pc) == 2, "C rejected by assumption 2");
  const QueryResult rc = Check(cc, pc, forced);
  c.Expect(HasKind(rc, Diagnostic::Kind::kPairOscillation), "C: pair oscillation reported");
  c.Near(std::min(rc.values1[0], rc.values2[0]), 0.25, 1e-9, "C: low coordinate");
  c.Near(std::max(rc.values1[0], rc.values2[0]), 0.75, 1e-9, "C: high coordinate");

  const Csg d = ParseCsg(ReadModel("osc_mixed.csg"));
  const std::string pd = "<<p1:p2>>max=? ( R{\"r1\"} [ F \"a\" ] + R{\"r2\"} [ F \"a\" ] )";
  c.Expect(RejectedBy(d, pd) == 3, "D rejected by assumption 3");
  const QueryResult rd = Check(d, pd, forced);
  bool both = false;
  for (const Diagnostic& diag : rd.diagnostics) {
    if (!diag.oscillation) continue;
    bool s1 = false, s2 = false;
    for (const auto& [state, cycle] : diag.oscillation->cycles) {
      s1 = s1 || state == 0;
      s2 = s2 || state == 1;
    }
    both = both || (s1 && s2);
  }
  c.Expect(both, "D: both states oscillate");
}

void PropertySuites(Checks& c) {
  CheckOptions tight;
  tight.iteration.epsilon = 1e-12;
  tight.all_states = true;
  int det_fail = 0;
  for (uint32_t seed = 0; seed < 50; ++seed) {
    const Csg g = ParseCsg(oracle::RandomCsgText(seed));
    const QueryResult a = Check(g, "<<p1>>Pmax=? [ \"safe\" U \"goal\" ]", tight);
    const QueryResult b = Check(g, "<<p2>>Pmin=? [ \"safe\" U \"goal\" ]", tight);
    for (int s = 0; s < g.num_states(); ++s)
      if (std::abs(a.values[s] - b.values[s]) > 1e-5) ++det_fail;
  }
  c.Expect(det_fail == 0, "determinacy: " + std::to_string(det_fail) + " states differ");

  int sandwich_fail = 0;
  for (uint32_t seed = 0; seed < 30; ++seed) {
    const Csg g = ParseCsg(oracle::RandomCsgText(seed));
    const QueryResult full = Check(g, "<<p1>>Pmax=? [ \"safe\" U \"goal\" ]", tight);
    std::vector<double> prev(g.num_states(), 0.0);
    for (int k = 0; k <= 8; ++k) {
      const QueryResult r =
          Check(g, "<<p1>>Pmax=? [ \"safe\" U<=" + std::to_string(k) + " \"goal\" ]", tight);
      for (int s = 0; s < g.num_states(); ++s) {
        if (r.values[s] < prev[s] - 1e-12 || r.values[s] > full.values[s] + 1e-9) ++sandwich_fail;
      }
      prev = r.values;
    }
  }
  c.Expect(sandwich_fail == 0, "sandwich: " + std::to_string(sandwich_fail) + " violations");

  int dual_fail = 0;
  oracle::RandomCsgOptions neg;
  neg.reward_sign = -1;
  for (uint32_t seed = 0; seed < 20; ++seed) {
    const Csg pos_g = ParseCsg(oracle::RandomCsgText(seed));
    const Csg neg_g = ParseCsg(oracle::RandomCsgText(seed, neg));
    const QueryResult cost =
        Check(pos_g, "<<p1:p2>>min=? ( R{\"r1\"} [ C<=3 ] + R{\"r2\"} [ C<=3 ] )", tight);
    const QueryResult welfare =
        Check(neg_g, "<<p1:p2>>max=? ( R{\"r1\"} [ C<=3 ] + R{\"r2\"} [ C<=3 ] )", tight);
    for (int s = 0; s < pos_g.num_states(); ++s) {
      if (std::abs(cost.values1[s] + welfare.values1[s]) > 1e-9 ||
          std::abs(cost.values2[s] + welfare.values2[s]) > 1e-9) {
        ++dual_fail;
      }
    }
  }
  c.Expect(dual_fail == 0, "duality: " + std::to_string(dual_fail) + " states differ");

  int aug_fail = 0;
  CheckOptions forced = tight;
  forced.force = true;
  for (uint32_t seed = 0; seed < 12; ++seed) {
    const Csg csg = ParseCsg(oracle::RandomCsgText(seed));
    const TwoPlayerGame g = CoalitionGame(csg, {0}, true);
    for (int k = 0; k <= 4; ++k) {
      const QueryResult r = Check(csg,
                                  "<<p1:p2>>max=? ( P [ \"safe\" U<=" + std::to_string(k) +
                                      " \"goal\" ] + P [ !\"goal\" U \"safe\" ] )",
                                  forced);
      const oracle::PairValues want = oracle::BoundedPlusUntil(
          g, g.Label("safe"), g.Label("goal"), k, Complement(g.Label("goal")), g.Label("safe"));
      for (int s = 0; s < g.num_states(); ++s) {
        if (std::abs(r.values1[s] - want.v1[s]) > 1e-6 ||
            std::abs(r.values2[s] - want.v2[s]) > 1e-6) {
          ++aug_fail;
        }
      }
    }
  }
  c.Expect(aug_fail == 0, "augmentation: " + std::to_string(aug_fail) + " states differ");
}

struct Criterion {
  int number;
  const char* name;
  double budget_ms;
  std::function<void(Checks&)> run;
};

}  // namespace
}  // namespace csg

int main() {
  using namespace csg;
  const Criterion criteria[] = {
      {1, "matrix-game kernel", 10, MatrixKernel},
      {2, "bimatrix kernel", 100, BimatrixKernel},
      {3, "bimatrix oracle equivalence", 60000, OracleEquivalence},
      {4, "zero-sum RPS", 1000, ZeroSumRps},
      {5, "nonzero-sum medium access", 1000, NonzeroSumMac},
      {6, "robot coordination", 300000, RobotGrid},
      {7, "oscillation counterexamples", 3000, Appendices},
      {8, "property suites", 600000, PropertySuites},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checks checks;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(checks);
    } catch (const std::exception& e) {
      checks.Expect(false, std::string("exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    checks.Expect(ms <= cr.budget_ms, "over the time budget");
    const bool ok = checks.failures().empty();
    failed += !ok;
    std::printf("criterion %d %-30s %s  (%.1f ms, budget %.0f ms)\n", cr.number, cr.name,
                ok ? "PASS" : "FAIL", ms, cr.budget_ms);
    for (const std::string& n : checks.notes()) std::printf("    %s\n", n.c_str());
    for (const std::string& f : checks.failures()) std::printf("    - %s\n", f.c_str());
  }
  return failed == 0 ? 0 : 1;
}
