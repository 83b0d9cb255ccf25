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

#include "csg/iteration.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace csg {

std::string FormatDiagnostic(const Diagnostic& d) {
  const char* kind = "note";
  switch (d.kind) {
    case Diagnostic::Kind::kOscillation:
      kind = "oscillation";
      break;
    case Diagnostic::Kind::kPairOscillation:
      kind = "pair-oscillation";
      break;
    case Diagnostic::Kind::kNotConverged:
      kind = "not-converged";
      break;
    case Diagnostic::Kind::kAssumption:
      kind = "assumption";
      break;
    case Diagnostic::Kind::kNote:
      break;
  }
  return std::string(kind) + ": " + d.message;
}

double RelativeDifference(const std::vector<double>& prev, const std::vector<double>& next) {
  double worst = 0.0;
  for (size_t i = 0; i < next.size(); ++i) {
    const double a = prev[i];
    const double b = next[i];
    if (std::isnan(a) && std::isnan(b)) continue;
    if (a == b) continue;
    if (std::isinf(a) || std::isinf(b) || std::isnan(a) || std::isnan(b)) {
      return std::numeric_limits<double>::infinity();
    }
    const double d = b != 0.0 ? std::abs(b - a) / std::abs(b) : std::abs(b - a);
    worst = std::max(worst, d);
  }
  return worst;
}

std::optional<OscillationReport> OscillationDetector::FindCycle(
    const std::deque<std::vector<double>>& h, int max_period, double epsilon) {
  const int len = static_cast<int>(h.size());
  if (len < 4) return std::nullopt;
  const size_t n = h.back().size();
  auto same = [](double a, double b) {
    if (a == b || (std::isnan(a) && std::isnan(b))) return true;
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
  };
  for (int p = 2; p <= max_period && 2 * p <= len; ++p) {
    // Cheap filter on the newest entry first.
    bool ok = true;
    for (size_t s = 0; s < n && ok; ++s) ok = same(h[len - 1][s], h[len - 1 - p][s]);
    if (!ok) continue;
    for (int t = p; t < len && ok; ++t) {
      for (size_t s = 0; s < n && ok; ++s) ok = same(h[t][s], h[t - p][s]);
    }
    if (!ok) continue;
    OscillationReport rep;
    rep.period = p;
    for (size_t s = 0; s < n; ++s) {
      double lo = h[len - 1][s];
      double hi = lo;
      for (int t = len - p; t < len; ++t) {
        lo = std::min(lo, h[t][s]);
        hi = std::max(hi, h[t][s]);
      }
      const double amp = std::isnan(hi - lo) ? 0.0 : hi - lo;
      rep.amplitude = std::max(rep.amplitude, amp);
      if (amp > epsilon * std::max(1.0, std::abs(hi)) && rep.cycles.size() < 16) {
        std::vector<double> cyc;
        for (int t = len - p; t < len; ++t) cyc.push_back(h[t][s]);
        rep.cycles.emplace_back(static_cast<int>(s), std::move(cyc));
      }
    }
    if (rep.cycles.empty()) return std::nullopt;
    return rep;
  }
  return std::nullopt;
}

std::optional<OscillationReport> OscillationDetector::Observe(int sweep,
                                                              const std::vector<double>& values) {
  if (sweep < settings_.oscillation_start - settings_.oscillation_window) return std::nullopt;
  history_.push_back(values);
  if (static_cast<int>(history_.size()) > settings_.oscillation_window) history_.pop_front();
  if (sweep < settings_.oscillation_start ||
      static_cast<int>(history_.size()) < settings_.oscillation_window) {
    return std::nullopt;
  }
  return FindCycle(history_, settings_.max_period, settings_.epsilon);
}

}  // namespace csg
