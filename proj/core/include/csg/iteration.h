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

#ifndef CSG_ITERATION_H_
#define CSG_ITERATION_H_

#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace csg {

struct IterationSettings {
  // Convergence: maximum relative difference between sweeps.
  double epsilon = 1e-6;
  int max_iters = 500000;
  // Sweeps before the oscillation detector starts looking.
  int oscillation_start = 1000;
  int oscillation_window = 64;
  int max_period = 32;
};

struct OscillationReport {
  int period = 0;
  double amplitude = 0.0;
  // Up to 16 oscillating entries with their values over one period,
  // oldest first.
  std::vector<std::pair<int, std::vector<double>>> cycles;
};

struct Diagnostic {
  enum class Kind { kOscillation, kPairOscillation, kNotConverged, kAssumption, kNote };
  Kind kind = Kind::kNote;
  std::string message;
  std::optional<OscillationReport> oscillation;
};

std::string FormatDiagnostic(const Diagnostic& d);

// Max over entries of |next-prev|/|next| (absolute when next is 0);
// infinite entries that agree contribute 0.
double RelativeDifference(const std::vector<double>& prev, const std::vector<double>& next);

// Watches the sweep vectors of a value iteration for periodic behaviour.
class OscillationDetector {
 public:
  explicit OscillationDetector(const IterationSettings& settings) : settings_(settings) {}

  // Call once per sweep with the new vector; returns a report when a
  // cycle of period 2..max_period repeats across the whole window.
  std::optional<OscillationReport> Observe(int sweep, const std::vector<double>& values);

  // Period detection on an explicit history (oldest first).
  static std::optional<OscillationReport> FindCycle(const std::deque<std::vector<double>>& history,
                                                    int max_period, double epsilon);

 private:
  IterationSettings settings_;
  std::deque<std::vector<double>> history_;
};

}  // namespace csg

#endif  // CSG_ITERATION_H_
