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

#ifndef CSG_TOOLS_CLI_H_
#define CSG_TOOLS_CLI_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace csg::tools {

struct Sweep {
  std::string name;
  std::vector<std::string> values;
};

struct RunConfig {
  std::string model_path;
  std::vector<std::string> properties;
  std::string props_file;
  double epsilon = 1e-6;
  std::optional<double> gamma;
  int max_iters = 500000;
  int workers = 1;
  bool force = false;
  bool synth = false;
  std::vector<std::string> exports;
  std::vector<Sweep> sweeps;
  std::string out_dir = ".";
  bool all_states = false;
  bool plain_vi = false;
  bool timing = false;
};

enum ExitCode { kExitOk = 0, kExitViolated = 1, kExitError = 2 };

// Parses "k=1..10" or "q=0.5,0.9".
Sweep ParseSweep(const std::string& text);

// Runs every property at every sweep point and writes results.csv,
// diagnostics.log and the strategy exports into out_dir. Errors go to err.
int Run(const RunConfig& config, std::ostream& err);

// Command line entry point.
int Main(int argc, char** argv, std::ostream& err);

}  // namespace csg::tools

#endif  // CSG_TOOLS_CLI_H_
