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

// Writes the robot coordination grid model to stdout.

#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "robot_grid.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate the two-robot grid coordination model"};
  csg::tools::RobotGridOptions options;
  app.add_option("-l,--size", options.size, "Grid side length")->check(CLI::PositiveNumber);
  app.add_option("-q,--drift", options.drift, "Probability of drifting off the intended move")
      ->check(CLI::Range(0.0, 1.0));
  CLI11_PARSE(app, argc, argv);
  try {
    std::cout << csg::tools::RobotGridModel(options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
