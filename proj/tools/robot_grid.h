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

#ifndef CSG_TOOLS_ROBOT_GRID_H_
#define CSG_TOOLS_ROBOT_GRID_H_

#include <string>

namespace csg::tools {

// Two robots on an l x l grid. rbt1 starts at the south-west corner and
// heads for the north-east corner (label g1), rbt2 does the reverse (g2).
// Each step a robot picks one of its three compass moves towards its goal
// that stay on the grid; with probability q/2 each it drifts to one of the
// two neighbouring compass directions instead (a drift off the grid keeps
// the intended move). A robot sitting on its goal idles. Both robots share
// a cell: label c. Reward structures steps1/steps2 count the steps spent
// away from the respective goal.
struct RobotGridOptions {
  int size = 5;
  double drift = 0.25;
};

std::string RobotGridModel(const RobotGridOptions& options);

}  // namespace csg::tools

#endif  // CSG_TOOLS_ROBOT_GRID_H_
