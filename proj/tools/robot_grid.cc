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

#include "robot_grid.h"

#include <array>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace csg::tools {
namespace {

using Cell = std::pair<int, int>;
using State = std::pair<Cell, Cell>;

struct Dir {
  const char* name;
  int dx;
  int dy;
};

// Compass order; neighbours in this ring are the drift directions.
constexpr std::array<Dir, 8> kRing = {{{"n", 0, 1},
                                       {"ne", 1, 1},
                                       {"e", 1, 0},
                                       {"se", 1, -1},
                                       {"s", 0, -1},
                                       {"sw", -1, -1},
                                       {"w", -1, 0},
                                       {"nw", -1, 1}}};

constexpr std::array<int, 3> kMoves1 = {0, 1, 2};  // n, ne, e
constexpr std::array<int, 3> kMoves2 = {4, 5, 6};  // s, sw, w

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Builder {
 public:
  explicit Builder(const RobotGridOptions& o) : l_(o.size), q_(o.drift) {}

  std::string Build() {
    const Cell g1{l_ - 1, l_ - 1};
    const Cell g2{0, 0};
    Index({g2, g1});
    std::string trans;
    for (size_t i = 0; i < order_.size(); ++i) {
      const State st = order_[i];
      const auto a1 = Actions(st.first, g1, kMoves1);
      const auto a2 = Actions(st.second, g2, kMoves2);
      for (int m1 : a1) {
        for (int m2 : a2) {
          std::map<Cell, double> d1 = Move(st.first, m1);
          std::map<Cell, double> d2 = Move(st.second, m2);
          std::map<int, double> out;
          for (const auto& [c1, p1] : d1) {
            for (const auto& [c2, p2] : d2) out[Index({c1, c2})] += p1 * p2;
          }
          trans += "trans " + std::to_string(i) + " (" + Name(m1) + "," + Name(m2) + ") ->";
          bool first = true;
          for (const auto& [t, p] : out) {
            trans += (first ? " " : " + ") + Num(p) + ":" + std::to_string(t);
            first = false;
          }
          trans += "\n";
        }
      }
    }

    std::string text = "csg\nplayers 2\nplayer rbt1 actions n ne e\nplayer rbt2 actions s sw w\n";
    std::string rewards;
    for (size_t i = 0; i < order_.size(); ++i) {
      const auto& [c1, c2] = order_[i];
      std::vector<std::string> labels;
      if (c1 == c2) labels.push_back("c");
      if (c1 == g1) labels.push_back("g1");
      if (c2 == g2) labels.push_back("g2");
      text += "state " + std::to_string(i);
      if (i == 0) text += " init";
      text += " labels {";
      for (size_t k = 0; k < labels.size(); ++k) text += (k ? ", " : "") + labels[k];
      text += "}\n";
      if (c1 != g1) rewards += "reward steps1 state " + std::to_string(i) + " = 1\n";
      if (c2 != g2) rewards += "reward steps2 state " + std::to_string(i) + " = 1\n";
    }
    return text + trans + rewards;
  }

 private:
  bool Inside(int x, int y) const { return x >= 0 && x < l_ && y >= 0 && y < l_; }

  int Index(const State& s) {
    auto [it, fresh] = index_.emplace(s, static_cast<int>(order_.size()));
    if (fresh) order_.push_back(s);
    return it->second;
  }

  // -1 is the idle action.
  std::vector<int> Actions(Cell c, Cell goal, const std::array<int, 3>& moves) const {
    if (c == goal) return {-1};
    std::vector<int> out;
    for (int m : moves) {
      if (Inside(c.first + kRing[m].dx, c.second + kRing[m].dy)) out.push_back(m);
    }
    return out;
  }

  std::map<Cell, double> Move(Cell c, int m) const {
    if (m < 0) return {{c, 1.0}};
    std::map<Cell, double> out;
    double main = 1.0 - q_;
    for (int d : {(m + 7) % 8, (m + 1) % 8}) {
      const int x = c.first + kRing[d].dx;
      const int y = c.second + kRing[d].dy;
      if (Inside(x, y)) {
        out[{x, y}] += q_ / 2;
      } else {
        main += q_ / 2;
      }
    }
    out[{c.first + kRing[m].dx, c.second + kRing[m].dy}] += main;
    return out;
  }

  static std::string Name(int m) { return m < 0 ? "-" : kRing[m].name; }

  int l_;
  double q_;
  std::map<State, int> index_;
  std::vector<State> order_;
};

}  // namespace

std::string RobotGridModel(const RobotGridOptions& options) {
  if (options.size < 2) throw std::invalid_argument("grid size must be at least 2");
  if (!(options.drift >= 0.0 && options.drift <= 1.0)) {
    throw std::invalid_argument("drift probability must lie in [0,1]");
  }
  return Builder(options).Build();
}

}  // namespace csg::tools
