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

#include "random_models.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "csg/model.h"

#ifndef CSG_MODELS_DIR
#error "CSG_MODELS_DIR must point at the models directory"
#endif

namespace csg::oracle {

std::string RandomCsgText(uint32_t seed, const RandomCsgOptions& o) {
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = pick(o.min_states, o.max_states);
  std::ostringstream out;
  out << "csg\nplayers 2\nplayer p1 actions";
  for (int i = 0; i < o.max_actions; ++i) out << " a" << i;
  out << "\nplayer p2 actions";
  for (int i = 0; i < o.max_actions; ++i) out << " b" << i;
  out << "\n";

  std::vector<bool> goal(n);
  for (int s = 0; s < n; ++s) goal[s] = pick(0, 2) == 0;
  goal[n - 1] = true;
  for (int s = 0; s < n; ++s) {
    out << "state " << s << (s == 0 ? " init" : "") << " labels {";
    bool first = true;
    if (goal[s]) {
      out << "goal";
      first = false;
    }
    const bool safe = pick(0, 3) != 0 || s == 0;
    if (safe) out << (first ? "" : ", ") << "safe";
    out << "}\n";
  }

  static const char* kProbs[][2] = {{"1/4", "3/4"}, {"1/2", "1/2"}, {"3/4", "1/4"}};
  std::ostringstream rewards;
  for (int s = 0; s < n; ++s) {
    const bool absorbing = o.absorbing_goals && goal[s];
    const int n1 = absorbing ? 1 : pick(1, o.max_actions);
    const int n2 = absorbing ? 1 : pick(1, o.max_actions);
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        out << "trans " << s << " (a" << i << ",b" << j << ") -> ";
        if (absorbing) {
          out << "1:" << s << "\n";
          continue;
        }
        const int t1 = pick(0, n - 1);
        if (pick(0, 2) == 0) {
          out << "1:" << t1 << "\n";
        } else {
          int t2 = pick(0, n - 2);
          if (t2 >= t1) ++t2;
          const auto& p = kProbs[pick(0, 2)];
          out << p[0] << ":" << t1 << " + " << p[1] << ":" << t2 << "\n";
        }
        for (const char* r : {"r1", "r2"}) {
          const int v = pick(0, 2);
          if (v != 0) {
            rewards << "reward " << r << " act " << s << " (a" << i << ",b" << j
                    << ") = " << v * o.reward_sign << "\n";
          }
        }
      }
    }
    for (const char* r : {"r1", "r2"}) {
      const int v = pick(0, 3);
      if (v != 0) rewards << "reward " << r << " state " << s << " = " << v * o.reward_sign << "\n";
    }
  }
  out << rewards.str();
  return out.str();
}

Csg ParseCsg(const std::string& text) { return BuildCsg(ParseModel(text)); }

IntMatrix RandomIntMatrix(std::mt19937& rng, int rows, int cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, std::vector<int>(cols));
  for (auto& r : m) {
    for (int& v : r) v = d(rng);
  }
  return m;
}

std::string ReadModel(const std::string& name) {
  const std::string path = std::string(CSG_MODELS_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace csg::oracle
