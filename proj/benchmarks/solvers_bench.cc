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

#include <benchmark/benchmark.h>

#include <random>

#include "csg/bimatrix.h"
#include "csg/checker.h"
#include "csg/matrix_game.h"
#include "csg/model.h"
#ifdef CSG_BENCH_ROBOTS
#include "robot_grid.h"
#endif

namespace csg {
namespace {

DenseMatrix RandomMatrix(int n, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = unit(rng);
  return m;
}

void BM_MatrixGame(benchmark::State& state) {
  const DenseMatrix z = RandomMatrix(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(SolveMatrixGame(z).value);
}
BENCHMARK(BM_MatrixGame)->Arg(3)->Arg(9)->Arg(27);

void BM_EnumerateNash(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BimatrixGame g{RandomMatrix(n, 2), RandomMatrix(n, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(EnumerateNash(g).equilibria.size());
}
BENCHMARK(BM_EnumerateNash)->Arg(2)->Arg(4)->Arg(6);

#ifdef CSG_BENCH_ROBOTS
void BM_RobotZeroSum(benchmark::State& state) {
  tools::RobotGridOptions o;
  o.size = static_cast<int>(state.range(0));
  const Csg g = BuildCsg(ParseModel(tools::RobotGridModel(o)));
  for (auto _ : state) {
    ModelChecker checker(g, {});
    benchmark::DoNotOptimize(checker.Check("<<rbt1>>Pmax=? [ !\"c\" U \"g1\" ]").values[0]);
  }
  state.counters["states"] = g.num_states();
}
BENCHMARK(BM_RobotZeroSum)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_RobotPair(benchmark::State& state) {
  tools::RobotGridOptions o;
  o.size = static_cast<int>(state.range(0));
  const Csg g = BuildCsg(ParseModel(tools::RobotGridModel(o)));
  for (auto _ : state) {
    ModelChecker checker(g, {});
    benchmark::DoNotOptimize(
        checker.Check("<<rbt1:rbt2>>max=? ( P [ !\"c\" U \"g1\" ] + P [ !\"c\" U \"g2\" ] )")
            .values[0]);
  }
}
BENCHMARK(BM_RobotPair)->Arg(4)->Unit(benchmark::kMillisecond);
#endif

}  // namespace
}  // namespace csg

BENCHMARK_MAIN();
