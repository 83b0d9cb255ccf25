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

#ifndef CSG_SRC_PARALLEL_H_
#define CSG_SRC_PARALLEL_H_

#include <tbb/blocked_range.h>
#include <tbb/info.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace csg::internal {

// Runs f(i) for i in [0, n). Each index must write only its own slots, so
// the result does not depend on the worker count. Requests beyond the
// hardware concurrency are capped.
template <class F>
void ParallelFor(int n, int workers, const F& f) {
  static const int kHardware = tbb::info::default_concurrency();
  if (workers > kHardware) workers = kHardware;
  if (workers <= 1 || n < 128) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  tbb::task_arena arena(workers);
  arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<int>(0, n, 32), [&](const tbb::blocked_range<int>& r) {
      for (int i = r.begin(); i < r.end(); ++i) f(i);
    });
  });
}

}  // namespace csg::internal

#endif  // CSG_SRC_PARALLEL_H_
