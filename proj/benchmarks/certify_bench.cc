// Copyright 2026 The Structcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "structcert/certify.h"
#include "structcert/partition.h"
#include "structcert/stats.h"

namespace structcert {
namespace {

void BM_EnumerateCells(benchmark::State& state) {
  const auto r = static_cast<int>(state.range(0));
  const NoiseSpec noise({0.02, 0.45});
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerateCells({r, r}, noise));
  }
  state.SetItemsProcessed(state.iterations() * (r + 1) * (r + 1));
}
BENCHMARK(BM_EnumerateCells)->Arg(5)->Arg(20)->Arg(45);

void BM_Margin(benchmark::State& state) {
  const NoiseSpec noise({0.02, 0.45});
  const auto bounds = BoundsFromProbabilities(0.99995, 0.00005);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Margin(bounds, {1, 45}, noise));
  }
}
BENCHMARK(BM_Margin);

void BM_GridDirect(benchmark::State& state) {
  const auto r = static_cast<int>(state.range(0));
  const auto partition = MotifPartition(10, 10);
  const NoiseSpec noise({0.02, 0.45});
  const auto bounds = BoundsFromProbabilities(0.99995, 0.00005);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ComputeCertificationGrid(bounds, {r, r}, noise, partition));
  }
}
BENCHMARK(BM_GridDirect)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GridWithPlan(benchmark::State& state) {
  const NoiseSpec noise({0.02, 0.45});
  const CellPlan plan({45, 45}, noise);
  const auto bounds = BoundsFromProbabilities(0.99995, 0.00005);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeCertificationGrid(bounds, plan));
  }
}
BENCHMARK(BM_GridWithPlan)->Unit(benchmark::kMillisecond);

void BM_BuildPlan(benchmark::State& state) {
  const NoiseSpec noise({0.02, 0.45});
  for (auto _ : state) {
    benchmark::DoNotOptimize(CellPlan({45, 45}, noise));
  }
}
BENCHMARK(BM_BuildPlan)->Unit(benchmark::kMillisecond);

void BM_ClopperPearson(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ClopperPearsonLower(n - 3, n, 0.99));
    benchmark::DoNotOptimize(ClopperPearsonUpper(3, n, 0.99));
  }
}
BENCHMARK(BM_ClopperPearson)->Arg(100)->Arg(100'000);

}  // namespace
}  // namespace structcert
