// Copyright 2026 The cssep Authors
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

#include "cssep/gme.hpp"
#include "cssep/named_states.hpp"
#include "cssep/product_search.hpp"
#include "cssep/separability.hpp"
#include "cssep/structured.hpp"

namespace {

using namespace cssep;

void BM_SigmaProductSearch(benchmark::State &state) {
    DensityMatrix rho = build_sigma().state;
    Subspace range = range_kernel(rho).range;
    for (auto _ : state) {
        benchmark::DoNotOptimize(symmetric_product_vectors(range, 2, 4));
    }
}
BENCHMARK(BM_SigmaProductSearch)->Unit(benchmark::kMillisecond);

void BM_ClassifySigma(benchmark::State &state) {
    DensityMatrix rho = build_sigma().state;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(rho));
    }
}
BENCHMARK(BM_ClassifySigma)->Unit(benchmark::kMillisecond);

void BM_ClassifyEntangledRank6(benchmark::State &state) {
    DensityMatrix rho = build_entangled_rank6().state;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(rho));
    }
}
BENCHMARK(BM_ClassifyEntangledRank6)->Unit(benchmark::kMillisecond);

void BM_GmePowerIteration(benchmark::State &state) {
    DensityMatrix rho = build_nonnegative_conditioned().state;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gme_power_iteration(rho));
    }
}
BENCHMARK(BM_GmePowerIteration)->Unit(benchmark::kMillisecond);

void BM_ToeplitzScan(benchmark::State &state) {
    int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(toeplitz_scan(20, d, 1));
    }
}
BENCHMARK(BM_ToeplitzScan)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
