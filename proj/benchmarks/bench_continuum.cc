// Copyright 2026 The weakreal Authors
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

#include "weakreal/continuum.h"

namespace weakreal {
namespace {

void BM_FockCheck(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fock_check(n));
    }
}
BENCHMARK(BM_FockCheck)->Arg(2)->Arg(10);

void BM_QuantumPmMoments(benchmark::State &state) {
    auto psi = cat_state(2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(quantum_pm_moments(psi, 0.3));
    }
}
BENCHMARK(BM_QuantumPmMoments);

void BM_PolarDecompose(benchmark::State &state) {
    auto psi = cat_state(2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(polar_decompose(psi));
    }
}
BENCHMARK(BM_PolarDecompose);

}  // namespace
}  // namespace weakreal
