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

#include "weakreal/qcore.h"

namespace weakreal {
namespace {

void BM_Kron(benchmark::State &state) {
    CMatrix a = CMatrix::Random(4, 4);
    CMatrix b = CMatrix::Random(2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kron(a, b));
    }
}
BENCHMARK(BM_Kron);

void BM_ApplyTwoQubitGate(benchmark::State &state) {
    auto n = static_cast<std::size_t>(state.range(0));
    DensityState rho = DensityState::zero_state(n);
    CMatrix u = zz_coupling(0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_unitary(rho, u, {0, n - 1}));
    }
}
BENCHMARK(BM_ApplyTwoQubitGate)->Arg(3)->Arg(5)->Arg(7);

void BM_PartialTrace(benchmark::State &state) {
    DensityState rho = DensityState::zero_state(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, {2}));
    }
}
BENCHMARK(BM_PartialTrace);

}  // namespace
}  // namespace weakreal
