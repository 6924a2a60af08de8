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

#include <vector>

#include "weakreal/protocol.h"
#include "weakreal/sampler.h"

namespace weakreal {
namespace {

void BM_ExactExpectations(benchmark::State &state) {
    ProtocolConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_expectations(cfg));
    }
}
BENCHMARK(BM_ExactExpectations);

void BM_ExactExpectationsNoisy(benchmark::State &state) {
    ProtocolConfig cfg;
    cfg.noise_a = NoiseParams{0.02, 0.05, -0.03, 0.01, 0.02};
    cfg.noise_b = cfg.noise_a;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_expectations(cfg));
    }
}
BENCHMARK(BM_ExactExpectationsNoisy);

void BM_Sweep(benchmark::State &state) {
    std::vector<double> psi(32), theta(32);
    for (int i = 0; i < 32; i++) {
        psi[i] = 1.5 * i / 31.0;
        theta[i] = 0.5 * i / 31.0;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(psi, theta, static_cast<unsigned>(state.range(0))));
    }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->UseRealTime();

void BM_SampleCounts(benchmark::State &state) {
    ProtocolConfig cfg;
    SampleSpec spec{10000, 25, state.range(0), 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_counts(cfg, spec, 1));
    }
    state.SetItemsProcessed(state.iterations() * spec.shots * spec.repetitions * spec.jobs * 4);
}
BENCHMARK(BM_SampleCounts)->Arg(1)->Arg(4);

void BM_Estimate(benchmark::State &state) {
    auto tables = sample_counts(ProtocolConfig{}, SampleSpec{10000, 25, 4, 1}, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate(tables));
    }
}
BENCHMARK(BM_Estimate);

}  // namespace
}  // namespace weakreal
