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

#include "weakreal/calibration.h"

namespace weakreal {
namespace {

void BM_CalibrateTetrahedron(benchmark::State &state) {
    Preparations3 preps = {BlochVector::UnitX(), BlochVector::UnitY(), BlochVector::UnitZ()};
    auto pm = prob_matrices(preps, tetrahedron_povm(), BlochVector::UnitZ(), 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(calibrate(pm, AuxVectors{}));
    }
}
BENCHMARK(BM_CalibrateTetrahedron);

void BM_ContrastOperators(benchmark::State &state) {
    Preparations3 preps = {BlochVector::UnitX(), BlochVector::UnitY(), BlochVector::UnitZ()};
    auto povm = tetrahedron_povm();
    auto r = calibrate(prob_matrices(preps, povm, BlochVector::UnitZ(), 0.3), AuxVectors{});
    for (auto _ : state) {
        benchmark::DoNotOptimize(contrast_operators(r, povm, preps));
    }
}
BENCHMARK(BM_ContrastOperators);

}  // namespace
}  // namespace weakreal
