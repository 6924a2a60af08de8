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

#include <array>
#include <cmath>
#include <random>

#include "weakreal/errors.h"
#include "weakreal/protocol.h"
#include "weakreal/rng.h"

namespace weakreal {

namespace {

constexpr std::size_t kBatches = 20;

struct Sums {
    double ac = 0;
    double bc = 0;
    double abc = 0;
    double c = 0;
    double n = 0;

    Sums &operator+=(const Sums &o) {
        ac += o.ac;
        bc += o.bc;
        abc += o.abc;
        c += o.c;
        n += o.n;
        return *this;
    }
    Sums operator-(const Sums &o) const {
        return {ac - o.ac, bc - o.bc, abc - o.abc, c - o.c, n - o.n};
    }
    double lhs() const {
        double num = (ac + bc) / n;
        return num * num / (4 * (abc / n) * (c / n));
    }
};

double draw_z(const ClassicalScenario &s, StreamRng &rng) {
    switch (s.z_dist) {
        case ClassicalScenario::ZDist::Constant:
            return s.z_mean;
        case ClassicalScenario::ZDist::Rademacher:
            return s.z_mean + (rng.uniform() < 0.5 ? -s.z_scale : s.z_scale);
        case ClassicalScenario::ZDist::Gaussian:
            return std::normal_distribution<double>(s.z_mean, s.z_scale)(rng);
        case ClassicalScenario::ZDist::Uniform:
            return s.z_mean + s.z_scale * (2 * rng.uniform() - 1);
    }
    return s.z_mean;
}

double draw_noise(const ClassicalScenario &s, StreamRng &rng) {
    switch (s.noise_dist) {
        case ClassicalScenario::NoiseDist::None:
            return 0;
        case ClassicalScenario::NoiseDist::Gaussian:
            return std::normal_distribution<double>(0, s.noise_scale)(rng);
        case ClassicalScenario::NoiseDist::Uniform:
            return s.noise_scale * (2 * rng.uniform() - 1);
        case ClassicalScenario::NoiseDist::Rademacher:
            return rng.uniform() < 0.5 ? -s.noise_scale : s.noise_scale;
    }
    return 0;
}

bool draw_condition(const ClassicalScenario &s, double z, StreamRng &rng) {
    switch (s.condition) {
        case ClassicalScenario::Condition::Always:
            return true;
        case ClassicalScenario::Condition::Threshold:
            return z > s.threshold;
        case ClassicalScenario::Condition::Logistic:
            return rng.uniform() < 1 / (1 + std::exp(-s.steepness * (z - s.threshold)));
    }
    return true;
}

}  // namespace

BaselineResult classical_baseline(const ClassicalScenario &s, std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < kBatches) {
        throw std::invalid_argument("at least 20 samples are required");
    }
    std::array<Sums, kBatches> batches{};
    for (std::size_t k = 0; k < kBatches; k++) {
        StreamRng rng(seed, {k});
        std::size_t n = n_samples / kBatches + (k < n_samples % kBatches ? 1 : 0);
        for (std::size_t i = 0; i < n; i++) {
            double z = draw_z(s, rng);
            int sa = 1;
            int sb = 1;
            if (s.contrast) {
                sa = rng.uniform() < 0.5 ? 1 : -1;
                sb = rng.uniform() < 0.5 ? 1 : -1;
            }
            double a = sa * z + s.bias_a + draw_noise(s, rng);
            double b = sb * z + s.bias_b + draw_noise(s, rng);
            double c = draw_condition(s, z, rng) ? 1.0 : 0.0;
            // Contrast weights s/2 per meter, 1/4 per setting; uniform settings absorb the 1/4.
            auto &t = batches[k];
            t.ac += sa * a * c;
            t.bc += sb * b * c;
            t.abc += sa * sb * a * b * c;
            t.c += c;
            t.n += 1;
        }
    }
    Sums total;
    for (const auto &b : batches) {
        total += b;
    }
    if (total.c == 0) {
        throw DegenerateInput("condition is never met");
    }
    BaselineResult r;
    r.lhs = total.lhs();
    r.n_conditioned = static_cast<std::size_t>(total.c);
    std::array<double, kBatches> loo{};
    double mean = 0;
    for (std::size_t k = 0; k < kBatches; k++) {
        loo[k] = (total - batches[k]).lhs();
        mean += loo[k] / kBatches;
    }
    double ss = 0;
    for (double v : loo) {
        ss += (v - mean) * (v - mean);
    }
    r.stderr_lhs = std::sqrt(ss * (kBatches - 1) / kBatches);
    return r;
}

}  // namespace weakreal
