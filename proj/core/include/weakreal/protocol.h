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

#ifndef WEAKREAL_PROTOCOL_H
#define WEAKREAL_PROTOCOL_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "weakreal/imperfect.h"

namespace weakreal {

/// Qubit roles in the three-qubit circuit.
inline constexpr std::size_t kMeterA = 0;
inline constexpr std::size_t kMeterB = 1;
inline constexpr std::size_t kSystem = 2;

enum class Order { AB, BA };

std::string_view to_string(Order o);
/// Accepts "AB" or "BA".
Order parse_order(std::string_view s);

/// The four contrast settings (sign_a, sign_b) in canonical order.
inline constexpr std::array<std::pair<int, int>, 4> kSettings = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
std::size_t setting_index(int sign_a, int sign_b);

struct ProtocolConfig {
    double psi = kPi / 4;
    double theta = 0.1;
    Order order = Order::AB;
    int sign_a = 1;
    int sign_b = 1;
    std::optional<NoiseParams> noise_a;
    std::optional<NoiseParams> noise_b;

    /// |theta| <= pi/2, psi in [0, pi), signs +-1, noise valid.
    void validate() const;
    double lambda() const;
    ProtocolConfig with_signs(int a, int b) const;
};

/// p(a, b, c) indexed by the bitstring "abc" read as a binary number.
/// Meter bit 0 means outcome +1; system bit 0 means the condition is met.
using OutcomeDistribution = std::array<double, 8>;

/// Exact probabilities from a dense three-qubit simulation of the circuit.
OutcomeDistribution exact_expectations(const ProtocolConfig &config);

/// Per-setting moments. c is the indicator of the condition.
struct SettingMoments {
    double a = 0;
    double b = 0;
    double ab = 0;
    double ac = 0;
    double bc = 0;
    double abc = 0;
    double c = 0;
};

SettingMoments moments_of(const OutcomeDistribution &p);

/// Contrast-combined correlations. With `limit` set the entries are the leading
/// weak-coupling coefficients a/lambda, ac/lambda, ab/lambda^2, abc/lambda^2, c.
struct ExpectationSet {
    double c = 0;
    double a = 0;
    double b = 0;
    double ac = 0;
    double bc = 0;
    double ab = 0;
    double abc = 0;
    bool limit = false;
};

/// Meter weights s/2, an ignored meter 1/2 per sign, c averaged with 1/4.
/// Moments are given per kSettings entry.
ExpectationSet combine_settings(std::span<const SettingMoments, 4> moments);

/// Runs all four sign settings of `config` and combines them.
ExpectationSet contrast_expectations(const ProtocolConfig &config);

/// Leading coefficients as lambda -> 0 at fixed psi.
ExpectationSet limit_expectations(double psi);

struct ViolationReport {
    /// Empty when the denominator 4 abc c is below tol::kIndeterminate.
    std::optional<double> lhs;
    ExpectationSet components;
    double classical_bound = 1.0;

    bool indeterminate() const {
        return !lhs.has_value();
    }
};

/// (ac + bc)^2 / (4 abc c).
ViolationReport violation_lhs(const ExpectationSet &e);

/// Limit mode when theta == 0, exact simulation otherwise.
ViolationReport predict(const ProtocolConfig &config);

/// 2 cos^2 psi / (<C>_lambda (1 + cos^2 psi)) with <C>_lambda = cos^2 psi + lambda^2 sin^2 psi / 2.
double ideal_lhs(double psi, double lambda);

struct SweepRow {
    double psi = 0;
    double theta = 0;
    double lambda = 0;
    std::optional<double> lhs;
};

/// One row per (psi, theta) pair, psi-major. threads = 0 picks default_thread_count().
std::vector<SweepRow> sweep(std::span<const double> psi_grid, std::span<const double> theta_grid,
                            unsigned threads = 0);

/// Hardware concurrency, capped by the WEAKREAL_THREADS environment variable.
unsigned default_thread_count();

/// Classical two-detector scenario. Each detector reports s * z + bias + noise
/// where s is its preparation sign; the condition depends on z only.
struct ClassicalScenario {
    enum class ZDist { Constant, Rademacher, Gaussian, Uniform };
    enum class NoiseDist { None, Gaussian, Uniform, Rademacher };
    enum class Condition { Always, Threshold, Logistic };

    ZDist z_dist = ZDist::Rademacher;
    double z_mean = 0;
    double z_scale = 1;
    NoiseDist noise_dist = NoiseDist::Gaussian;
    double noise_scale = 1;
    double bias_a = 0;
    double bias_b = 0;
    /// Randomize preparation signs and combine with contrast weights.
    bool contrast = false;
    Condition condition = Condition::Threshold;
    double threshold = 0;
    double steepness = 1;
};

struct BaselineResult {
    double lhs = 0;
    /// Jackknife standard error over 20 batches.
    double stderr_lhs = 0;
    std::size_t n_conditioned = 0;
};

/// Monte-Carlo lhs for a classical scenario. Throws DegenerateInput if the
/// condition is never met.
BaselineResult classical_baseline(const ClassicalScenario &s, std::size_t n_samples, std::uint64_t seed);

}  // namespace weakreal

#endif
