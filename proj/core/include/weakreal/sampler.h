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

#ifndef WEAKREAL_SAMPLER_H
#define WEAKREAL_SAMPLER_H

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "weakreal/protocol.h"
#include "weakreal/rng.h"

namespace weakreal {

struct CountsMeta {
    double psi = 0;
    double theta = 0;
    Order order = Order::AB;
    std::int64_t shots = 0;
    std::string source = "simulated";

    bool operator==(const CountsMeta &) const = default;
};

/// Counts for one sign setting, keyed by "abc" bitstrings.
struct CountsRun {
    int sign_a = 1;
    int sign_b = 1;
    std::map<std::string, std::int64_t> counts;

    bool operator==(const CountsRun &) const = default;
};

/// One job: its runs in execution order.
struct CountsTable {
    CountsMeta meta;
    std::vector<CountsRun> runs;

    /// Throws SchemaError on malformed bitstrings, negative counts or a run
    /// whose total differs from meta.shots.
    void validate() const;

    bool operator==(const CountsTable &) const = default;
};

struct SampleSpec {
    std::int64_t shots = 10000;
    std::int64_t repetitions = 25;
    std::int64_t jobs = 1;
    std::uint64_t seed = 0;
};

/// Multinomial draws from exact_expectations for every (job, repetition,
/// setting), each from its own RNG substream. Runs within a job are shuffled
/// and stored in execution order. Signs in `family` are ignored.
std::vector<CountsTable> sample_counts(const ProtocolConfig &family, const SampleSpec &spec, unsigned threads = 0);

/// Multinomial draw by sequential conditional binomials.
std::array<std::int64_t, 8> draw_multinomial(const OutcomeDistribution &p, std::int64_t n, StreamRng &rng);

struct EstimateWithError {
    double value = 0;
    double sigma = 0;
    std::int64_t n_effective = 0;
};

struct EstimatedSet {
    EstimateWithError c, a, b, ac, bc, ab, abc;
    double psi = 0;
    double theta = 0;
    std::int64_t jobs = 0;
    /// Shots per setting summed over jobs and repetitions.
    std::int64_t shots_per_setting = 0;

    ExpectationSet values() const;
};

/// Pools counts per setting and combines them with contrast weights. Each
/// sigma uses the per-setting sample variance of the estimated quantity.
/// Throws on empty input, missing settings or inconsistent metadata.
EstimatedSet estimate(const std::vector<CountsTable> &tables);

/// sqrt(c - c^2) / (2 sqrt(J S R)), the closed-form error of abc.
double bernoulli_sigma_abc(double c, double jobs, double shots, double reps);

struct Significance {
    double lhs = 0;
    double sigma = 0;
    /// (lhs - 1)/sigma; +inf when sigma is zero.
    double z_score = 0;
    bool exact = false;
};

/// Delta-method error of (ac+bc)^2/(4 abc c) keeping only the abc and c terms.
/// Throws DegenerateInput when the lhs is indeterminate.
Significance violation_significance(const EstimatedSet &est);

/// Standard deviation of the lhs over resamples that draw runs with
/// replacement within each setting.
EstimateWithError bootstrap_sigma(const std::vector<CountsTable> &tables, std::size_t n_resamples, std::uint64_t seed);

}  // namespace weakreal

#endif
