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

#include "weakreal/sampler.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "weakreal/errors.h"

namespace weakreal {

namespace {

using Counts8 = std::array<std::int64_t, 8>;

std::string bitstring(std::size_t index) {
    std::string s = "000";
    for (std::size_t k = 0; k < 3; k++) {
        if ((index >> (2 - k)) & 1u) {
            s[k] = '1';
        }
    }
    return s;
}

std::size_t bit_index(const std::string &bits) {
    std::size_t i = 0;
    for (char ch : bits) {
        i = (i << 1) | static_cast<std::size_t>(ch == '1');
    }
    return i;
}

Counts8 to_array(const CountsRun &run) {
    Counts8 out{};
    for (const auto &[k, v] : run.counts) {
        out[bit_index(k)] += v;
    }
    return out;
}

// Sample moments from pooled counts; also the second moments needed for sigma.
struct PooledSetting {
    Counts8 counts{};
    std::int64_t n = 0;

    void add(const Counts8 &c) {
        for (std::size_t i = 0; i < 8; i++) {
            counts[i] += c[i];
            n += c[i];
        }
    }
    SettingMoments moments() const {
        OutcomeDistribution p{};
        for (std::size_t i = 0; i < 8; i++) {
            p[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
        }
        return moments_of(p);
    }
};

using PerSetting = std::array<std::vector<Counts8>, 4>;

PerSetting group_runs(const std::vector<CountsTable> &tables) {
    if (tables.empty()) {
        throw DegenerateInput("no counts tables");
    }
    const CountsMeta &ref = tables.front().meta;
    PerSetting groups;
    for (std::size_t t = 0; t < tables.size(); t++) {
        const auto &tab = tables[t];
        tab.validate();
        if (tab.meta.psi != ref.psi || tab.meta.theta != ref.theta || tab.meta.order != ref.order ||
            tab.meta.shots != ref.shots) {
            throw std::invalid_argument("table " + std::to_string(t) + " has inconsistent metadata");
        }
        std::array<std::size_t, 4> per{};
        for (const auto &run : tab.runs) {
            std::size_t s = setting_index(run.sign_a, run.sign_b);
            groups[s].push_back(to_array(run));
            per[s]++;
        }
        for (std::size_t s = 0; s < 4; s++) {
            if (per[s] == 0 || per[s] != per[0]) {
                throw std::invalid_argument("table " + std::to_string(t) +
                                            " does not hold every sign setting equally often");
            }
        }
    }
    return groups;
}

ExpectationSet combine_pooled(const std::array<PooledSetting, 4> &pooled) {
    std::array<SettingMoments, 4> m;
    for (std::size_t s = 0; s < 4; s++) {
        m[s] = pooled[s].moments();
    }
    return combine_settings(m);
}

}  // namespace

void CountsTable::validate() const {
    if (meta.shots <= 0) {
        throw SchemaError("/meta/shots", "shots must be positive");
    }
    if (runs.empty()) {
        throw SchemaError("/runs", "runs must not be empty");
    }
    for (std::size_t r = 0; r < runs.size(); r++) {
        std::string where = "/runs/" + std::to_string(r);
        const auto &run = runs[r];
        if (run.sign_a != 1 && run.sign_a != -1) {
            throw SchemaError(where + "/sign_a", "sign must be 1 or -1");
        }
        if (run.sign_b != 1 && run.sign_b != -1) {
            throw SchemaError(where + "/sign_b", "sign must be 1 or -1");
        }
        std::int64_t total = 0;
        for (const auto &[k, v] : run.counts) {
            if (k.size() != 3 || k.find_first_not_of("01") != std::string::npos) {
                throw SchemaError(where + "/counts/" + k, "key must be a 3-bit string");
            }
            if (v < 0) {
                throw SchemaError(where + "/counts/" + k, "count must be non-negative");
            }
            total += v;
        }
        if (total != meta.shots) {
            throw SchemaError(where + "/counts",
                              "counts sum to " + std::to_string(total) + ", expected " + std::to_string(meta.shots));
        }
    }
}

std::array<std::int64_t, 8> draw_multinomial(const OutcomeDistribution &p, std::int64_t n, StreamRng &rng) {
    std::array<std::int64_t, 8> out{};
    double rest = 0;
    for (double v : p) {
        rest += std::max(v, 0.0);
    }
    std::int64_t left = n;
    for (std::size_t i = 0; i < 7 && left > 0; i++) {
        double pi = std::max(p[i], 0.0);
        double q = rest > 0 ? std::clamp(pi / rest, 0.0, 1.0) : 0.0;
        std::int64_t k = std::binomial_distribution<std::int64_t>(left, q)(rng);
        out[i] = k;
        left -= k;
        rest -= pi;
    }
    out[7] += left;
    return out;
}

std::vector<CountsTable> sample_counts(const ProtocolConfig &family, const SampleSpec &spec, unsigned threads) {
    if (spec.shots < 1 || spec.repetitions < 1 || spec.jobs < 1) {
        throw std::invalid_argument("shots, repetitions and jobs must be at least 1");
    }
    std::array<OutcomeDistribution, 4> dists;
    for (std::size_t s = 0; s < 4; s++) {
        dists[s] = exact_expectations(family.with_signs(kSettings[s].first, kSettings[s].second));
    }
    CountsMeta meta{family.psi, family.theta, family.order, spec.shots, "simulated"};
    std::vector<CountsTable> tables(static_cast<std::size_t>(spec.jobs));

    auto run_job = [&](std::uint64_t job) {
        CountsTable &tab = tables[job];
        tab.meta = meta;
        auto reps = static_cast<std::uint64_t>(spec.repetitions);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> order;
        for (std::uint64_t r = 0; r < reps; r++) {
            for (std::uint64_t s = 0; s < 4; s++) {
                order.emplace_back(r, s);
            }
        }
        StreamRng shuffler(spec.seed, {job, std::numeric_limits<std::uint64_t>::max()});
        for (std::size_t i = order.size(); i > 1; i--) {
            auto j = static_cast<std::size_t>(shuffler() % i);
            std::swap(order[i - 1], order[j]);
        }
        for (auto [r, s] : order) {
            StreamRng rng(spec.seed, {job, r, s});
            auto counts = draw_multinomial(dists[s], spec.shots, rng);
            CountsRun run;
            run.sign_a = kSettings[s].first;
            run.sign_b = kSettings[s].second;
            for (std::size_t i = 0; i < 8; i++) {
                if (counts[i] > 0) {
                    run.counts[bitstring(i)] = counts[i];
                }
            }
            tab.runs.push_back(std::move(run));
        }
    };

    if (threads == 0) {
        threads = default_thread_count();
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(tables.size()));
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t j = next++; j < tables.size(); j = next++) {
            run_job(j);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; t++) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    return tables;
}

ExpectationSet EstimatedSet::values() const {
    ExpectationSet e;
    e.c = c.value;
    e.a = a.value;
    e.b = b.value;
    e.ac = ac.value;
    e.bc = bc.value;
    e.ab = ab.value;
    e.abc = abc.value;
    return e;
}

EstimatedSet estimate(const std::vector<CountsTable> &tables) {
    PerSetting groups = group_runs(tables);
    std::array<PooledSetting, 4> pooled;
    for (std::size_t s = 0; s < 4; s++) {
        for (const auto &c : groups[s]) {
            pooled[s].add(c);
        }
    }
    std::array<SettingMoments, 4> m;
    for (std::size_t s = 0; s < 4; s++) {
        m[s] = pooled[s].moments();
    }
    ExpectationSet e = combine_settings(m);

    // Var of a contrast mean: sum over settings of (1/4)^2 (E[x^2] - E[x]^2)/N_s.
    // E[x^2] is 1 for products of meter signs and c when the condition enters.
    auto sigma = [&](auto first, bool conditioned) {
        double v = 0;
        for (std::size_t s = 0; s < 4; s++) {
            double mean = first(m[s]);
            double second = conditioned ? m[s].c : 1.0;
            v += (second - mean * mean) / static_cast<double>(pooled[s].n) / 16;
        }
        return std::sqrt(std::max(v, 0.0));
    };
    std::int64_t n = 0;
    for (const auto &p : pooled) {
        n += p.n;
    }
    EstimatedSet out;
    out.psi = tables.front().meta.psi;
    out.theta = tables.front().meta.theta;
    out.jobs = static_cast<std::int64_t>(tables.size());
    out.shots_per_setting = pooled[0].n;
    out.c = {e.c, sigma([](const SettingMoments &x) { return x.c; }, true), n};
    out.a = {e.a, sigma([](const SettingMoments &x) { return x.a; }, false), n};
    out.b = {e.b, sigma([](const SettingMoments &x) { return x.b; }, false), n};
    out.ab = {e.ab, sigma([](const SettingMoments &x) { return x.ab; }, false), n};
    out.ac = {e.ac, sigma([](const SettingMoments &x) { return x.ac; }, true), n};
    out.bc = {e.bc, sigma([](const SettingMoments &x) { return x.bc; }, true), n};
    out.abc = {e.abc, sigma([](const SettingMoments &x) { return x.abc; }, true), n};
    return out;
}

double bernoulli_sigma_abc(double c, double jobs, double shots, double reps) {
    if (!(jobs > 0 && shots > 0 && reps > 0)) {
        throw std::invalid_argument("jobs, shots and repetitions must be positive");
    }
    return std::sqrt(std::max(c - c * c, 0.0)) / (2 * std::sqrt(jobs * shots * reps));
}

Significance violation_significance(const EstimatedSet &est) {
    if (!(est.c.value > 0)) {
        throw DegenerateInput("condition probability is zero");
    }
    auto report = violation_lhs(est.values());
    if (report.indeterminate()) {
        throw DegenerateInput("realism ratio is indeterminate");
    }
    Significance s;
    s.lhs = *report.lhs;
    double ra = est.abc.sigma / est.abc.value;
    double rc = est.c.sigma / est.c.value;
    s.sigma = std::abs(s.lhs) * std::sqrt(ra * ra + rc * rc);
    if (s.sigma == 0) {
        s.exact = true;
        s.z_score = s.lhs > 1 ? std::numeric_limits<double>::infinity()
                              : (s.lhs < 1 ? -std::numeric_limits<double>::infinity() : 0.0);
    } else {
        s.z_score = (s.lhs - 1) / s.sigma;
    }
    return s;
}

EstimateWithError bootstrap_sigma(const std::vector<CountsTable> &tables, std::size_t n_resamples, std::uint64_t seed) {
    if (n_resamples < 100) {
        throw std::invalid_argument("at least 100 resamples are required");
    }
    PerSetting groups = group_runs(tables);
    std::array<PooledSetting, 4> full;
    for (std::size_t s = 0; s < 4; s++) {
        for (const auto &c : groups[s]) {
            full[s].add(c);
        }
    }
    auto point = violation_lhs(combine_pooled(full));
    if (point.indeterminate()) {
        throw DegenerateInput("realism ratio is indeterminate");
    }
    std::vector<double> lhs;
    lhs.reserve(n_resamples);
    for (std::uint64_t k = 0; k < n_resamples; k++) {
        StreamRng rng(seed, {k});
        std::array<PooledSetting, 4> pooled;
        for (std::size_t s = 0; s < 4; s++) {
            const auto &g = groups[s];
            for (std::size_t i = 0; i < g.size(); i++) {
                pooled[s].add(g[static_cast<std::size_t>(rng() % g.size())]);
            }
        }
        auto r = violation_lhs(combine_pooled(pooled));
        if (r.indeterminate()) {
            continue;
        }
        lhs.push_back(*r.lhs);
    }
    if (lhs.size() < 2) {
        throw DegenerateInput("too few determinate resamples");
    }
    double mean = 0;
    for (double v : lhs) {
        mean += v;
    }
    mean /= static_cast<double>(lhs.size());
    double var = 0;
    for (double v : lhs) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(lhs.size() - 1);
    std::int64_t n = 0;
    for (const auto &p : full) {
        n += p.n;
    }
    return {*point.lhs, std::sqrt(std::max(var, 0.0)), n};
}

}  // namespace weakreal
