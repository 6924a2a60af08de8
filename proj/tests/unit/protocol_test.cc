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

#include "weakreal/protocol.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.h"
#include "weakreal/errors.h"

namespace weakreal {
namespace {

NoiseParams random_noise(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    NoiseParams n;
    n.epsilon = 0.05 * u(rng);
    n.alpha = 0.2 * u(rng) - 0.1;
    n.beta = 0.2 * u(rng) - 0.1;
    n.eta = 0.03 * u(rng);
    n.omega = n.eta + 0.03 * u(rng);
    return n;
}

ProtocolConfig random_config(std::mt19937_64 &rng, bool noisy) {
    std::uniform_real_distribution<double> u(0, 1);
    ProtocolConfig c;
    c.psi = kPi * u(rng) * 0.999;
    c.theta = kPi * (u(rng) - 0.5);
    c.order = u(rng) < 0.5 ? Order::AB : Order::BA;
    c.sign_a = u(rng) < 0.5 ? 1 : -1;
    c.sign_b = u(rng) < 0.5 ? 1 : -1;
    if (noisy) {
        c.noise_a = random_noise(rng);
        c.noise_b = random_noise(rng);
    }
    return c;
}

void expect_sets_near(const ExpectationSet &x, const ExpectationSet &y, double tol) {
    EXPECT_NEAR(x.c, y.c, tol);
    EXPECT_NEAR(x.a, y.a, tol);
    EXPECT_NEAR(x.b, y.b, tol);
    EXPECT_NEAR(x.ac, y.ac, tol);
    EXPECT_NEAR(x.bc, y.bc, tol);
    EXPECT_NEAR(x.ab, y.ab, tol);
    EXPECT_NEAR(x.abc, y.abc, tol);
}

TEST(Config, Validation) {
    ProtocolConfig c;
    EXPECT_NO_THROW(c.validate());
    c.theta = 2;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.theta = 0.1;
    c.psi = kPi;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.psi = 0.5;
    c.sign_a = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_EQ(parse_order("BA"), Order::BA);
    EXPECT_EQ(to_string(Order::AB), "AB");
    EXPECT_THROW(parse_order("ab"), std::invalid_argument);
    EXPECT_DOUBLE_EQ(ProtocolConfig{}.lambda(), std::sin(0.1));
}

TEST(Exact, MatchesKetSimulation) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; k++) {
        auto cfg = random_config(rng, k % 2 == 1);
        auto p = exact_expectations(cfg);
        auto q = oracle::ket_distribution(cfg);
        double total = 0;
        for (int i = 0; i < 8; i++) {
            EXPECT_NEAR(p[i], q[i], 1e-12) << "config " << k << " outcome " << i;
            EXPECT_GE(p[i], -1e-12);
            total += p[i];
        }
        EXPECT_NEAR(total, 1, 1e-12);
    }
}

TEST(Exact, ZeroCouplingIsUniformMeters) {
    for (double psi : {0.0, 0.4, kPi / 4, 2.0}) {
        ProtocolConfig cfg;
        cfg.psi = psi;
        cfg.theta = 0;
        auto p = exact_expectations(cfg);
        double c2 = std::cos(psi) * std::cos(psi);
        for (int ab = 0; ab < 4; ab++) {
            EXPECT_NEAR(p[ab * 2], c2 / 4, 1e-14);
            EXPECT_NEAR(p[ab * 2 + 1], (1 - c2) / 4, 1e-14);
        }
    }
}

TEST(Exact, ConditionProbability) {
    ProtocolConfig cfg;
    auto m = moments_of(exact_expectations(cfg));
    double l = std::sin(0.1);
    EXPECT_NEAR(m.c, 0.5 + l * l / 4, 1e-12);
    EXPECT_NEAR(m.c, 0.50249, 1e-5);
}

TEST(Exact, OrderInvariance) {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 50; k++) {
        auto cfg = random_config(rng, k % 2 == 1);
        cfg.order = Order::AB;
        auto ab = exact_expectations(cfg);
        cfg.order = Order::BA;
        auto ba = exact_expectations(cfg);
        for (int i = 0; i < 8; i++) {
            EXPECT_NEAR(ab[i], ba[i], 1e-12);
        }
        expect_sets_near(contrast_expectations(cfg), contrast_expectations(cfg.with_signs(1, 1)), 1e-12);
    }
}

TEST(Contrast, MatchesIdealMoments) {
    for (double psi : {0.0, 0.3, kPi / 4, 1.2, kPi / 2, 2.5}) {
        for (double theta : {1e-3, 0.05, 0.1, 0.2, 0.7, kPi / 2}) {
            ProtocolConfig cfg;
            cfg.psi = psi;
            cfg.theta = theta;
            cfg.order = theta > 0.5 ? Order::BA : Order::AB;
            auto e = contrast_expectations(cfg);
            EXPECT_FALSE(e.limit);
            expect_sets_near(e, oracle::ideal_moments(psi, std::sin(theta)), 1e-12);
        }
    }
}

TEST(Contrast, LimitValues) {
    auto e = limit_expectations(kPi / 4);
    EXPECT_TRUE(e.limit);
    EXPECT_NEAR(e.ac, -1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(e.bc, -1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(e.abc, 0.75, 1e-12);
    EXPECT_NEAR(e.ab, 1, 1e-12);
    EXPECT_NEAR(e.c, 0.5, 1e-12);
    EXPECT_THROW(limit_expectations(-0.1), std::invalid_argument);
}

// Contrast combination of hand-built per-setting moments.
TEST(Contrast, CombineWeights) {
    std::array<SettingMoments, 4> m{};
    for (std::size_t i = 0; i < 4; i++) {
        auto [sa, sb] = kSettings[i];
        m[i].a = sa * 0.2;
        m[i].b = sb * 0.4;
        m[i].ab = sa * sb * 0.1 + 0.3;
        m[i].ac = sa * 0.05;
        m[i].bc = sb * 0.07 + 0.01;
        m[i].abc = sa * sb * 0.02;
        m[i].c = 0.5 + 0.01 * static_cast<double>(i);
    }
    auto e = combine_settings(m);
    EXPECT_NEAR(e.a, 0.2, 1e-15);
    EXPECT_NEAR(e.b, 0.4, 1e-15);
    EXPECT_NEAR(e.ab, 0.1, 1e-15);
    EXPECT_NEAR(e.ac, 0.05, 1e-15);
    EXPECT_NEAR(e.bc, 0.07, 1e-15);
    EXPECT_NEAR(e.abc, 0.02, 1e-15);
    EXPECT_NEAR(e.c, 0.515, 1e-15);
    EXPECT_EQ(setting_index(-1, 1), 2u);
}

TEST(Violation, LimitAndFinite) {
    ProtocolConfig cfg;
    cfg.theta = 0;
    ASSERT_TRUE(predict(cfg).lhs.has_value());
    EXPECT_NEAR(*predict(cfg).lhs, 4.0 / 3.0, 1e-12);
    for (double psi : {0.0, 0.3, 1.0, 1.4, 2.9}) {
        cfg.psi = psi;
        double c2 = std::cos(psi) * std::cos(psi);
        EXPECT_NEAR(*predict(cfg).lhs, 2 / (c2 + 1), 1e-12);
    }
    cfg.psi = kPi / 4;
    cfg.theta = 0.1;
    EXPECT_NEAR(*predict(cfg).lhs, 1.3267, 1e-4);
    EXPECT_NEAR(*predict(cfg).lhs, ideal_lhs(kPi / 4, std::sin(0.1)), 1e-10);
    EXPECT_EQ(predict(cfg).classical_bound, 1.0);
}

TEST(Violation, IndeterminateAtRightAngle) {
    ProtocolConfig cfg;
    cfg.psi = kPi / 2;
    cfg.theta = 0;
    auto r = predict(cfg);
    EXPECT_TRUE(r.indeterminate());
    EXPECT_FALSE(violation_lhs(ExpectationSet{}).lhs.has_value());
    cfg.theta = 0.1;
    EXPECT_FALSE(predict(cfg).indeterminate());
    EXPECT_NEAR(*predict(cfg).lhs, 0, 1e-12);
}

TEST(Violation, StrongCouplingNeverViolates) {
    for (double psi = 0; psi < kPi; psi += 0.05) {
        ProtocolConfig cfg;
        cfg.psi = psi;
        cfg.theta = kPi / 2;
        auto r = predict(cfg);
        ASSERT_TRUE(r.lhs.has_value());
        double c2 = std::cos(psi) * std::cos(psi);
        EXPECT_NEAR(*r.lhs, 4 * c2 / ((1 + c2) * (1 + c2)), 1e-12);
        EXPECT_LE(*r.lhs, 1 + 1e-12);
    }
}

TEST(Sweep, ShapeOrderAndMonotone) {
    std::vector<double> psis = {0.0, kPi / 4, kPi / 2};
    std::vector<double> thetas;
    for (int i = 0; i <= 20; i++) {
        thetas.push_back(kPi / 2 * i / 20.0);
    }
    auto rows = sweep(psis, thetas, 3);
    ASSERT_EQ(rows.size(), psis.size() * thetas.size());
    EXPECT_EQ(rows[0].psi, 0.0);
    EXPECT_NEAR(*rows[0].lhs, 1, 1e-12);
    EXPECT_EQ(rows[1].theta, thetas[1]);
    EXPECT_NEAR(rows[1].lambda, std::sin(thetas[1]), 1e-15);
    for (std::size_t j = 1; j < thetas.size(); j++) {
        EXPECT_LT(*rows[thetas.size() + j].lhs, *rows[thetas.size() + j - 1].lhs);
    }
    EXPECT_FALSE(rows[2 * thetas.size()].lhs.has_value());
    auto serial = sweep(psis, thetas, 1);
    for (std::size_t k = 0; k < rows.size(); k++) {
        EXPECT_EQ(rows[k].lhs, serial[k].lhs);
    }
    std::vector<double> empty;
    EXPECT_THROW(sweep(empty, thetas), std::invalid_argument);
}

TEST(Baseline, ConstantSignalSaturates) {
    ClassicalScenario s;
    s.z_dist = ClassicalScenario::ZDist::Constant;
    s.z_mean = 0.7;
    s.noise_dist = ClassicalScenario::NoiseDist::None;
    s.condition = ClassicalScenario::Condition::Always;
    auto r = classical_baseline(s, 1000, 1);
    EXPECT_NEAR(r.lhs, 1, 1e-12);
    EXPECT_EQ(r.n_conditioned, 1000u);
}

TEST(Baseline, NoisySymmetricSignal) {
    ClassicalScenario s;
    s.condition = ClassicalScenario::Condition::Always;
    auto r = classical_baseline(s, 200000, 2);
    EXPECT_LT(r.lhs, 1);
    EXPECT_LT(r.lhs, 4 * r.stderr_lhs + 0.01);
}

TEST(Baseline, ContrastMixtureWithBias) {
    ClassicalScenario s;
    s.z_dist = ClassicalScenario::ZDist::Gaussian;
    s.z_mean = 1;
    s.bias_a = 0.8;
    s.bias_b = -0.5;
    s.contrast = true;
    auto r = classical_baseline(s, 200000, 3);
    EXPECT_LE(r.lhs, 1 + 4 * r.stderr_lhs);
}

TEST(Baseline, Errors) {
    ClassicalScenario s;
    s.z_dist = ClassicalScenario::ZDist::Constant;
    s.z_mean = -1;
    s.condition = ClassicalScenario::Condition::Threshold;
    EXPECT_THROW(classical_baseline(s, 1000, 4), DegenerateInput);
    EXPECT_THROW(classical_baseline(ClassicalScenario{}, 5, 4), std::invalid_argument);
}

TEST(Baseline, Deterministic) {
    ClassicalScenario s;
    auto a = classical_baseline(s, 5000, 9);
    auto b = classical_baseline(s, 5000, 9);
    EXPECT_EQ(a.lhs, b.lhs);
    EXPECT_EQ(a.stderr_lhs, b.stderr_lhs);
}

TEST(Baseline, RandomScenariosRespectBound) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> pick(0, 3);
    int checked = 0;
    for (int k = 0; k < 100; k++) {
        ClassicalScenario s;
        s.z_dist = static_cast<ClassicalScenario::ZDist>(pick(rng));
        s.z_mean = 2 * u(rng) - 1;
        s.z_scale = 0.1 + 2 * u(rng);
        s.noise_dist = static_cast<ClassicalScenario::NoiseDist>(pick(rng));
        s.noise_scale = 2 * u(rng);
        s.contrast = u(rng) < 0.5;
        if (s.contrast) {
            s.bias_a = 2 * u(rng) - 1;
            s.bias_b = 2 * u(rng) - 1;
        }
        s.condition = static_cast<ClassicalScenario::Condition>(pick(rng) % 3);
        s.threshold = s.z_mean + (u(rng) - 0.5) * s.z_scale;
        s.steepness = 0.5 + 4 * u(rng);
        BaselineResult r;
        try {
            r = classical_baseline(s, 40000, 100 + k);
        } catch (const DegenerateInput &) {
            continue;
        }
        checked++;
        EXPECT_LE(r.lhs, 1 + 4 * r.stderr_lhs + 1e-12) << "scenario " << k;
    }
    EXPECT_GT(checked, 80);
}

TEST(Threads, EnvironmentCap) {
    setenv("WEAKREAL_THREADS", "1", 1);
    EXPECT_EQ(default_thread_count(), 1u);
    unsetenv("WEAKREAL_THREADS");
    EXPECT_GE(default_thread_count(), 1u);
}

}  // namespace
}  // namespace weakreal
