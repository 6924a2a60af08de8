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

#include "weakreal/calibration.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "weakreal/errors.h"
#include "weakreal/instrument.h"

namespace weakreal {
namespace {

const double kSqrt3 = std::sqrt(3.0);

Povm4 random_povm(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0, 0.5);
    Povm4 p;
    BlochVector sum = BlochVector::Zero();
    for (int k = 0; k < 3; k++) {
        p[k].mu = BlochVector(g(rng), g(rng), g(rng));
        sum += p[k].mu;
    }
    p[3].mu = -sum;
    double total = 0;
    for (auto &m : p) {
        m.mu0 = m.mu.norm() + u(rng);
        total += m.mu0;
    }
    for (auto &m : p) {
        m.mu0 /= total;
        m.mu /= total;
    }
    return p;
}

Preparations3 random_preps(std::mt19937_64 &rng, double radius) {
    std::normal_distribution<double> g;
    Preparations3 r;
    for (auto &v : r) {
        v = BlochVector(g(rng), g(rng), g(rng)).normalized() * radius;
    }
    return r;
}

BlochVector random_direction(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    return BlochVector(g(rng), g(rng), g(rng)).normalized();
}

// ||{M, P}|| / (||M|| ||P||).
double anticommutation_residual(const ContrastOperators &c) {
    return spectral_norm(anticommutator(c.mbar, c.pbar)) / (spectral_norm(c.mbar) * spectral_norm(c.pbar));
}

struct Tetrahedron {
    double lq = 0.3;
    Povm4 povm = tetrahedron_povm();
    Preparations3 preps = {BlochVector::UnitX(), BlochVector::UnitY(), BlochVector::UnitZ()};
    ProbMatrices pm = prob_matrices(preps, povm, BlochVector(0, 0, 1), lq);
    CalibrationResult r = calibrate(pm, AuxVectors{});
};

// Ratio of each entry of a to b over the entries where b is nonzero, and a
// check that a vanishes where b does.
template <typename A, typename B>
double common_ratio(const A &a, const B &b) {
    double ratio = std::nan("");
    for (Eigen::Index i = 0; i < b.size(); i++) {
        if (b(i) == 0) {
            EXPECT_NEAR(a(i), 0, 1e-14);
            continue;
        }
        double r = a(i) / b(i);
        if (std::isnan(ratio)) {
            ratio = r;
        }
        EXPECT_NEAR(r, ratio, 1e-10 * std::abs(ratio));
    }
    return ratio;
}

TEST(Povm, Tetrahedron) {
    auto p = tetrahedron_povm();
    EXPECT_NO_THROW(validate_povm(p));
    CMatrix sum = CMatrix::Zero(2, 2);
    for (const auto &m : p) {
        sum += m.op();
        EXPECT_TRUE(is_psd(m.op()));
        EXPECT_NEAR(m.mu0, 0.25, 0);
    }
    EXPECT_LT((sum - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    for (int i = 0; i < 4; i++) {
        for (int j = i + 1; j < 4; j++) {
            double cosang = p[i].mu.dot(p[j].mu) / (p[i].mu.norm() * p[j].mu.norm());
            EXPECT_NEAR(std::acos(cosang), std::acos(-1.0 / 3), 1e-12);
        }
    }
    EXPECT_NEAR(p[0].mu(0), 1 / (4 * kSqrt3), 1e-15);
    EXPECT_NEAR(p[0].mu(1), -1 / (4 * kSqrt3), 1e-15);
    EXPECT_NEAR(p[3].mu(2), 1 / (4 * kSqrt3), 1e-15);
}

TEST(Povm, Validation) {
    auto p = tetrahedron_povm();
    p[0].mu0 = 0.1;
    EXPECT_THROW(validate_povm(p), std::invalid_argument);
    p = tetrahedron_povm();
    p[0].mu(0) += 1e-6;
    p[0].mu0 += 1e-3;
    p[1].mu0 -= 1e-3;
    EXPECT_THROW(validate_povm(p), std::invalid_argument);
    Preparations3 far = {BlochVector(2, 0, 0), BlochVector::UnitY(), BlochVector::UnitZ()};
    EXPECT_THROW(prob_matrices(far, tetrahedron_povm(), BlochVector::UnitZ(), 0.1), std::invalid_argument);
}

TEST(ProbMatrices, TetrahedronReference) {
    Tetrahedron t;
    Eigen::Matrix<double, 4, 3> wsign;
    wsign << 1, -1, -1, -1, 1, -1, -1, -1, 1, 1, 1, 1;
    Eigen::Matrix<double, 4, 3> vsign;
    vsign << -1, -1, 0, 1, 1, 0, -1, 1, 0, 1, -1, 0;
    Eigen::Matrix<double, 4, 3> w = Eigen::Matrix<double, 4, 3>::Constant(0.25) + wsign / (4 * kSqrt3);
    Eigen::Matrix<double, 4, 3> v = vsign * t.lq / (2 * kSqrt3);
    EXPECT_LT((t.pm.w - w).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((t.pm.v - v).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ProbMatrices, ColumnSumsAndRank) {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 20; k++) {
        auto pm = prob_matrices(random_preps(rng, 0.9), random_povm(rng), random_direction(rng), 0.2);
        for (int j = 0; j < 3; j++) {
            EXPECT_NEAR(pm.w.col(j).sum(), 1, 1e-12);
            EXPECT_NEAR(pm.v.col(j).sum(), 0, 1e-12);
        }
        Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(pm.v);
        EXPECT_LT(svd.singularValues()(2), 1e-12 * svd.singularValues()(0));
        EXPECT_GT(svd.singularValues()(1), 1e-6 * svd.singularValues()(0));
    }
}

TEST(ProbMatrices, ZeroCouplingAndPermutation) {
    std::mt19937_64 rng(32);
    auto povm = random_povm(rng);
    auto preps = random_preps(rng, 1);
    EXPECT_EQ(prob_matrices(preps, povm, BlochVector::Zero(), 0.3).v.cwiseAbs().maxCoeff(), 0.0);
    BlochVector q = random_direction(rng);
    auto pm = prob_matrices(preps, povm, q, 0.3);
    Preparations3 swapped = {preps[2], preps[0], preps[1]};
    auto ps = prob_matrices(swapped, povm, q, 0.3);
    int from[] = {2, 0, 1};
    for (int j = 0; j < 3; j++) {
        EXPECT_LT((ps.w.col(j) - pm.w.col(from[j])).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LT((ps.v.col(j) - pm.v.col(from[j])).cwiseAbs().maxCoeff(), 1e-15);
    }
}

// Reference intermediate vectors, each up to the recorded constant of this
// construction (the reference chain fixes directions; scalars are free).
TEST(Calibrate, TetrahedronIntermediates) {
    for (double lq : {0.3, 0.05}) {
        Tetrahedron t;
        t.lq = lq;
        t.pm = prob_matrices(t.preps, t.povm, BlochVector(0, 0, 1), lq);
        t.r = calibrate(t.pm, AuxVectors{});
        double l2 = lq * lq;
        EXPECT_NEAR(common_ratio(t.r.m_par, Eigen::Vector4d(1, 1, 0, 0) * l2 / 6), 1, 1e-10);
        EXPECT_NEAR(common_ratio(t.r.p_par, Eigen::Vector3d(0, 0, -1) * l2 / 6), 1, 1e-10);
        EXPECT_NEAR(t.r.p_par.sum() / (-l2 / 24), 4, 1e-10);
        EXPECT_NEAR(common_ratio(t.r.m_perp, Eigen::Vector4d(1, 1, 1, 0) / 12), 1, 1e-10);
        BlochVector mu_perp = BlochVector::Zero();
        double mu_perp0 = 0;
        for (int k = 0; k < 4; k++) {
            mu_perp += t.r.m_perp(k) * t.povm[k].mu;
            mu_perp0 += t.r.m_perp(k) * t.povm[k].mu0;
        }
        EXPECT_NEAR(common_ratio(mu_perp, -BlochVector(1, 1, 1) / (36 * kSqrt3)), 0.75, 1e-10);
        EXPECT_NEAR(mu_perp0, 1.0 / 16, 1e-15);
        Eigen::Vector3d pbar_ref = Eigen::Vector3d(1, 1, -2) * lq / (8 * 3 * kSqrt3);
        EXPECT_NEAR(common_ratio(t.r.pbar, pbar_ref), 1, 1e-10);
        Eigen::Vector3d pperp_ref = Eigen::Vector3d(1, -1, 0) * lq * lq * lq / (4 * 3 * kSqrt3);
        EXPECT_NEAR(common_ratio(t.r.p_perp, pperp_ref), 1 / lq, 1e-10);
        Eigen::Vector4d mbar_ref = Eigen::Vector4d(1, -1, 0, 0) * std::pow(lq, 5) / (64 * 81);
        EXPECT_NEAR(common_ratio(t.r.mbar, mbar_ref), 1 / lq, 1e-10);
        auto c = contrast_operators(t.r, t.povm, t.preps);
        EXPECT_NEAR(common_ratio(c.rho, pbar_ref), 1, 1e-10);
        BlochVector mubar_ref = BlochVector(1, -1, 0) * std::pow(lq, 5) / (128 * 81 * kSqrt3);
        EXPECT_NEAR(common_ratio(c.mu, mubar_ref), 1 / lq, 1e-10);
        EXPECT_NEAR(c.mu0, 0, 1e-15);
        EXPECT_NEAR(c.rho0, 0, 1e-15);
    }
}

TEST(Calibrate, TetrahedronBounds) {
    Tetrahedron t;
    double rho_ref = std::sqrt(6.0) * t.lq / (8 * 3 * kSqrt3);
    double middle = 8 * 3 * kSqrt3 * rho_ref / (std::sqrt(6.0) * t.lq);
    EXPECT_LE(1 / kSqrt3, middle);
    EXPECT_LE(middle, 4);
    double scale = 8 * 3 * kSqrt3 / t.lq;
    EXPECT_NEAR(t.r.bounds.rho_bar.lower * scale, 1 / kSqrt3, 1e-12);
    EXPECT_NEAR(t.r.bounds.rho_bar.upper * scale, 4, 1e-12);
    auto c = contrast_operators(t.r, t.povm, t.preps);
    EXPECT_NEAR(c.rho.norm(), rho_ref, 1e-15);
    double mscale = 64 * 81 / std::pow(t.lq, 4);
    EXPECT_NEAR(t.r.bounds.mu_bar.lower * mscale, 1 / (2 * kSqrt3), 1e-10);
    EXPECT_NEAR(t.r.bounds.mu_bar.upper * mscale, 2, 1e-10);
    EXPECT_GE(c.mu.norm(), t.r.bounds.mu_bar.lower);
    EXPECT_LE(c.mu.norm(), t.r.bounds.mu_bar.upper);
}

TEST(Calibrate, TetrahedronIsInformative) {
    Tetrahedron t;
    auto c = contrast_operators(t.r, t.povm, t.preps);
    EXPECT_LT(anticommutation_residual(c), 1e-12);
    EXPECT_EQ(t.r.retries, 0);
}

TEST(Calibrate, RandomInstancesAreInformative) {
    std::mt19937_64 rng(33);
    for (int k = 0; k < 50; k++) {
        auto povm = random_povm(rng);
        auto preps = random_preps(rng, 0.3 + 0.7 * std::uniform_real_distribution<double>(0, 1)(rng));
        BlochVector q = random_direction(rng) * 2.0;
        auto pm = prob_matrices(preps, povm, q, 0.1);
        auto r = calibrate(pm, 100 + k);
        auto c = contrast_operators(r, povm, preps);
        EXPECT_LT(anticommutation_residual(c), 1e-8) << k;
        EXPECT_NEAR(c.mu0 * c.rho0 + c.mu.dot(c.rho), 0, 1e-10 * c.mu.norm() * c.rho.norm());
        EXPECT_NEAR(c.rho0, 0, 1e-10 * r.pbar.cwiseAbs().sum());
        CMatrix m = c.mbar / spectral_norm(c.mbar);
        CMatrix p = c.pbar / spectral_norm(c.pbar);
        EXPECT_EQ(classify_measurement(m, p, 1e-8), MeasurementClass::Informative);

        BlochVector mu_perp = BlochVector::Zero();
        for (int j = 0; j < 4; j++) {
            mu_perp += r.m_perp(j) * povm[j].mu;
        }
        double scale = c.rho.norm() * mu_perp.norm();
        EXPECT_NEAR(c.rho.dot(mu_perp), 0, 1e-10 * scale);
        EXPECT_NEAR(c.rho.dot(q.cross(mu_perp)), 0, 1e-10 * scale * q.norm());

        EXPECT_LE(r.bounds.rho_bar.lower, c.rho.norm() * (1 + 1e-12));
        EXPECT_GE(r.bounds.rho_bar.upper, c.rho.norm() * (1 - 1e-12));
        EXPECT_LE(r.bounds.mu_bar.lower, c.mu.norm() * (1 + 1e-12));
        EXPECT_GE(r.bounds.mu_bar.upper, c.mu.norm() * (1 - 1e-12));

        CalibrationResult scaled = r;
        scaled.pbar *= -3.7;
        auto cs = contrast_operators(scaled, povm, preps);
        EXPECT_LT((cs.rho + 3.7 * c.rho).norm(), 1e-12 * c.rho.norm());
        EXPECT_LT(anticommutation_residual(cs), 1e-8);
    }
}

TEST(Calibrate, ProjectivePreparationsNarrowBounds) {
    std::mt19937_64 rng(34);
    int narrower = 0;
    for (int k = 0; k < 20; k++) {
        auto povm = random_povm(rng);
        auto preps = random_preps(rng, 1.0);
        BlochVector q = random_direction(rng);
        Preparations3 shrunk = preps;
        for (auto &v : shrunk) {
            v *= 0.4;
        }
        auto sharp = calibrate(prob_matrices(preps, povm, q, 0.1), 1);
        auto soft = calibrate(prob_matrices(shrunk, povm, q, 0.1), 1);
        double r_sharp = sharp.bounds.rho_bar.upper / sharp.bounds.rho_bar.lower;
        double r_soft = soft.bounds.rho_bar.upper / soft.bounds.rho_bar.lower;
        narrower += r_sharp < r_soft;
        EXPECT_LE(sharp.bounds.rho_bar.lower, sharp.bounds.rho_bar.upper);
    }
    EXPECT_EQ(narrower, 20);
}

TEST(Calibrate, RetriesOnUnluckyAuxVectors) {
    Tetrahedron t;
    Preparations3 rotated = {t.preps[2], t.preps[0], t.preps[1]};
    auto pm = prob_matrices(rotated, t.povm, BlochVector(0, 0, 1), t.lq);
    EXPECT_THROW(calibrate(pm, AuxVectors{}), CalibrationRetry);
    auto r = calibrate(pm, 7);
    EXPECT_GE(r.retries, 1);
    EXPECT_LT(anticommutation_residual(contrast_operators(r, t.povm, rotated)), 1e-10);
    auto again = calibrate(pm, 7);
    EXPECT_EQ(again.retries, r.retries);
    EXPECT_EQ(again.pbar, r.pbar);
    EXPECT_THROW(calibrate(pm, 7, 0), CalibrationRetry);
}

TEST(Calibrate, DegenerateInputs) {
    Tetrahedron t;
    auto zero = prob_matrices(t.preps, t.povm, BlochVector::Zero(), 0.3);
    EXPECT_THROW(calibrate(zero, AuxVectors{}), DegenerateInput);
    // Everything along q: the mixed products vanish.
    Povm4 along;
    along[0] = {0.25, BlochVector(0, 0, 0.25)};
    along[1] = {0.25, BlochVector(0, 0, -0.25)};
    along[2] = {0.25, BlochVector(0, 0, 0.1)};
    along[3] = {0.25, BlochVector(0, 0, -0.1)};
    auto flat = prob_matrices(t.preps, along, BlochVector(0, 0, 1), 0.3);
    EXPECT_THROW(calibrate(flat, AuxVectors{}), DegenerateInput);
}

}  // namespace
}  // namespace weakreal
