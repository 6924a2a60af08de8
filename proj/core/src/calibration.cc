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

#include <cmath>
#include <random>

#include "weakreal/errors.h"
#include "weakreal/rng.h"

namespace weakreal {

namespace {

using Mat43 = Eigen::Matrix<double, 4, 3>;

// u x v, or CalibrationRetry if it is negligible relative to |u||v|.
Eigen::Vector3d checked_cross(const Eigen::Vector3d &u, const Eigen::Vector3d &v, const char *what) {
    Eigen::Vector3d r = u.cross(v);
    double scale = u.norm() * v.norm();
    if (!(scale > 0) || r.norm() < tol::kDegenerate * scale) {
        throw CalibrationRetry(std::string(what) + " vanishes for the chosen auxiliary vectors");
    }
    return r;
}

Eigen::Vector4d pad(const Eigen::Vector3d &v) {
    return {v(0), v(1), v(2), 0.0};
}

}  // namespace

CMatrix POVMElement::op() const {
    return mu0 * pauli(Pauli::I) + mu(0) * pauli(Pauli::X) + mu(1) * pauli(Pauli::Y) + mu(2) * pauli(Pauli::Z);
}

CMatrix bloch_state(const BlochVector &rho) {
    return POVMElement{1.0, rho}.op() / 2.0;
}

void validate_povm(const Povm4 &povm) {
    double s0 = 0;
    BlochVector s = BlochVector::Zero();
    for (const auto &m : povm) {
        if (m.mu0 < m.mu.norm() - 1e-12) {
            throw std::invalid_argument("POVM element is not positive (mu0 < |mu|)");
        }
        s0 += m.mu0;
        s += m.mu;
    }
    if (std::abs(s0 - 1) > 1e-12 || s.norm() > 1e-12) {
        throw std::invalid_argument("POVM elements do not sum to the identity");
    }
}

ProbMatrices prob_matrices(const Preparations3 &preps, const Povm4 &povm, const BlochVector &q, double lambda) {
    validate_povm(povm);
    for (const auto &r : preps) {
        if (r.norm() > 1 + 1e-12) {
            throw std::invalid_argument("preparation Bloch vector longer than 1");
        }
    }
    ProbMatrices pm;
    for (int k = 0; k < 4; k++) {
        for (int j = 0; j < 3; j++) {
            pm.w(k, j) = povm[k].mu0 + povm[k].mu.dot(preps[j]);
            pm.v(k, j) = 2 * lambda * povm[k].mu.dot(q.cross(preps[j]));
        }
    }
    return pm;
}

CalibrationResult calibrate(const ProbMatrices &pm, const AuxVectors &aux) {
    Eigen::Matrix3d w = pm.w.topRows<3>();
    Eigen::Matrix3d v = pm.v.topRows<3>();

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(v);
    auto sv = svd.singularValues();
    if (!(sv(0) > 0) || sv(1) < tol::kRank * sv(0) || sv(2) >= tol::kRank * sv(0)) {
        throw DegenerateInput("probability matrix v does not have rank 2");
    }

    CalibrationResult r;
    r.aux = aux;

    // Kernels of v^T and v.
    Eigen::Vector3d m_par = checked_cross(v * aux.a, v * aux.b, "m_par");
    Eigen::Vector3d p_par = checked_cross(v.transpose() * aux.c, v.transpose() * aux.d, "p_par");
    r.m_par = pad(m_par);
    r.p_par = p_par;

    Eigen::Vector3d d1 = w.col(0) - w.col(2);
    Eigen::Vector3d d2 = w.col(1) - w.col(2);
    Eigen::Vector3d m_perp = d1.cross(d2);
    if (m_perp.norm() < tol::kDegenerate * d1.norm() * d2.norm() || m_perp.norm() == 0) {
        throw DegenerateInput("preparations give collinear probability columns");
    }
    r.m_perp = pad(m_perp);

    const Eigen::Vector3d ones = Eigen::Vector3d::Ones();
    r.pbar = checked_cross(v.transpose() * m_perp, ones, "pbar");
    r.p_perp = checked_cross(w.transpose() * m_par, ones, "p_perp");
    r.m_prime = checked_cross(v * r.p_perp, w * r.pbar, "m_prime");

    double rho_par0 = p_par.sum();
    if (std::abs(rho_par0) < tol::kDegenerate * p_par.cwiseAbs().sum()) {
        throw CalibrationRetry("sum of p_par vanishes");
    }
    r.mu0prime = r.m_prime.dot(w * p_par) / rho_par0;
    r.mbar << r.m_prime(0) - r.mu0prime, r.m_prime(1) - r.mu0prime, r.m_prime(2) - r.mu0prime, -r.mu0prime;
    r.bounds = magnitude_bounds(r, pm.w);
    return r;
}

CalibrationResult calibrate(const ProbMatrices &pm, std::uint64_t seed, int max_retries) {
    AuxVectors aux;
    StreamRng rng(seed, {0xca1b});
    std::normal_distribution<double> gauss;
    for (int attempt = 0;; attempt++) {
        try {
            CalibrationResult r = calibrate(pm, aux);
            r.retries = attempt;
            return r;
        } catch (const CalibrationRetry &) {
            if (attempt >= max_retries) {
                throw;
            }
        }
        for (auto *vec : {&aux.a, &aux.b, &aux.c, &aux.d}) {
            for (int i = 0; i < 3; i++) {
                (*vec)(i) = gauss(rng);
            }
        }
    }
}

MagnitudeBounds magnitude_bounds(const CalibrationResult &result, const Mat43 &w) {
    MagnitudeBounds b;
    Eigen::Vector4d wp = w * result.pbar;
    b.rho_bar = {wp.cwiseAbs().maxCoeff(), result.pbar.cwiseAbs().sum()};
    Eigen::Vector3d mw = w.transpose() * result.mbar;
    b.mu_bar = {mw.cwiseAbs().maxCoeff(), result.mbar.cwiseAbs().sum()};
    return b;
}

Povm4 tetrahedron_povm() {
    double s = 1 / (4 * std::sqrt(3.0));
    return {{
        {0.25, BlochVector(1, -1, -1) * s},
        {0.25, BlochVector(-1, 1, -1) * s},
        {0.25, BlochVector(-1, -1, 1) * s},
        {0.25, BlochVector(1, 1, 1) * s},
    }};
}

ContrastOperators contrast_operators(const CalibrationResult &r, const Povm4 &povm, const Preparations3 &preps) {
    ContrastOperators c;
    for (int k = 0; k < 4; k++) {
        c.mu0 += r.mbar(k) * povm[k].mu0;
        c.mu += r.mbar(k) * povm[k].mu;
    }
    for (int j = 0; j < 3; j++) {
        c.rho0 += r.pbar(j);
        c.rho += r.pbar(j) * preps[j];
    }
    c.mbar = POVMElement{c.mu0, c.mu}.op();
    c.pbar = POVMElement{c.rho0, c.rho}.op() / 2.0;
    return c;
}

}  // namespace weakreal
