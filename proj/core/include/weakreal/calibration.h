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

#ifndef WEAKREAL_CALIBRATION_H
#define WEAKREAL_CALIBRATION_H

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "weakreal/qcore.h"

namespace weakreal {

using BlochVector = Eigen::Vector3d;

/// M = mu0 + mu . sigma.
struct POVMElement {
    double mu0 = 0;
    BlochVector mu = BlochVector::Zero();

    CMatrix op() const;
};

using Povm4 = std::array<POVMElement, 4>;
using Preparations3 = std::array<BlochVector, 3>;

/// Throws unless mu0_k >= |mu_k|, sum mu0 = 1 and sum mu = 0 within 1e-12.
void validate_povm(const Povm4 &povm);

/// (1 + rho . sigma)/2.
CMatrix bloch_state(const BlochVector &rho);

/// w_kj = mu0_k + mu_k . rho_j and v_kj = 2 lambda [mu_k, q, rho_j].
struct ProbMatrices {
    Eigen::Matrix<double, 4, 3> w;
    Eigen::Matrix<double, 4, 3> v;
};

ProbMatrices prob_matrices(const Preparations3 &preps, const Povm4 &povm, const BlochVector &q, double lambda);

/// Auxiliary vectors for the kernel constructions.
struct AuxVectors {
    Eigen::Vector3d a = Eigen::Vector3d::UnitX();
    Eigen::Vector3d b = Eigen::Vector3d::UnitY();
    Eigen::Vector3d c = Eigen::Vector3d::UnitX();
    Eigen::Vector3d d = Eigen::Vector3d::UnitZ();
};

struct Interval {
    double lower = 0;
    double upper = 0;
};

struct MagnitudeBounds {
    Interval rho_bar;
    Interval mu_bar;
};

/// Output of the construction. Outcome-indexed vectors have four entries with
/// the fourth (dependent) outcome set to zero where the construction skips it.
struct CalibrationResult {
    Eigen::Vector4d m_par;
    Eigen::Vector3d p_par;
    Eigen::Vector4d m_perp;
    Eigen::Vector3d pbar;
    Eigen::Vector3d p_perp;
    Eigen::Vector3d m_prime;
    double mu0prime = 0;
    Eigen::Vector4d mbar;
    AuxVectors aux;
    int retries = 0;
    MagnitudeBounds bounds;
};

/// Uses the first three rows of w and v. Throws DegenerateInput unless v has
/// numerical rank 2, and CalibrationRetry when an intermediate vector vanishes
/// for the given auxiliary vectors.
CalibrationResult calibrate(const ProbMatrices &pm, const AuxVectors &aux);

/// calibrate() with coordinate-axis aux vectors, redrawn from a seeded stream
/// on CalibrationRetry up to max_retries times.
CalibrationResult calibrate(const ProbMatrices &pm, std::uint64_t seed = 0, int max_retries = 32);

/// max_k |w_kj pbar_j| <= |rho_bar| <= sum_j |pbar_j| and
/// max_j |mbar_k w_kj| <= |mu_bar| <= sum_k |mbar_k|.
MagnitudeBounds magnitude_bounds(const CalibrationResult &result, const Eigen::Matrix<double, 4, 3> &w);

/// mu0_k = 1/4 and mu_k = (+-1, +-1, +-1)/(4 sqrt 3) at the vertices of a regular tetrahedron.
Povm4 tetrahedron_povm();

/// Contrast operators Mbar = sum_k mbar_k M_k and Pbar = sum_j pbar_j P_j for a
/// known POVM and preparations.
struct ContrastOperators {
    CMatrix mbar;
    CMatrix pbar;
    double mu0 = 0;
    BlochVector mu = BlochVector::Zero();
    double rho0 = 0;
    BlochVector rho = BlochVector::Zero();
};

ContrastOperators contrast_operators(const CalibrationResult &r, const Povm4 &povm, const Preparations3 &preps);

}  // namespace weakreal

#endif
