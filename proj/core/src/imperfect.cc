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

#include "weakreal/imperfect.h"

#include <cmath>
#include <stdexcept>

namespace weakreal {

void NoiseParams::validate() const {
    if (!(epsilon >= 0 && epsilon <= 0.5)) {
        throw std::invalid_argument("epsilon must lie in [0, 1/2]");
    }
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw std::invalid_argument("over-rotation angles must be finite");
    }
    // Eigenvalues of M_+ are eta and eta + 1 - omega.
    double lo = std::min(eta, eta + 1 - omega);
    double hi = std::max(eta, eta + 1 - omega);
    if (!(lo >= 0 && hi <= 1)) {
        throw std::invalid_argument("readout effect must satisfy 0 <= M_+ <= I");
    }
}

bool NoiseParams::is_ideal() const {
    return epsilon == 0 && alpha == 0 && beta == 0 && eta == 0 && omega == 0;
}

double NoiseParams::read_zero_given(int bit) const {
    return bit == 0 ? eta + 1 - omega : eta;
}

FGParams FGParams::from_noise(const NoiseParams &p, double theta) {
    return {(1 - 2 * p.epsilon) * std::sin(p.alpha) * std::sin(theta), (1 - std::cos(theta)) / 4};
}

CMatrix noisy_meter_state(int sign, const NoiseParams &p) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sign must be +1 or -1");
    }
    p.validate();
    CMatrix raw = CMatrix::Zero(2, 2);
    raw(0, 0) = 1 - p.epsilon;
    raw(1, 1) = p.epsilon;
    CMatrix g = rotation(pauli(Pauli::Z), sign * kPi / 2) * rotation(pauli(Pauli::X), kPi / 2 + p.alpha);
    return g * raw * g.adjoint();
}

CMatrix noisy_post_rotation(const NoiseParams &p) {
    return rotation(pauli(Pauli::X), kPi / 2 + p.beta);
}

CMatrix readout_effect_zero(const NoiseParams &p) {
    p.validate();
    CMatrix m = p.eta * CMatrix::Identity(2, 2);
    m(0, 0) += 1 - p.omega;
    return m;
}

MeterDilation noisy_dilation(double theta, int sign, const NoiseParams &p) {
    if (!(std::abs(theta) <= kPi / 2)) {
        throw std::invalid_argument("|theta| must not exceed pi/2");
    }
    return {noisy_meter_state(sign, p), zz_coupling(theta), noisy_post_rotation(p), readout_effect_zero(p)};
}

Instrument noisy_instrument(double theta, int sign, const NoiseParams &p) {
    return dilate(noisy_dilation(theta, sign, p));
}

double rescale_factor(const NoiseParams &p, double theta) {
    return (1 - 2 * p.epsilon) * (1 - p.omega) * std::cos(p.alpha) * std::cos(p.beta) * std::sin(theta);
}

SuperOp noisy_disturbance(const FGParams &fg) {
    SuperOp zt = commutator_map(pauli(Pauli::Z));
    return SuperOp::identity(2) - zt * cplx(fg.f / 2) + zt.compose(zt) * cplx(fg.g);
}

double corrected_c(double psi, const FGParams &fg_a, const FGParams &fg_b) {
    double s = std::sin(psi);
    double c = std::cos(psi);
    return c * c + 2 * (fg_a.g + fg_b.g - 4 * fg_a.g * fg_b.g + fg_a.f * fg_b.f) * s * s;
}

double exact_corrected_c(double psi, const FGParams &fg_a, const FGParams &fg_b) {
    double s = std::sin(psi);
    double c = std::cos(psi);
    return c * c + 2 * (fg_a.g + fg_b.g - 4 * fg_a.g * fg_b.g + fg_a.f * fg_b.f / 4) * s * s;
}

}  // namespace weakreal
