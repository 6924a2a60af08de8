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

#ifndef WEAKREAL_IMPERFECT_H
#define WEAKREAL_IMPERFECT_H

#include "weakreal/instrument.h"

namespace weakreal {

/// Meter imperfections.
///  epsilon     flip probability of the prepared |0>
///  alpha       over-rotation of the preparation X_{pi/2}
///  beta        over-rotation of the final X_{pi/2}
///  eta, omega  readout effect M_+ = eta + (1 - omega)|0><0|
struct NoiseParams {
    double epsilon = 0;
    double alpha = 0;
    double beta = 0;
    double eta = 0;
    double omega = 0;

    /// Throws std::invalid_argument unless 0 <= epsilon <= 1/2 and 0 <= M_+ <= I.
    void validate() const;
    bool is_ideal() const;

    /// P(read 0 | meter bit b).
    double read_zero_given(int bit) const;
};

struct FGParams {
    double f = 0;
    double g = 0;

    /// f = (1 - 2 epsilon) sin(alpha) sin(theta), g = (1 - cos(theta))/4.
    static FGParams from_noise(const NoiseParams &p, double theta);
};

/// Meter state Z_s X_{pi/2+alpha} ((1-eps)|0><0| + eps|1><1|) X^dag Z_s^dag.
CMatrix noisy_meter_state(int sign, const NoiseParams &p);
/// X_{pi/2+beta}.
CMatrix noisy_post_rotation(const NoiseParams &p);
/// eta + (1 - omega)|0><0|.
CMatrix readout_effect_zero(const NoiseParams &p);

MeterDilation noisy_dilation(double theta, int sign, const NoiseParams &p);
Instrument noisy_instrument(double theta, int sign, const NoiseParams &p);

/// (1 - 2 eps)(1 - omega) cos(alpha) cos(beta) sin(theta).
double rescale_factor(const NoiseParams &p, double theta);

/// Non-selective map 1 - (f/2) Z~ + g Z~^2, exact for the noisy meter.
SuperOp noisy_disturbance(const FGParams &fg);

/// cos^2 psi + 2 (gA + gB - 4 gA gB + fA fB) sin^2 psi, the perturbative
/// expression with the full fA fB cross term.
double corrected_c(double psi, const FGParams &fg_a, const FGParams &fg_b);

/// Same expression with fA fB replaced by (fA/2)(fB/2); matches the dilation.
double exact_corrected_c(double psi, const FGParams &fg_a, const FGParams &fg_b);

}  // namespace weakreal

#endif
