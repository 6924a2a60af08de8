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

#ifndef WEAKREAL_INSTRUMENT_H
#define WEAKREAL_INSTRUMENT_H

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "weakreal/qcore.h"

namespace weakreal {

/// Linear map on d x d matrices, stored as a d^2 x d^2 matrix acting on
/// column-stacked vectorizations: vec(A X B) = (B^T (x) A) vec(X).
struct SuperOp {
    std::size_t dim = 0;
    CMatrix mat;

    static SuperOp identity(std::size_t dim);
    static SuperOp zero(std::size_t dim);
    static SuperOp from_kraus(const std::vector<CMatrix> &kraus);
    /// X -> L X R.
    static SuperOp sandwich(const CMatrix &left, const CMatrix &right);

    CMatrix apply(const CMatrix &x) const;
    /// (this o other)(X) = this(other(X)).
    SuperOp compose(const SuperOp &other) const;

    SuperOp operator+(const SuperOp &o) const;
    SuperOp operator-(const SuperOp &o) const;
    SuperOp operator*(cplx s) const;
};

SuperOp operator*(cplx s, const SuperOp &op);

/// Max-abs entrywise distance between two superoperators of equal size.
double distance(const SuperOp &a, const SuperOp &b);

CVector vec(const CMatrix &m);
CMatrix unvec(const CVector &v, std::size_t dim);

/// X -> {A, X}/2.
SuperOp anticommutator_map(const CMatrix &a);
/// X -> i[X, A].
SuperOp commutator_map(const CMatrix &a);

/// Outcome-indexed collection of Kraus lists; the outcome sum is trace preserving.
class Instrument {
   public:
    Instrument(std::vector<int> outcomes, std::vector<std::vector<CMatrix>> kraus);

    std::size_t dim() const {
        return dim_;
    }
    const std::vector<int> &outcomes() const {
        return outcomes_;
    }
    const std::vector<CMatrix> &kraus(std::size_t k) const {
        return kraus_[k];
    }
    /// Index of the outcome label; throws if absent.
    std::size_t index_of(int outcome) const;

    SuperOp outcome_map(std::size_t k) const;
    SuperOp outcome_map_for(int outcome) const {
        return outcome_map(index_of(outcome));
    }
    /// The non-selective channel, sum over outcomes.
    SuperOp channel() const;
    /// Sum_k value_k * map_k with the outcome labels as values.
    SuperOp weighted_map() const;

   private:
    std::size_t dim_;
    std::vector<int> outcomes_;
    std::vector<std::vector<CMatrix>> kraus_;
};

/// One qubit meter coupled to a system. The coupling acts on system (x) meter.
/// Outcomes are +1 and -1 for meter bits 0 and 1.
struct MeterDilation {
    CMatrix meter_state;
    CMatrix coupling;
    CMatrix post_rotation;
    /// Effect for meter bit 0 after the post rotation; bit 1 gets I - effect.
    CMatrix effect_zero;
};

Instrument dilate(const MeterDilation &d);

/// Meter prepared in |sign x>, coupled by zz_coupling(theta), rotated by X_{pi/2}
/// and read out in Z. theta = asin(lambda).
MeterDilation weak_z_dilation(double lambda, int sign);

/// The two-outcome weak Z instrument realized by its meter dilation.
Instrument weak_z_instrument(double lambda, int sign);

/// (z s lambda Z^ + K)/2 with K = 1 + (1 - sqrt(1 - lambda^2)) Z~^2 / 4.
SuperOp weak_z_closed_form(double lambda, int sign, int outcome);
/// The non-selective disturbance K.
SuperOp weak_z_disturbance(double lambda);

/// Preparations P_j with weights pbar_j; meter outcome k weighted by mbar_k.
struct ContrastScheme {
    std::vector<Instrument> preparations;
    std::vector<double> pbar;
    std::vector<double> mbar;

    /// True when the preparation weights sum to zero.
    bool is_contrast(double tol = 1e-12) const;
    /// Sum_j pbar_j Sum_k mbar_k K_j(k).
    SuperOp averaged_map() const;
};

/// The weak Z contrast: preparations s = +1, -1 with pbar = +-1/2, outcome values +-1.
ContrastScheme weak_z_contrast(double lambda);

/// Averaged map of weak_z_contrast; equals lambda * anticommutator_map(Z).
SuperOp contrast_kbar(double lambda);

struct WeakDecomposition {
    CMatrix a;
    CMatrix a_prime;
};

/// A = i Tr'([M, P] H), A' = Tr'({M, P} H)/2 with H on system (x) meter.
WeakDecomposition decompose_weak(const CMatrix &mbar, const CMatrix &pbar, const CMatrix &h);

enum class MeasurementClass { Informative, Responsive, Mixed, Null };

std::string_view to_string(MeasurementClass c);

MeasurementClass classify_measurement(const CMatrix &mbar, const CMatrix &pbar, double tol);

struct Theorem1Slopes {
    double da = 0;
    double db = 0;
    double dab = 0;
};

/// Weak-coupling slopes of <a>, <b>, <ab> for two meters coupled by exp(-i lambda H),
/// H on meter A (x) meter B. Uses the first two entries of lambda_list.
Theorem1Slopes theorem1_limits(const CMatrix &mbar_a,
                               const CMatrix &pbar_a,
                               const CMatrix &mbar_b,
                               const CMatrix &pbar_b,
                               const CMatrix &h,
                               std::span<const double> lambda_list);

/// exp(-i t H) for Hermitian H.
CMatrix hermitian_propagator(const CMatrix &h, double t);

}  // namespace weakreal

#endif
