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

#include "weakreal/instrument.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace weakreal {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_square(const CMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(what) + " must be a nonempty square matrix");
    }
}

void require_hermitian(const CMatrix &m, const char *what) {
    require_square(m, what);
    if (!is_hermitian(m, tol::kUnitary)) {
        throw std::invalid_argument(std::string(what) + " must be Hermitian");
    }
}

struct WeightedVector {
    double weight;
    CVector v;
};

// Spectral decomposition of a PSD matrix, dropping numerically empty components.
std::vector<WeightedVector> psd_components(const CMatrix &m) {
    CMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    std::vector<WeightedVector> out;
    for (Eigen::Index i = 0; i < h.rows(); i++) {
        double w = es.eigenvalues()(i);
        if (w < tol::kPsdEigen) {
            throw std::invalid_argument("operator is not positive semidefinite");
        }
        if (w > 1e-15) {
            out.push_back({w, es.eigenvectors().col(i)});
        }
    }
    return out;
}

}  // namespace

SuperOp SuperOp::identity(std::size_t dim) {
    auto d2 = static_cast<Eigen::Index>(dim * dim);
    return {dim, CMatrix::Identity(d2, d2)};
}

SuperOp SuperOp::zero(std::size_t dim) {
    auto d2 = static_cast<Eigen::Index>(dim * dim);
    return {dim, CMatrix::Zero(d2, d2)};
}

SuperOp SuperOp::sandwich(const CMatrix &left, const CMatrix &right) {
    require_square(left, "left factor");
    require_square(right, "right factor");
    if (left.rows() != right.rows()) {
        throw std::invalid_argument("sandwich factors differ in size");
    }
    return {static_cast<std::size_t>(left.rows()), kron(right.transpose(), left)};
}

SuperOp SuperOp::from_kraus(const std::vector<CMatrix> &kraus) {
    if (kraus.empty()) {
        throw std::invalid_argument("empty Kraus list");
    }
    SuperOp out = zero(static_cast<std::size_t>(kraus.front().rows()));
    for (const auto &k : kraus) {
        out.mat += kron(k.conjugate(), k);
    }
    return out;
}

CMatrix SuperOp::apply(const CMatrix &x) const {
    if (static_cast<std::size_t>(x.rows()) != dim || x.rows() != x.cols()) {
        throw std::invalid_argument("superoperator applied to matrix of wrong size");
    }
    return unvec(mat * vec(x), dim);
}

SuperOp SuperOp::compose(const SuperOp &other) const {
    if (other.dim != dim) {
        throw std::invalid_argument("superoperator dimension mismatch");
    }
    return {dim, mat * other.mat};
}

SuperOp SuperOp::operator+(const SuperOp &o) const {
    if (o.dim != dim) {
        throw std::invalid_argument("superoperator dimension mismatch");
    }
    return {dim, mat + o.mat};
}

SuperOp SuperOp::operator-(const SuperOp &o) const {
    if (o.dim != dim) {
        throw std::invalid_argument("superoperator dimension mismatch");
    }
    return {dim, mat - o.mat};
}

SuperOp SuperOp::operator*(cplx s) const {
    return {dim, s * mat};
}

SuperOp operator*(cplx s, const SuperOp &op) {
    return op * s;
}

double distance(const SuperOp &a, const SuperOp &b) {
    if (a.dim != b.dim) {
        throw std::invalid_argument("superoperator dimension mismatch");
    }
    return (a.mat - b.mat).cwiseAbs().maxCoeff();
}

CVector vec(const CMatrix &m) {
    CMatrix copy = m;
    return Eigen::Map<const CVector>(copy.data(), copy.size());
}

CMatrix unvec(const CVector &v, std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    if (v.size() != d * d) {
        throw std::invalid_argument("vector length is not dim^2");
    }
    return Eigen::Map<const CMatrix>(v.data(), d, d);
}

SuperOp anticommutator_map(const CMatrix &a) {
    require_hermitian(a, "anticommutator generator");
    CMatrix id = CMatrix::Identity(a.rows(), a.cols());
    return {static_cast<std::size_t>(a.rows()), (kron(id, a) + kron(a.transpose(), id)) / 2.0};
}

SuperOp commutator_map(const CMatrix &a) {
    require_hermitian(a, "commutator generator");
    CMatrix id = CMatrix::Identity(a.rows(), a.cols());
    return {static_cast<std::size_t>(a.rows()), kI * (kron(a.transpose(), id) - kron(id, a))};
}

Instrument::Instrument(std::vector<int> outcomes, std::vector<std::vector<CMatrix>> kraus)
    : dim_(0), outcomes_(std::move(outcomes)), kraus_(std::move(kraus)) {
    if (outcomes_.empty() || outcomes_.size() != kraus_.size()) {
        throw std::invalid_argument("instrument needs one Kraus list per outcome");
    }
    CMatrix total;
    for (const auto &list : kraus_) {
        for (const auto &k : list) {
            require_square(k, "Kraus operator");
            if (dim_ == 0) {
                dim_ = static_cast<std::size_t>(k.rows());
                total = CMatrix::Zero(k.rows(), k.cols());
            }
            if (static_cast<std::size_t>(k.rows()) != dim_) {
                throw std::invalid_argument("Kraus operators differ in size");
            }
            total += k.adjoint() * k;
        }
    }
    if (dim_ == 0) {
        throw std::invalid_argument("instrument has no Kraus operators");
    }
    CMatrix id = CMatrix::Identity(total.rows(), total.cols());
    if ((total - id).cwiseAbs().maxCoeff() > tol::kCompleteness) {
        throw std::invalid_argument("Kraus operators are not complete");
    }
}

std::size_t Instrument::index_of(int outcome) const {
    for (std::size_t k = 0; k < outcomes_.size(); k++) {
        if (outcomes_[k] == outcome) {
            return k;
        }
    }
    throw std::invalid_argument("unknown outcome " + std::to_string(outcome));
}

SuperOp Instrument::outcome_map(std::size_t k) const {
    if (kraus_.at(k).empty()) {
        return SuperOp::zero(dim_);
    }
    return SuperOp::from_kraus(kraus_[k]);
}

SuperOp Instrument::channel() const {
    SuperOp out = SuperOp::zero(dim_);
    for (std::size_t k = 0; k < outcomes_.size(); k++) {
        out = out + outcome_map(k);
    }
    return out;
}

SuperOp Instrument::weighted_map() const {
    SuperOp out = SuperOp::zero(dim_);
    for (std::size_t k = 0; k < outcomes_.size(); k++) {
        out = out + outcome_map(k) * cplx(outcomes_[k]);
    }
    return out;
}

Instrument dilate(const MeterDilation &d) {
    require_square(d.meter_state, "meter state");
    require_square(d.coupling, "coupling");
    std::size_t dm = static_cast<std::size_t>(d.meter_state.rows());
    if (d.coupling.rows() % d.meter_state.rows() != 0) {
        throw std::invalid_argument("coupling size is not a multiple of the meter size");
    }
    if (!is_unitary(d.coupling) || !is_unitary(d.post_rotation)) {
        throw std::invalid_argument("dilation gates must be unitary");
    }
    std::size_t ds = static_cast<std::size_t>(d.coupling.rows()) / dm;
    CMatrix id_m = CMatrix::Identity(d.effect_zero.rows(), d.effect_zero.cols());
    std::array<CMatrix, 2> effects = {
        d.post_rotation.adjoint() * d.effect_zero * d.post_rotation,
        d.post_rotation.adjoint() * (id_m - d.effect_zero) * d.post_rotation,
    };
    auto preps = psd_components(d.meter_state);

    std::vector<std::vector<CMatrix>> kraus(2);
    for (int o = 0; o < 2; o++) {
        for (const auto &e : psd_components(effects[o])) {
            for (const auto &p : preps) {
                CMatrix k = CMatrix::Zero(static_cast<Eigen::Index>(ds), static_cast<Eigen::Index>(ds));
                for (std::size_t s = 0; s < ds; s++) {
                    for (std::size_t t = 0; t < ds; t++) {
                        cplx acc = 0;
                        for (std::size_t m = 0; m < dm; m++) {
                            for (std::size_t n = 0; n < dm; n++) {
                                acc += std::conj(e.v(static_cast<Eigen::Index>(m))) *
                                       d.coupling(static_cast<Eigen::Index>(s * dm + m),
                                                  static_cast<Eigen::Index>(t * dm + n)) *
                                       p.v(static_cast<Eigen::Index>(n));
                            }
                        }
                        k(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = acc;
                    }
                }
                kraus[o].push_back(std::sqrt(e.weight * p.weight) * k);
            }
        }
    }
    return Instrument({+1, -1}, std::move(kraus));
}

MeterDilation weak_z_dilation(double lambda, int sign) {
    if (!(std::abs(lambda) <= 1.0)) {
        throw std::invalid_argument("|lambda| must not exceed 1");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sign must be +1 or -1");
    }
    CMatrix y = pauli(Pauli::Y);
    CMatrix prep = rotation(y, sign * kPi / 2);
    CMatrix zero = CMatrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    return {
        prep * zero * prep.adjoint(),
        zz_coupling(std::asin(lambda)),
        rotation(pauli(Pauli::X), kPi / 2),
        zero,
    };
}

Instrument weak_z_instrument(double lambda, int sign) {
    return dilate(weak_z_dilation(lambda, sign));
}

SuperOp weak_z_disturbance(double lambda) {
    if (!(std::abs(lambda) <= 1.0)) {
        throw std::invalid_argument("|lambda| must not exceed 1");
    }
    CMatrix z = pauli(Pauli::Z);
    SuperOp zt = commutator_map(z);
    double g = (1.0 - std::sqrt(1.0 - lambda * lambda)) / 4.0;
    return SuperOp::identity(2) + zt.compose(zt) * cplx(g);
}

SuperOp weak_z_closed_form(double lambda, int sign, int outcome) {
    if ((sign != 1 && sign != -1) || (outcome != 1 && outcome != -1)) {
        throw std::invalid_argument("sign and outcome must be +1 or -1");
    }
    SuperOp zh = anticommutator_map(pauli(Pauli::Z));
    return (zh * cplx(outcome * sign * lambda) + weak_z_disturbance(lambda)) * cplx(0.5);
}

bool ContrastScheme::is_contrast(double tol) const {
    double s = 0;
    for (double p : pbar) {
        s += p;
    }
    return std::abs(s) <= tol;
}

SuperOp ContrastScheme::averaged_map() const {
    if (preparations.empty() || preparations.size() != pbar.size()) {
        throw std::invalid_argument("one weight per preparation required");
    }
    SuperOp out = SuperOp::zero(preparations.front().dim());
    for (std::size_t j = 0; j < preparations.size(); j++) {
        const auto &inst = preparations[j];
        if (inst.outcomes().size() != mbar.size()) {
            throw std::invalid_argument("one weight per outcome required");
        }
        for (std::size_t k = 0; k < mbar.size(); k++) {
            out = out + inst.outcome_map(k) * cplx(pbar[j] * mbar[k]);
        }
    }
    return out;
}

ContrastScheme weak_z_contrast(double lambda) {
    return {{weak_z_instrument(lambda, +1), weak_z_instrument(lambda, -1)}, {0.5, -0.5}, {1.0, -1.0}};
}

SuperOp contrast_kbar(double lambda) {
    return weak_z_contrast(lambda).averaged_map();
}

WeakDecomposition decompose_weak(const CMatrix &mbar, const CMatrix &pbar, const CMatrix &h) {
    require_hermitian(mbar, "M");
    require_hermitian(pbar, "P");
    require_hermitian(h, "H");
    if (mbar.rows() != pbar.rows()) {
        throw std::invalid_argument("M and P differ in size");
    }
    Eigen::Index dm = mbar.rows();
    if (h.rows() % dm != 0) {
        throw std::invalid_argument("H size is not a multiple of the meter size");
    }
    Eigen::Index ds = h.rows() / dm;
    CMatrix id_s = CMatrix::Identity(ds, ds);
    CMatrix comm = kron(id_s, commutator(mbar, pbar)) * h;
    CMatrix anti = kron(id_s, anticommutator(mbar, pbar)) * h;
    auto meter_trace = [&](const CMatrix &m) {
        CMatrix out = CMatrix::Zero(ds, ds);
        for (Eigen::Index i = 0; i < ds; i++) {
            for (Eigen::Index j = 0; j < ds; j++) {
                out(i, j) = m.block(i * dm, j * dm, dm, dm).trace();
            }
        }
        return out;
    };
    return {kI * meter_trace(comm), meter_trace(anti) / 2.0};
}

std::string_view to_string(MeasurementClass c) {
    switch (c) {
        case MeasurementClass::Informative:
            return "informative";
        case MeasurementClass::Responsive:
            return "responsive";
        case MeasurementClass::Mixed:
            return "mixed";
        case MeasurementClass::Null:
            return "null";
    }
    return "unknown";
}

MeasurementClass classify_measurement(const CMatrix &mbar, const CMatrix &pbar, double tol) {
    require_hermitian(mbar, "M");
    require_hermitian(pbar, "P");
    double anti = spectral_norm(anticommutator(mbar, pbar));
    double comm = spectral_norm(kI * commutator(mbar, pbar));
    bool anti_small = anti < tol;
    bool comm_small = comm < tol;
    if (anti_small && !comm_small) {
        return MeasurementClass::Informative;
    }
    if (comm_small && !anti_small) {
        return MeasurementClass::Responsive;
    }
    if (anti_small && comm_small) {
        return MeasurementClass::Null;
    }
    return MeasurementClass::Mixed;
}

CMatrix hermitian_propagator(const CMatrix &h, double t) {
    require_hermitian(h, "H");
    CMatrix sym = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    CVector phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); i++) {
        phases(i) = std::exp(-kI * t * es.eigenvalues()(i));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Theorem1Slopes theorem1_limits(const CMatrix &mbar_a,
                               const CMatrix &pbar_a,
                               const CMatrix &mbar_b,
                               const CMatrix &pbar_b,
                               const CMatrix &h,
                               std::span<const double> lambda_list) {
    require_hermitian(mbar_a, "M_A");
    require_hermitian(pbar_a, "P_A");
    require_hermitian(mbar_b, "M_B");
    require_hermitian(pbar_b, "P_B");
    require_hermitian(h, "H");
    if (mbar_a.rows() != pbar_a.rows() || mbar_b.rows() != pbar_b.rows() ||
        h.rows() != mbar_a.rows() * mbar_b.rows()) {
        throw std::invalid_argument("meter operator sizes do not match H");
    }
    if (lambda_list.size() < 2) {
        throw std::invalid_argument("two coupling strengths are required");
    }
    for (double l : lambda_list) {
        if (!(l > 0.0) || l > 0.3) {
            throw std::invalid_argument("coupling strengths must lie in (0, 0.3]");
        }
    }
    double l1 = lambda_list[0];
    double l2 = lambda_list[1];
    if (l1 == l2) {
        throw std::invalid_argument("coupling strengths must differ");
    }

    CMatrix id_a = CMatrix::Identity(mbar_a.rows(), mbar_a.cols());
    CMatrix id_b = CMatrix::Identity(mbar_b.rows(), mbar_b.cols());
    CMatrix obs_a = kron(mbar_a, id_b);
    CMatrix obs_b = kron(id_a, mbar_b);
    CMatrix obs_ab = kron(mbar_a, mbar_b);
    CMatrix p = kron(pbar_a, pbar_b);

    // Odd part over 2 lambda, then Richardson in lambda^2.
    auto odd_slopes = [&](double l) {
        CMatrix up = hermitian_propagator(h, l);
        CMatrix um = hermitian_propagator(h, -l);
        CMatrix dp = up * p * up.adjoint() - um * p * um.adjoint();
        return std::array<double, 3>{
            (obs_a * dp).trace().real() / (2 * l),
            (obs_b * dp).trace().real() / (2 * l),
            (obs_ab * dp).trace().real() / (2 * l),
        };
    };
    auto s1 = odd_slopes(l1);
    auto s2 = odd_slopes(l2);
    double w = l1 * l1 / (l1 * l1 - l2 * l2);
    auto extrapolate = [&](int i) {
        return w * s2[i] + (1 - w) * s1[i];
    };
    return {extrapolate(0), extrapolate(1), extrapolate(2)};
}

}  // namespace weakreal
