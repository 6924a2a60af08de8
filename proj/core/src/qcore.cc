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

#include "weakreal/qcore.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace weakreal {

namespace {

constexpr cplx kI{0.0, 1.0};

inline std::size_t bit_of(std::size_t index, std::size_t qubit, std::size_t n) {
    return (index >> (n - 1 - qubit)) & 1u;
}

void check_targets(std::span<const std::size_t> targets, std::size_t n) {
    for (std::size_t i = 0; i < targets.size(); i++) {
        if (targets[i] >= n) {
            throw std::invalid_argument("qubit index " + std::to_string(targets[i]) + " out of range");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("repeated qubit index " + std::to_string(targets[i]));
            }
        }
    }
}

}  // namespace

cplx trace(const CMatrix &m) {
    return m.trace();
}

bool is_hermitian(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    CMatrix id = CMatrix::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const CMatrix &m, double tol) {
    if (!is_hermitian(m, 1e-9)) {
        return false;
    }
    CMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= tol;
}

double spectral_norm(const CMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

std::size_t qubit_count(const CMatrix &m) {
    auto d = static_cast<std::size_t>(m.rows());
    if (m.rows() != m.cols() || d == 0 || (d & (d - 1)) != 0) {
        throw std::invalid_argument("matrix is not 2^n x 2^n");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < d) {
        n++;
    }
    return n;
}

CMatrix pauli(Pauli p) {
    CMatrix m(2, 2);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, -kI, kI, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

CMatrix pauli(char name) {
    switch (name) {
        case 'I':
            return pauli(Pauli::I);
        case 'X':
            return pauli(Pauli::X);
        case 'Y':
            return pauli(Pauli::Y);
        case 'Z':
            return pauli(Pauli::Z);
        default:
            throw std::invalid_argument(std::string("unknown Pauli name '") + name + "'");
    }
}

CMatrix rotation(const CMatrix &involution, double theta) {
    if (!is_hermitian(involution, tol::kUnitary)) {
        throw std::invalid_argument("rotation generator is not Hermitian");
    }
    CMatrix id = CMatrix::Identity(involution.rows(), involution.cols());
    if ((involution * involution - id).cwiseAbs().maxCoeff() > tol::kUnitary) {
        throw std::invalid_argument("rotation generator is not an involution");
    }
    return std::cos(theta / 2) * id - kI * std::sin(theta / 2) * involution;
}

CMatrix rzz(double theta) {
    cplx p = std::exp(kI * (theta / 2));
    cplx q = std::exp(-kI * (theta / 2));
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = p;
    m(1, 1) = q;
    m(2, 2) = q;
    m(3, 3) = p;
    return m;
}

CMatrix zz_coupling(double theta) {
    return rotation(kron(pauli(Pauli::Z), pauli(Pauli::Z)), theta);
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix commutator(const CMatrix &a, const CMatrix &b) {
    return a * b - b * a;
}

CMatrix anticommutator(const CMatrix &a, const CMatrix &b) {
    return a * b + b * a;
}

CMatrix embed_operator(const CMatrix &op, std::span<const std::size_t> targets, std::size_t n_qubits) {
    if (n_qubits > kMaxQubits) {
        throw std::invalid_argument("too many qubits for dense simulation");
    }
    check_targets(targets, n_qubits);
    std::size_t k = targets.size();
    if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != (std::size_t{1} << k)) {
        throw std::invalid_argument("operator size does not match target count");
    }
    std::size_t d = std::size_t{1} << n_qubits;
    std::size_t dk = std::size_t{1} << k;
    std::size_t target_mask = 0;
    for (auto t : targets) {
        target_mask |= std::size_t{1} << (n_qubits - 1 - t);
    }
    auto sub_index = [&](std::size_t full) {
        std::size_t s = 0;
        for (std::size_t j = 0; j < k; j++) {
            s = (s << 1) | bit_of(full, targets[j], n_qubits);
        }
        return s;
    };
    auto with_sub = [&](std::size_t base, std::size_t s) {
        std::size_t r = base & ~target_mask;
        for (std::size_t j = 0; j < k; j++) {
            if ((s >> (k - 1 - j)) & 1u) {
                r |= std::size_t{1} << (n_qubits - 1 - targets[j]);
            }
        }
        return r;
    };
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t c = 0; c < d; c++) {
        std::size_t sc = sub_index(c);
        for (std::size_t i = 0; i < dk; i++) {
            out(static_cast<Eigen::Index>(with_sub(c, i)), static_cast<Eigen::Index>(c)) =
                op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(sc));
        }
    }
    return out;
}

CMatrix permute_qubits(const CMatrix &m, std::span<const std::size_t> perm) {
    std::size_t n = qubit_count(m);
    if (perm.size() != n) {
        throw std::invalid_argument("permutation length does not match qubit count");
    }
    check_targets(perm, n);
    std::size_t d = std::size_t{1} << n;
    std::vector<std::size_t> src(d);
    for (std::size_t r = 0; r < d; r++) {
        std::size_t s = 0;
        for (std::size_t k = 0; k < n; k++) {
            if (bit_of(r, k, n)) {
                s |= std::size_t{1} << (n - 1 - perm[k]);
            }
        }
        src[r] = s;
    }
    CMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < d; r++) {
        for (std::size_t c = 0; c < d; c++) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                m(static_cast<Eigen::Index>(src[r]), static_cast<Eigen::Index>(src[c]));
        }
    }
    return out;
}

DensityState::DensityState(CMatrix mat, bool require_unit_trace) : n_qubits_(qubit_count(mat)), mat_(std::move(mat)) {
    if (n_qubits_ > kMaxQubits) {
        throw std::invalid_argument("too many qubits for dense simulation");
    }
    if (!is_hermitian(mat_, tol::kHermitian)) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (!is_psd(mat_, tol::kPsdEigen)) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
    double tr = mat_.trace().real();
    if (require_unit_trace) {
        if (std::abs(tr - 1.0) > tol::kTrace) {
            throw std::invalid_argument("density matrix trace is not 1");
        }
    } else if (tr < -tol::kTrace || tr > 1.0 + tol::kTrace) {
        throw std::invalid_argument("density matrix trace outside [0, 1]");
    }
}

DensityState DensityState::zero_state(std::size_t n_qubits) {
    if (n_qubits > kMaxQubits) {
        throw std::invalid_argument("too many qubits for dense simulation");
    }
    auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    CMatrix m = CMatrix::Zero(d, d);
    m(0, 0) = 1.0;
    return DensityState(std::move(m));
}

DensityState DensityState::from_ket(const CVector &ket) {
    return DensityState(ket * ket.adjoint());
}

double DensityState::trace() const {
    return mat_.trace().real();
}

std::vector<double> DensityState::populations() const {
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < out.size(); i++) {
        out[i] = mat_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    return out;
}

DensityState apply_unitary(const DensityState &rho, const CMatrix &u, std::span<const std::size_t> targets) {
    if (!is_unitary(u, tol::kUnitary)) {
        throw std::invalid_argument("gate is not unitary");
    }
    CMatrix full = embed_operator(u, targets, rho.n_qubits());
    double tr = rho.trace();
    bool unit = std::abs(tr - 1.0) <= tol::kTrace;
    return DensityState(full * rho.mat() * full.adjoint(), unit);
}

DensityState apply_unitary(const DensityState &rho, const CMatrix &u, std::initializer_list<std::size_t> targets) {
    return apply_unitary(rho, u, std::span<const std::size_t>(targets.begin(), targets.size()));
}

DensityState partial_trace(const DensityState &rho, std::span<const std::size_t> keep) {
    std::size_t n = rho.n_qubits();
    if (keep.empty()) {
        throw std::invalid_argument("partial trace must keep at least one qubit");
    }
    check_targets(keep, n);
    std::size_t k = keep.size();
    std::size_t d = std::size_t{1} << n;
    std::size_t keep_mask = 0;
    for (auto q : keep) {
        keep_mask |= std::size_t{1} << (n - 1 - q);
    }
    std::vector<std::size_t> sub(d);
    for (std::size_t i = 0; i < d; i++) {
        std::size_t s = 0;
        for (std::size_t j = 0; j < k; j++) {
            s = (s << 1) | bit_of(i, keep[j], n);
        }
        sub[i] = s;
    }
    auto dk = static_cast<Eigen::Index>(std::size_t{1} << k);
    CMatrix out = CMatrix::Zero(dk, dk);
    const CMatrix &m = rho.mat();
    for (std::size_t r = 0; r < d; r++) {
        for (std::size_t c = 0; c < d; c++) {
            if ((r & ~keep_mask) == (c & ~keep_mask)) {
                out(static_cast<Eigen::Index>(sub[r]), static_cast<Eigen::Index>(sub[c])) +=
                    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    double tr = rho.trace();
    return DensityState(std::move(out), std::abs(tr - 1.0) <= tol::kTrace);
}

DensityState partial_trace(const DensityState &rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

CMatrix trace_out_trailing(const CMatrix &op, std::size_t traced_qubits) {
    std::size_t n = qubit_count(op);
    if (traced_qubits > n) {
        throw std::invalid_argument("cannot trace out more qubits than present");
    }
    auto dt = static_cast<Eigen::Index>(std::size_t{1} << traced_qubits);
    auto dk = static_cast<Eigen::Index>(std::size_t{1} << (n - traced_qubits));
    CMatrix out = CMatrix::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; i++) {
        for (Eigen::Index j = 0; j < dk; j++) {
            out(i, j) = op.block(i * dt, j * dt, dt, dt).trace();
        }
    }
    return out;
}

}  // namespace weakreal
