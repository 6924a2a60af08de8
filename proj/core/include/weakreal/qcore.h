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

#ifndef WEAKREAL_QCORE_H
#define WEAKREAL_QCORE_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "weakreal/constants.h"

namespace weakreal {

using cplx = std::complex<double>;

/// Dense complex matrix. Qubit 0 is the leftmost tensor factor, i.e. the most
/// significant bit of a basis index and the leftmost character of a bitstring.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

bool is_hermitian(const CMatrix &m, double tol = tol::kHermitian);
bool is_unitary(const CMatrix &m, double tol = tol::kUnitary);
bool is_psd(const CMatrix &m, double tol = tol::kPsdEigen);
cplx trace(const CMatrix &m);

/// Largest singular value.
double spectral_norm(const CMatrix &m);

/// Number of qubits of a 2^n square matrix; throws for other shapes.
std::size_t qubit_count(const CMatrix &m);

enum class Pauli { I, X, Y, Z };

CMatrix pauli(Pauli p);
/// Accepts "I", "X", "Y", "Z"; throws std::invalid_argument otherwise.
CMatrix pauli(char name);

/// exp(-i theta V / 2) = cos(theta/2) I - i sin(theta/2) V for an involution V.
CMatrix rotation(const CMatrix &involution, double theta);

/// The fractional two-qubit gate in its reference matrix form,
/// diag(e^{i theta/2}, e^{-i theta/2}, e^{-i theta/2}, e^{i theta/2}).
CMatrix rzz(double theta);

/// rotation(Z (x) Z, theta) = exp(-i theta ZZ / 2), the coupling used by the
/// meter circuits. Equal to rzz(-theta).
CMatrix zz_coupling(double theta);

CMatrix kron(const CMatrix &a, const CMatrix &b);
CMatrix commutator(const CMatrix &a, const CMatrix &b);
CMatrix anticommutator(const CMatrix &a, const CMatrix &b);

/// Lifts an operator on `targets` (in that order) to the full n-qubit space.
CMatrix embed_operator(const CMatrix &op, std::span<const std::size_t> targets, std::size_t n_qubits);

/// Reorders tensor factors: qubit k of the result is qubit perm[k] of the input.
CMatrix permute_qubits(const CMatrix &m, std::span<const std::size_t> perm);

/// Density matrix over n qubits. Immutable after construction.
class DensityState {
   public:
    /// Validates shape, Hermiticity, positivity and trace in [0, 1].
    /// With `require_unit_trace` the trace must equal 1 within tolerance.
    explicit DensityState(CMatrix mat, bool require_unit_trace = true);

    static DensityState zero_state(std::size_t n_qubits);
    static DensityState from_ket(const CVector &ket);

    std::size_t n_qubits() const {
        return n_qubits_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(mat_.rows());
    }
    const CMatrix &mat() const {
        return mat_;
    }
    double trace() const;
    /// Diagonal in the computational basis.
    std::vector<double> populations() const;

   private:
    std::size_t n_qubits_;
    CMatrix mat_;
};

/// U rho U^dagger with U acting on `targets`.
DensityState apply_unitary(const DensityState &rho, const CMatrix &u, std::span<const std::size_t> targets);
DensityState apply_unitary(const DensityState &rho, const CMatrix &u, std::initializer_list<std::size_t> targets);

/// Reduced state on `keep` (result qubit k is input qubit keep[k]).
DensityState partial_trace(const DensityState &rho, std::span<const std::size_t> keep);
DensityState partial_trace(const DensityState &rho, std::initializer_list<std::size_t> keep);

/// Partial trace of a general operator over the trailing `traced` qubits.
CMatrix trace_out_trailing(const CMatrix &op, std::size_t traced_qubits);

}  // namespace weakreal

#endif
