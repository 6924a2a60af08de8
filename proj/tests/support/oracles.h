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

#ifndef WEAKREAL_TESTS_ORACLES_H
#define WEAKREAL_TESTS_ORACLES_H

#include <complex>
#include <functional>
#include <random>

#include "weakreal/protocol.h"
#include "weakreal/qcore.h"

namespace weakreal::oracle {

/// The protocol circuit simulated on explicit 8-amplitude kets. Mixed meter
/// preparations are enumerated as weighted pure branches.
OutcomeDistribution ket_distribution(const ProtocolConfig &config);

/// <C> = cos^2 psi + 2 (gA + gB - 4 gA gB + fA fB / 4) sin^2 psi.
double exact_c(double psi, double ga, double gb, double fa, double fb);

/// Ideal contrast moments for meters Z on |psi+> to all orders in lambda.
ExpectationSet ideal_moments(double psi, double lambda);

/// Entry-by-entry Kronecker product.
CMatrix naive_kron(const CMatrix &a, const CMatrix &b);

CMatrix random_hermitian(std::size_t dim, std::mt19937_64 &rng);
CMatrix random_density(std::size_t dim, std::mt19937_64 &rng);
CMatrix random_unitary(std::size_t dim, std::mt19937_64 &rng);

/// sum_k K X K^dagger.
CMatrix apply_kraus(const std::vector<CMatrix> &kraus, const CMatrix &x);

/// d^k f/dx^k at z from the Fourier integral (i q)^k f~(q) e^{iqz}, both
/// transforms by the trapezoid rule on [-half_width, half_width].
std::complex<double> fourier_derivative(const std::function<double(double)> &f, double z, int order,
                                        double half_width = 12, double step = 0.02);

double trapezoid(const std::function<double(double)> &f, double lo, double hi, std::size_t n);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace weakreal::oracle

#endif
