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

#include "support/oracles.h"

#include <array>
#include <cmath>

namespace weakreal::oracle {

namespace {

using C = std::complex<double>;
using Ket = std::array<C, 8>;
using Gate = std::array<C, 4>;  // row-major 2x2

const C kI(0, 1);

// cos(t/2) - i sin(t/2) V for V in {X, Y, Z}.
Gate rot(char v, double t) {
    double c = std::cos(t / 2);
    double s = std::sin(t / 2);
    switch (v) {
        case 'X':
            return {c, -kI * s, -kI * s, c};
        case 'Y':
            return {c, -s, s, c};
        default:
            return {c - kI * s, 0, 0, c + kI * s};
    }
}

Gate mul(const Gate &a, const Gate &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

// Qubit q in {0, 1, 2}, qubit 0 is the most significant bit.
void apply1(Ket &k, const Gate &g, int q) {
    int bit = 4 >> q;
    for (int i = 0; i < 8; i++) {
        if (i & bit) {
            continue;
        }
        C x0 = k[i];
        C x1 = k[i | bit];
        k[i] = g[0] * x0 + g[1] * x1;
        k[i | bit] = g[2] * x0 + g[3] * x1;
    }
}

// exp(-i t/2 Z_q Z_s).
void apply_zz(Ket &k, double t, int q, int s) {
    for (int i = 0; i < 8; i++) {
        double zq = (i & (4 >> q)) ? -1 : 1;
        double zs = (i & (4 >> s)) ? -1 : 1;
        k[i] *= std::exp(-kI * (t / 2) * zq * zs);
    }
}

}  // namespace

OutcomeDistribution ket_distribution(const ProtocolConfig &cfg) {
    NoiseParams na = cfg.noise_a.value_or(NoiseParams{});
    NoiseParams nb = cfg.noise_b.value_or(NoiseParams{});
    Gate sys = rot('Y', kPi - cfg.psi);
    auto prep = [](int s, const NoiseParams &n) { return mul(rot('Z', s * kPi / 2), rot('X', kPi / 2 + n.alpha)); };

    std::array<double, 8> bits{};
    for (int ia = 0; ia < 2; ia++) {
        for (int ib = 0; ib < 2; ib++) {
            double w = (ia ? na.epsilon : 1 - na.epsilon) * (ib ? nb.epsilon : 1 - nb.epsilon);
            if (w == 0) {
                continue;
            }
            Ket k{};
            k[ia * 4 + ib * 2] = 1;
            apply1(k, sys, 2);
            apply1(k, prep(cfg.sign_a, na), 0);
            apply1(k, prep(cfg.sign_b, nb), 1);
            if (cfg.order == Order::AB) {
                apply_zz(k, cfg.theta, 0, 2);
                apply_zz(k, cfg.theta, 1, 2);
            } else {
                apply_zz(k, cfg.theta, 1, 2);
                apply_zz(k, cfg.theta, 0, 2);
            }
            apply1(k, rot('X', kPi / 2 + na.beta), 0);
            apply1(k, rot('X', kPi / 2 + nb.beta), 1);
            apply1(k, sys, 2);
            for (int i = 0; i < 8; i++) {
                bits[i] += w * std::norm(k[i]);
            }
        }
    }
    // Readout: P(read 0 | bit 0) = eta + 1 - omega, P(read 0 | bit 1) = eta.
    auto read0 = [](const NoiseParams &n, int bit) { return bit ? n.eta : n.eta + 1 - n.omega; };
    OutcomeDistribution out{};
    for (int i = 0; i < 8; i++) {
        int a = (i >> 2) & 1;
        int b = (i >> 1) & 1;
        int c = i & 1;
        for (int ra = 0; ra < 2; ra++) {
            double pa = ra ? 1 - read0(na, a) : read0(na, a);
            for (int rb = 0; rb < 2; rb++) {
                double pb = rb ? 1 - read0(nb, b) : read0(nb, b);
                out[ra * 4 + rb * 2 + c] += bits[i] * pa * pb;
            }
        }
    }
    return out;
}

double exact_c(double psi, double ga, double gb, double fa, double fb) {
    double s2 = std::sin(psi) * std::sin(psi);
    return std::cos(psi) * std::cos(psi) + 2 * (ga + gb - 4 * ga * gb + fa * fb / 4) * s2;
}

ExpectationSet ideal_moments(double psi, double lambda) {
    double cp = std::cos(psi);
    ExpectationSet e;
    e.a = e.b = e.ac = e.bc = -lambda * cp;
    e.ab = lambda * lambda;
    e.abc = lambda * lambda * (1 + cp * cp) / 2;
    e.c = cp * cp + lambda * lambda * (1 - cp * cp) / 2;
    return e;
}

CMatrix naive_kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < out.rows(); i++) {
        for (Eigen::Index j = 0; j < out.cols(); j++) {
            out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
        }
    }
    return out;
}

CMatrix random_hermitian(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    auto d = static_cast<Eigen::Index>(dim);
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            m(i, j) = C(g(rng), g(rng));
        }
    }
    return (m + m.adjoint()) / 2.0;
}

CMatrix random_density(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    auto d = static_cast<Eigen::Index>(dim);
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            m(i, j) = C(g(rng), g(rng));
        }
    }
    CMatrix rho = m * m.adjoint();
    return rho / rho.trace();
}

CMatrix random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    auto d = static_cast<Eigen::Index>(dim);
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            m(i, j) = C(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(m);
    return qr.householderQ();
}

CMatrix apply_kraus(const std::vector<CMatrix> &kraus, const CMatrix &x) {
    CMatrix out = CMatrix::Zero(x.rows(), x.cols());
    for (const auto &k : kraus) {
        out += k * x * k.adjoint();
    }
    return out;
}

std::complex<double> fourier_derivative(const std::function<double(double)> &f, double z, int order,
                                        double half_width, double step) {
    auto n = static_cast<std::size_t>(std::lround(2 * half_width / step)) + 1;
    std::vector<double> x(n), fx(n);
    for (std::size_t i = 0; i < n; i++) {
        x[i] = -half_width + static_cast<double>(i) * step;
        fx[i] = f(x[i]);
    }
    const double norm = 1 / std::sqrt(2 * kPi);
    C total = 0;
    for (std::size_t j = 0; j < n; j++) {
        double q = x[j];
        C ft = 0;
        for (std::size_t i = 0; i < n; i++) {
            double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            ft += w * fx[i] * std::exp(-kI * q * x[i]);
        }
        ft *= norm * step;
        double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        total += w * std::pow(kI * q, order) * ft * std::exp(kI * q * z);
    }
    return total * norm * step;
}

double trapezoid(const std::function<double(double)> &f, double lo, double hi, std::size_t n) {
    double h = (hi - lo) / static_cast<double>(n - 1);
    double s = 0;
    for (std::size_t i = 0; i < n; i++) {
        double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        s += w * f(lo + static_cast<double>(i) * h);
    }
    return s * h;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        double lx = std::log(x[i]);
        double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace weakreal::oracle
