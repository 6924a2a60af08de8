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

#include "weakreal/continuum.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "weakreal/constants.h"

namespace weakreal {

namespace {

void check_grid(const Grid1D &g) {
    if (g.n < 5 || !(g.x_max > g.x_min)) {
        throw std::invalid_argument("grid needs at least 5 points and x_max > x_min");
    }
}

// Index of the first of five stencil nodes centred on z.
std::size_t stencil_start(const Grid1D &g, double z) {
    double t = (z - g.x_min) / g.dx();
    if (!(t >= 2) || !(t <= static_cast<double>(g.n) - 3)) {
        throw std::invalid_argument("z is outside the grid interior");
    }
    auto i = static_cast<std::size_t>(std::lround(t));
    return std::clamp<std::size_t>(i, 2, g.n - 3) - 2;
}

double unwrap_step(double prev, double next) {
    double d = next - prev;
    d -= 2 * kPi * std::round(d / (2 * kPi));
    return prev + d;
}

// First and second derivatives on a uniform grid, fourth order in the interior.
void diff_2d(const std::vector<double> &f, std::size_t n, double h, std::vector<double> &fx, std::vector<double> &fy) {
    fx.assign(n * n, 0.0);
    fy.assign(n * n, 0.0);
    auto at = [&](std::size_t i, std::size_t j) { return f[i * n + j]; };
    auto d1 = [&](auto get, std::size_t k) {
        if (k >= 2 && k + 2 < n) {
            return (get(k - 2) - 8 * get(k - 1) + 8 * get(k + 1) - get(k + 2)) / (12 * h);
        }
        if (k == 0) {
            return (get(1) - get(0)) / h;
        }
        if (k + 1 == n) {
            return (get(k) - get(k - 1)) / h;
        }
        return (get(k + 1) - get(k - 1)) / (2 * h);
    };
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            fx[i * n + j] = d1([&](std::size_t k) { return at(k, j); }, i);
            fy[i * n + j] = d1([&](std::size_t k) { return at(i, k); }, j);
        }
    }
}

}  // namespace

WaveFunction1D WaveFunction1D::sample(const std::function<std::complex<double>(double)> &f, const Grid1D &grid) {
    check_grid(grid);
    WaveFunction1D w;
    w.grid = grid;
    w.values.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; i++) {
        w.values[i] = f(grid.x(i));
    }
    return w;
}

double WaveFunction1D::norm() const {
    double s = 0;
    for (std::size_t i = 0; i < values.size(); i++) {
        double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
        s += w * std::norm(values[i]);
    }
    return s * grid.dx();
}

WaveFunction1D gaussian_state(const Grid1D &grid) {
    double n = std::pow(kPi, -0.25);
    return WaveFunction1D::sample([n](double x) { return std::complex<double>(n * std::exp(-x * x / 2)); }, grid);
}

WaveFunction1D cat_state(double a, const Grid1D &grid) {
    double n = 1 / std::sqrt(2 * std::sqrt(kPi) * (1 + std::exp(-a * a)));
    return WaveFunction1D::sample(
        [a, n](double x) {
            return std::complex<double>(n * (std::exp(-(x - a) * (x - a) / 2) + std::exp(-(x + a) * (x + a) / 2)));
        },
        grid);
}

LogAmplitude polar_decompose(const WaveFunction1D &psi) {
    LogAmplitude r;
    r.alpha.resize(psi.values.size());
    r.beta.resize(psi.values.size());
    for (std::size_t i = 0; i < psi.values.size(); i++) {
        double m = std::abs(psi.values[i]);
        if (!(m > 0)) {
            throw std::domain_error("wave function vanishes at a grid point");
        }
        r.alpha[i] = std::log(m);
        double b = std::arg(psi.values[i]);
        r.beta[i] = i == 0 ? b : unwrap_step(r.beta[i - 1], b);
    }
    return r;
}

std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double> &nodes, int max_order) {
    std::size_t n = nodes.size();
    if (n == 0 || max_order < 0) {
        throw std::invalid_argument("fornberg_weights needs nodes and max_order >= 0");
    }
    auto m = static_cast<std::size_t>(max_order);
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1;
    double c4 = nodes[0] - z;
    c[0][0] = 1;
    for (std::size_t i = 1; i < n; i++) {
        std::size_t mn = std::min(i, m);
        double c2 = 1;
        double c5 = c4;
        c4 = nodes[i] - z;
        for (std::size_t j = 0; j < i; j++) {
            double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; k--) {
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; k--) {
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<std::vector<double>> out(m + 1, std::vector<double>(n));
    for (std::size_t k = 0; k <= m; k++) {
        for (std::size_t j = 0; j < n; j++) {
            out[k][j] = c[j][k];
        }
    }
    return out;
}

PmMoments quantum_pm_moments(const WaveFunction1D &psi, double z) {
    const Grid1D &g = psi.grid;
    check_grid(g);
    std::size_t s = stencil_start(g, z);
    std::vector<double> nodes(5);
    for (std::size_t k = 0; k < 5; k++) {
        nodes[k] = g.x(s + k);
    }
    auto w = fornberg_weights(z, nodes, 2);

    std::complex<double> p0, p1, p2;
    std::vector<double> alpha(5), beta(5);
    for (std::size_t k = 0; k < 5; k++) {
        std::complex<double> v = psi.values[s + k];
        p0 += w[0][k] * v;
        p1 += w[1][k] * v;
        p2 += w[2][k] * v;
        if (!(std::abs(v) > 0)) {
            throw std::domain_error("wave function vanishes near z");
        }
        alpha[k] = std::log(std::abs(v));
        beta[k] = k == 0 ? std::arg(v) : unwrap_step(beta[k - 1], std::arg(v));
    }

    PmMoments r;
    double a0 = 0;
    for (std::size_t k = 0; k < 5; k++) {
        a0 += w[0][k] * alpha[k];
        r.alpha_prime += w[1][k] * alpha[k];
        r.alpha_second += w[2][k] * alpha[k];
        r.beta_prime += w[1][k] * beta[k];
    }
    double e2a = std::exp(2 * a0);
    r.c = e2a;
    r.cq = r.beta_prime * e2a;
    r.cq2 = (r.beta_prime * r.beta_prime - r.alpha_second / 2) * e2a;
    r.cq2_direct = (std::norm(p1) - std::real(p2 * std::conj(p0))) / 2;
    return r;
}

PmMoments binned_pm_moments(const WaveFunction1D &psi, double z, double width) {
    if (!(width > 0)) {
        throw std::invalid_argument("bin width must be positive");
    }
    static constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                                     0.5384693101056831, 0.9061798459386640};
    static constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                       0.4786286704993665, 0.2369268850561891};
    auto bin_average = [&](double w) {
        PmMoments avg;
        for (std::size_t k = 0; k < 5; k++) {
            PmMoments p = quantum_pm_moments(psi, z + kNodes[k] * w / 2);
            avg.c += kWeights[k] * p.c / 2;
            avg.cq += kWeights[k] * p.cq / 2;
            avg.cq2 += kWeights[k] * p.cq2 / 2;
            avg.cq2_direct += kWeights[k] * p.cq2_direct / 2;
        }
        return avg;
    };
    PmMoments wide = bin_average(width);
    PmMoments narrow = bin_average(width / 2);
    PmMoments r = quantum_pm_moments(psi, z);
    auto extrapolate = [](double coarse, double fine) { return (4 * fine - coarse) / 3; };
    r.c = extrapolate(wide.c, narrow.c);
    r.cq = extrapolate(wide.cq, narrow.cq);
    r.cq2 = extrapolate(wide.cq2, narrow.cq2);
    r.cq2_direct = extrapolate(wide.cq2_direct, narrow.cq2_direct);
    return r;
}

double cat_alpha_second(double a, double x) {
    double s = 1 / std::cosh(a * x);
    return a * a * s * s - 1;
}

double wigner_cat(double x, double q, double a) {
    double ea = std::exp(-a * a);
    return std::exp(-x * x - q * q) * (ea * std::cosh(2 * a * x) + std::cos(2 * a * q)) / (kPi * (1 + ea));
}

double wigner_cat_slice_mass(double a) {
    return 2 / (std::exp(a * a) + 1);
}

double wigner_cat_slice_second(double a) {
    return (1 - a * a) / (std::exp(a * a) + 1);
}

double wigner_conditional_ratio(double a) {
    return wigner_cat_slice_second(a) / wigner_cat_slice_mass(a);
}

std::vector<double> hermite_all(int n, double x) {
    if (n < 0) {
        throw std::invalid_argument("Hermite degree must be >= 0");
    }
    std::vector<double> h(static_cast<std::size_t>(n) + 1);
    h[0] = 1;
    if (n >= 1) {
        h[1] = 2 * x;
    }
    for (int k = 1; k < n; k++) {
        h[k + 1] = 2 * x * h[k] - 2 * k * h[k - 1];
    }
    return h;
}

std::vector<double> hermite_zeros(int n) {
    if (n < 1) {
        return {};
    }
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; k++) {
        j(k - 1, k) = j(k, k - 1) = std::sqrt(k / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j, Eigen::EigenvaluesOnly);
    const auto &ev = es.eigenvalues();
    return {ev.data(), ev.data() + n};
}

FockReport fock_check(int n, const Grid1D &grid) {
    if (n < 0 || n > 12) {
        throw std::invalid_argument("fock_check supports 0 <= n <= 12");
    }
    check_grid(grid);
    auto zeros = hermite_zeros(n);
    FockReport r;
    r.max_alpha_second = -std::numeric_limits<double>::infinity();
    r.min_turan_residual = n < 2 ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.n; i++) {
        double x = grid.x(i);
        auto h = hermite_all(n, x);
        if (n >= 2) {
            double t = h[n - 1] * h[n - 1] - h[n] * h[n - 2];
            double scale = h[n - 1] * h[n - 1] + std::abs(h[n] * h[n - 2]);
            r.min_turan_residual = std::min(r.min_turan_residual, t / scale);
        }
        bool near_zero = std::any_of(zeros.begin(), zeros.end(), [x](double z0) { return std::abs(x - z0) < 1e-6; });
        if (near_zero) {
            r.skipped++;
            continue;
        }
        double hp = n >= 1 ? 2.0 * n * h[n - 1] : 0.0;
        double hpp = n >= 2 ? 4.0 * n * (n - 1) * h[n - 2] : 0.0;
        double q = hp / h[n];
        double a2 = hpp / h[n] - q * q - 1;
        r.max_alpha_second = std::max(r.max_alpha_second, a2);
    }
    r.violates = r.max_alpha_second > 1e-9;
    return r;
}

double poisson_bracket(const PhaseFn &f, const PhaseFn &g, double x, double q, double h) {
    double fx = (f(x + h, q) - f(x - h, q)) / (2 * h);
    double fq = (f(x, q + h) - f(x, q - h)) / (2 * h);
    double gx = (g(x + h, q) - g(x - h, q)) / (2 * h);
    double gq = (g(x, q + h) - g(x, q - h)) / (2 * h);
    return fx * gq - fq * gx;
}

ClassicalDecomposition classical_decompose(const PhaseFn &mbar, const PhaseFn &pbar,
                                           const std::vector<SeparableTerm> &h, const MeterGrid &grid) {
    if (grid.n < 5 || !(grid.hi > grid.lo)) {
        throw std::invalid_argument("meter grid needs at least 5 points and hi > lo");
    }
    std::size_t n = grid.n;
    double step = (grid.hi - grid.lo) / static_cast<double>(n - 1);
    auto coord = [&](std::size_t i) { return grid.lo + static_cast<double>(i) * step; };

    std::vector<double> m(n * n), p(n * n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            m[i * n + j] = mbar(coord(i), coord(j));
            p[i * n + j] = pbar(coord(i), coord(j));
        }
    }
    std::vector<double> px, pq, mx, mq;
    diff_2d(p, n, step, px, pq);
    diff_2d(m, n, step, mx, mq);

    ClassicalDecomposition out;
    for (const auto &term : h) {
        double sa = 0;
        double sp = 0;
        for (std::size_t i = 0; i < n; i++) {
            double wi = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            for (std::size_t j = 0; j < n; j++) {
                double w = wi * ((j == 0 || j + 1 == n) ? 0.5 : 1.0);
                std::size_t k = i * n + j;
                double hv = term.meter(coord(i), coord(j));
                sa += w * (px[k] * mq[k] - pq[k] * mx[k]) * hv;
                sp += w * m[k] * p[k] * hv;
            }
        }
        out.a[term.system_label] += sa * step * step;
        out.a_prime[term.system_label] += sp * step * step;
    }
    return out;
}

ResponsiveRatio classical_responsive_ratio(const std::function<double(double)> &alpha, double z, double h) {
    double fm2 = alpha(z - 2 * h);
    double fm1 = alpha(z - h);
    double f0 = alpha(z);
    double fp1 = alpha(z + h);
    double fp2 = alpha(z + 2 * h);
    double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
    double d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
    return {d1 * d1, d1 * d1 + d2};
}

NoninvasiveResult classical_noninvasive_demo(const PhaseFn &a_fn, const std::vector<PhasePoint> &samples, int steps) {
    if (steps < 1) {
        throw std::invalid_argument("steps must be >= 1");
    }
    // State (x, q, meter x, meter q); H = meter_q * A(x, q).
    using State = std::array<double, 4>;
    const double eps = 1e-6;
    auto rhs = [&](const State &s) -> State {
        double ax = (a_fn(s[0] + eps, s[1]) - a_fn(s[0] - eps, s[1])) / (2 * eps);
        double aq = (a_fn(s[0], s[1] + eps) - a_fn(s[0], s[1] - eps)) / (2 * eps);
        return {s[3] * aq, -s[3] * ax, a_fn(s[0], s[1]), 0.0};
    };
    auto axpy = [](const State &s, double h, const State &k) {
        return State{s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2], s[3] + h * k[3]};
    };

    NoninvasiveResult out;
    double dt = 1.0 / steps;
    for (const auto &p0 : samples) {
        State s{p0.x, p0.q, 0.0, 0.0};
        for (int i = 0; i < steps; i++) {
            State k1 = rhs(s);
            State k2 = rhs(axpy(s, dt / 2, k1));
            State k3 = rhs(axpy(s, dt / 2, k2));
            State k4 = rhs(axpy(s, dt, k3));
            for (int c = 0; c < 4; c++) {
                s[c] += dt / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
            }
        }
        out.readout.push_back(s[2]);
        out.after.push_back({s[0], s[1]});
    }
    return out;
}

}  // namespace weakreal
