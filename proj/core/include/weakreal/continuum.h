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

#ifndef WEAKREAL_CONTINUUM_H
#define WEAKREAL_CONTINUUM_H

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace weakreal {

/// Uniform grid x_i = x_min + i dx, i = 0..n-1.
struct Grid1D {
    double x_min = -12;
    double x_max = 12;
    std::size_t n = 4096;

    double dx() const {
        return (x_max - x_min) / static_cast<double>(n - 1);
    }
    double x(std::size_t i) const {
        return x_min + static_cast<double>(i) * dx();
    }
};

/// Sampled wave function, hbar = 1.
struct WaveFunction1D {
    Grid1D grid;
    std::vector<std::complex<double>> values;

    static WaveFunction1D sample(const std::function<std::complex<double>(double)> &f, const Grid1D &grid = {});
    /// Trapezoid-rule norm of |psi|^2.
    double norm() const;
};

WaveFunction1D gaussian_state(const Grid1D &grid = {});
/// (e^{-(x-a)^2/2} + e^{-(x+a)^2/2}) / sqrt(2 sqrt(pi) (1 + e^{-a^2})).
WaveFunction1D cat_state(double a, const Grid1D &grid = {});

/// psi = e^{alpha + i beta}; beta is unwrapped along the grid.
struct LogAmplitude {
    std::vector<double> alpha;
    std::vector<double> beta;
};

LogAmplitude polar_decompose(const WaveFunction1D &psi);

/// Fornberg weights for derivatives 0..max_order at z from the given nodes.
std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double> &nodes, int max_order);

/// Quantum violation at a point: alpha'' > 0.
inline bool quantum_criterion(double alpha_second) {
    return alpha_second > 0;
}
/// Classical responsive violation at a point: alpha'' < 0.
inline bool classical_criterion(double alpha_second) {
    return alpha_second < 0;
}

/// Conditioned moments at x = z for informative A = B = Q.
struct PmMoments {
    double c = 0;
    double cq = 0;
    double cq2 = 0;
    /// (|psi'|^2 - Re psi'' psi*)/2, computed without the polar form.
    double cq2_direct = 0;
    double alpha_prime = 0;
    double alpha_second = 0;
    double beta_prime = 0;

    /// <a+b|c>^2/4 = (cq/c)^2.
    double lhs() const {
        return (cq / c) * (cq / c);
    }
    /// <ab|c> = cq2/c.
    double rhs() const {
        return cq2 / c;
    }
    /// Quantum criterion alpha'' > 0.
    bool violates() const {
        return quantum_criterion(alpha_second);
    }
};

/// Five-point stencils around z; throws if z is outside the grid interior.
PmMoments quantum_pm_moments(const WaveFunction1D &psi, double z);

/// Conditioning on a bin of the given width around z, averaged by 5-point
/// Gauss-Legendre and extrapolated to zero width from widths w and w/2.
/// The alpha/beta fields are the point values at z.
PmMoments binned_pm_moments(const WaveFunction1D &psi, double z, double width);

/// a^2 sech^2(a x) - 1.
double cat_alpha_second(double a, double x);

/// pi W(x, q) = e^{-x^2-q^2} (e^{-a^2} cosh 2ax + cos 2aq) / (1 + e^{-a^2}).
double wigner_cat(double x, double q, double a);

/// Integral of W(0, q) sqrt(pi) dq = 2/(e^{a^2} + 1).
double wigner_cat_slice_mass(double a);
/// Integral of W(0, q) q^2 sqrt(pi) dq = (1 - a^2)/(e^{a^2} + 1).
double wigner_cat_slice_second(double a);
/// Ratio of the two slice integrals, (1 - a^2)/2.
double wigner_conditional_ratio(double a);

/// H_0..H_n at x by the three-term recurrence.
std::vector<double> hermite_all(int n, double x);
/// Zeros of H_n (Golub-Welsch), ascending.
std::vector<double> hermite_zeros(int n);

struct FockReport {
    double max_alpha_second = 0;
    bool violates = false;
    /// min over the grid of (H_{n-1}^2 - H_n H_{n-2}) / (H_{n-1}^2 + |H_n H_{n-2}|);
    /// zero for n < 2.
    double min_turan_residual = 0;
    std::size_t skipped = 0;
};

/// alpha'' = H_n''/H_n - (H_n'/H_n)^2 - 1 on the grid, skipping points within
/// 1e-6 of a zero of H_n. violates iff alpha'' > 1e-9 somewhere. n <= 12.
FockReport fock_check(int n, const Grid1D &grid = {});

// Classical phase space.

using PhaseFn = std::function<double(double, double)>;

/// Meter phase-space grid, square [lo, hi]^2.
struct MeterGrid {
    double lo = -8;
    double hi = 8;
    std::size_t n = 401;
};

/// One separable coupling term: system observable label times a meter function.
struct SeparableTerm {
    std::string system_label;
    PhaseFn meter;
};

/// Coefficients of each system label in A and A'.
struct ClassicalDecomposition {
    std::map<std::string, double> a;
    std::map<std::string, double> a_prime;
};

/// A = integral (Pbar, Mbar) H, A' = integral Mbar Pbar H over the meter space.
ClassicalDecomposition classical_decompose(const PhaseFn &mbar, const PhaseFn &pbar,
                                           const std::vector<SeparableTerm> &h, const MeterGrid &grid = {});

/// Poisson bracket (f, g) = f_x g_q - f_q g_x by central differences with step h.
double poisson_bracket(const PhaseFn &f, const PhaseFn &g, double x, double q, double h = 1e-4);

struct ResponsiveRatio {
    double lhs = 0;
    double rhs = 0;

    bool violated() const {
        return lhs > rhs;
    }
};

/// (alpha'^2, alpha'^2 + alpha'') at z for the log-marginal alpha.
ResponsiveRatio classical_responsive_ratio(const std::function<double(double)> &alpha, double z, double h = 1e-3);

struct PhasePoint {
    double x = 0;
    double q = 0;
};

struct NoninvasiveResult {
    std::vector<double> readout;
    std::vector<PhasePoint> after;
};

/// Meter at x = q = 0 coupled by H = q_meter A(x, q) for unit time (RK4);
/// the readout is the final meter position.
NoninvasiveResult classical_noninvasive_demo(const PhaseFn &a_fn, const std::vector<PhasePoint> &samples,
                                             int steps = 16);

}  // namespace weakreal

#endif
