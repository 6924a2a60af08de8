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

#include "weakreal/protocol.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace weakreal {

namespace {

// Y_{pi - psi} takes |0> to |psi+> and |psi-> to -|0>.
CMatrix system_gate(double psi) {
    return rotation(pauli(Pauli::Y), kPi - psi);
}

CMatrix meter_preparation_gate(int sign, const std::optional<NoiseParams> &noise) {
    if (!noise) {
        return rotation(pauli(Pauli::Y), sign * kPi / 2);
    }
    return rotation(pauli(Pauli::Z), sign * kPi / 2) * rotation(pauli(Pauli::X), kPi / 2 + noise->alpha);
}

CMatrix meter_raw_state(const std::optional<NoiseParams> &noise) {
    CMatrix m = CMatrix::Zero(2, 2);
    double eps = noise ? noise->epsilon : 0.0;
    m(0, 0) = 1 - eps;
    m(1, 1) = eps;
    return m;
}

}  // namespace

std::string_view to_string(Order o) {
    return o == Order::AB ? "AB" : "BA";
}

Order parse_order(std::string_view s) {
    if (s == "AB") {
        return Order::AB;
    }
    if (s == "BA") {
        return Order::BA;
    }
    throw std::invalid_argument("order must be AB or BA, got '" + std::string(s) + "'");
}

std::size_t setting_index(int sign_a, int sign_b) {
    for (std::size_t i = 0; i < kSettings.size(); i++) {
        if (kSettings[i].first == sign_a && kSettings[i].second == sign_b) {
            return i;
        }
    }
    throw std::invalid_argument("signs must be +1 or -1");
}

void ProtocolConfig::validate() const {
    if (!(std::abs(theta) <= kPi / 2)) {
        throw std::invalid_argument("|theta| must not exceed pi/2");
    }
    if (!(psi >= 0 && psi < kPi)) {
        throw std::invalid_argument("psi must lie in [0, pi)");
    }
    setting_index(sign_a, sign_b);
    if (noise_a) {
        noise_a->validate();
    }
    if (noise_b) {
        noise_b->validate();
    }
}

double ProtocolConfig::lambda() const {
    return std::sin(theta);
}

ProtocolConfig ProtocolConfig::with_signs(int a, int b) const {
    ProtocolConfig c = *this;
    c.sign_a = a;
    c.sign_b = b;
    return c;
}

OutcomeDistribution exact_expectations(const ProtocolConfig &config) {
    config.validate();
    CMatrix sys0 = CMatrix::Zero(2, 2);
    sys0(0, 0) = 1;
    DensityState rho(kron(kron(meter_raw_state(config.noise_a), meter_raw_state(config.noise_b)), sys0));

    rho = apply_unitary(rho, system_gate(config.psi), {kSystem});
    rho = apply_unitary(rho, meter_preparation_gate(config.sign_a, config.noise_a), {kMeterA});
    rho = apply_unitary(rho, meter_preparation_gate(config.sign_b, config.noise_b), {kMeterB});

    CMatrix zz = zz_coupling(config.theta);
    if (config.order == Order::AB) {
        rho = apply_unitary(rho, zz, {kMeterA, kSystem});
        rho = apply_unitary(rho, zz, {kMeterB, kSystem});
    } else {
        rho = apply_unitary(rho, zz, {kMeterB, kSystem});
        rho = apply_unitary(rho, zz, {kMeterA, kSystem});
    }

    double beta_a = config.noise_a ? config.noise_a->beta : 0.0;
    double beta_b = config.noise_b ? config.noise_b->beta : 0.0;
    rho = apply_unitary(rho, rotation(pauli(Pauli::X), kPi / 2 + beta_a), {kMeterA});
    rho = apply_unitary(rho, rotation(pauli(Pauli::X), kPi / 2 + beta_b), {kMeterB});
    rho = apply_unitary(rho, system_gate(config.psi), {kSystem});

    auto pops = rho.populations();
    OutcomeDistribution out{};
    NoiseParams ideal;
    const NoiseParams &na = config.noise_a ? *config.noise_a : ideal;
    const NoiseParams &nb = config.noise_b ? *config.noise_b : ideal;
    // Readout confusion on the meter bits.
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            for (int c = 0; c < 2; c++) {
                double p = pops[static_cast<std::size_t>(a * 4 + b * 2 + c)];
                for (int ra = 0; ra < 2; ra++) {
                    double qa = na.read_zero_given(a);
                    double wa = ra == 0 ? qa : 1 - qa;
                    for (int rb = 0; rb < 2; rb++) {
                        double qb = nb.read_zero_given(b);
                        double wb = rb == 0 ? qb : 1 - qb;
                        out[static_cast<std::size_t>(ra * 4 + rb * 2 + c)] += p * wa * wb;
                    }
                }
            }
        }
    }
    return out;
}

SettingMoments moments_of(const OutcomeDistribution &p) {
    SettingMoments m;
    for (int i = 0; i < 8; i++) {
        double za = (i & 4) ? -1.0 : 1.0;
        double zb = (i & 2) ? -1.0 : 1.0;
        double c = (i & 1) ? 0.0 : 1.0;
        double w = p[static_cast<std::size_t>(i)];
        m.a += w * za;
        m.b += w * zb;
        m.ab += w * za * zb;
        m.ac += w * za * c;
        m.bc += w * zb * c;
        m.abc += w * za * zb * c;
        m.c += w * c;
    }
    return m;
}

ExpectationSet combine_settings(std::span<const SettingMoments, 4> moments) {
    ExpectationSet e;
    for (std::size_t i = 0; i < 4; i++) {
        double sa = kSettings[i].first;
        double sb = kSettings[i].second;
        const auto &m = moments[i];
        e.a += sa * m.a / 4;
        e.b += sb * m.b / 4;
        e.ab += sa * sb * m.ab / 4;
        e.ac += sa * m.ac / 4;
        e.bc += sb * m.bc / 4;
        e.abc += sa * sb * m.abc / 4;
        e.c += m.c / 4;
    }
    return e;
}

ExpectationSet contrast_expectations(const ProtocolConfig &config) {
    std::array<SettingMoments, 4> m;
    for (std::size_t i = 0; i < 4; i++) {
        m[i] = moments_of(exact_expectations(config.with_signs(kSettings[i].first, kSettings[i].second)));
    }
    return combine_settings(m);
}

ExpectationSet limit_expectations(double psi) {
    if (!(psi >= 0 && psi < kPi)) {
        throw std::invalid_argument("psi must lie in [0, pi)");
    }
    CMatrix v = system_gate(psi);
    CMatrix zero = CMatrix::Zero(2, 2);
    zero(0, 0) = 1;
    CMatrix rho = v * zero * v.adjoint();
    CMatrix cond = v.adjoint() * zero * v;
    SuperOp zh = anticommutator_map(pauli(Pauli::Z));
    CMatrix z1 = zh.apply(rho);
    CMatrix z2 = zh.apply(z1);
    ExpectationSet e;
    e.limit = true;
    e.c = (cond * rho).trace().real();
    e.a = z1.trace().real();
    e.b = e.a;
    e.ac = (cond * z1).trace().real();
    e.bc = e.ac;
    e.ab = z2.trace().real();
    e.abc = (cond * z2).trace().real();
    return e;
}

ViolationReport violation_lhs(const ExpectationSet &e) {
    ViolationReport r;
    r.components = e;
    double den = 4 * e.abc * e.c;
    if (!(e.c > 0) || !(std::abs(den) >= tol::kIndeterminate)) {
        return r;
    }
    double num = e.ac + e.bc;
    r.lhs = num * num / den;
    return r;
}

ViolationReport predict(const ProtocolConfig &config) {
    config.validate();
    if (config.theta == 0) {
        return violation_lhs(limit_expectations(config.psi));
    }
    return violation_lhs(contrast_expectations(config));
}

double ideal_lhs(double psi, double lambda) {
    double c2 = std::cos(psi) * std::cos(psi);
    double s2 = 1 - c2;
    double cl = c2 + lambda * lambda * s2 / 2;
    return 2 * c2 / (cl * (1 + c2));
}

unsigned default_thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("WEAKREAL_THREADS")) {
        char *end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) {
            n = std::min(n, static_cast<unsigned>(cap));
        }
    }
    return n;
}

std::vector<SweepRow> sweep(std::span<const double> psi_grid, std::span<const double> theta_grid, unsigned threads) {
    if (psi_grid.empty() || theta_grid.empty()) {
        throw std::invalid_argument("sweep grids must be nonempty");
    }
    std::vector<SweepRow> rows(psi_grid.size() * theta_grid.size());
    for (std::size_t i = 0; i < psi_grid.size(); i++) {
        for (std::size_t j = 0; j < theta_grid.size(); j++) {
            ProtocolConfig c;
            c.psi = psi_grid[i];
            c.theta = theta_grid[j];
            c.validate();
            auto &row = rows[i * theta_grid.size() + j];
            row.psi = c.psi;
            row.theta = c.theta;
            row.lambda = c.lambda();
        }
    }
    if (threads == 0) {
        threads = default_thread_count();
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < rows.size(); k = next++) {
            ProtocolConfig c;
            c.psi = rows[k].psi;
            c.theta = rows[k].theta;
            rows[k].lhs = predict(c).lhs;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; t++) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    return rows;
}

}  // namespace weakreal
