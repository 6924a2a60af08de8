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

#include <cmath>
#include <memory>

#include "commands.h"
#include "weakreal/calibration.h"
#include "weakreal/constants.h"
#include "weakreal/errors.h"
#include "weakreal/instrument.h"

namespace weakreal::tools {

namespace {

// Fixture layout:
//   {"version": "weakreal/1", "theta": float, "q": [x, y, z],
//    "preparations": [[x, y, z] x 3],
//    "povm": "tetrahedron" | [{"mu0": float, "mu": [x, y, z]} x 4],
//    "aux": {"a": [...], "b": [...], "c": [...], "d": [...]}}
// "aux" is optional; without it the seeded retry path is used.
struct Fixture {
    double theta = 0;
    BlochVector q;
    Preparations3 preps;
    Povm4 povm;
    std::optional<AuxVectors> aux;
};

Eigen::Vector3d vec3(const Json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 3) {
        throw SchemaError(where, "expected an array of 3 numbers");
    }
    Eigen::Vector3d v;
    for (int i = 0; i < 3; i++) {
        if (!j[i].is_number()) {
            throw SchemaError(where + "/" + std::to_string(i), "expected a number");
        }
        v(i) = j[i].get<double>();
    }
    return v;
}

const Json &field(const Json &j, const char *key, const std::string &where) {
    if (!j.contains(key)) {
        throw SchemaError(where + "/" + key, "missing");
    }
    return j.at(key);
}

Fixture parse_fixture(const Json &j) {
    if (!j.is_object()) {
        throw SchemaError("/", "top level must be an object");
    }
    for (const auto &item : j.items()) {
        const std::string &k = item.key();
        if (k != "version" && k != "theta" && k != "q" && k != "preparations" && k != "povm" && k != "aux") {
            throw SchemaError("/" + k, "unknown key");
        }
    }
    if (j.contains("version") && j.at("version") != Json(std::string(kFormatVersion))) {
        throw SchemaError("/version", "expected \"" + std::string(kFormatVersion) + "\"");
    }
    Fixture f;
    const Json &th = field(j, "theta", "");
    if (!th.is_number()) {
        throw SchemaError("/theta", "expected a number");
    }
    f.theta = th.get<double>();
    f.q = vec3(field(j, "q", ""), "/q");

    const Json &preps = field(j, "preparations", "");
    if (!preps.is_array() || preps.size() != 3) {
        throw SchemaError("/preparations", "expected 3 Bloch vectors");
    }
    for (int i = 0; i < 3; i++) {
        f.preps[i] = vec3(preps[i], "/preparations/" + std::to_string(i));
    }

    const Json &povm = field(j, "povm", "");
    if (povm.is_string()) {
        if (povm != "tetrahedron") {
            throw SchemaError("/povm", "unknown named POVM");
        }
        f.povm = tetrahedron_povm();
    } else if (povm.is_array() && povm.size() == 4) {
        for (int k = 0; k < 4; k++) {
            std::string at = "/povm/" + std::to_string(k);
            const Json &m = povm[k];
            if (!m.is_object()) {
                throw SchemaError(at, "expected an object");
            }
            const Json &mu0 = field(m, "mu0", at);
            if (!mu0.is_number()) {
                throw SchemaError(at + "/mu0", "expected a number");
            }
            f.povm[k] = {mu0.get<double>(), vec3(field(m, "mu", at), at + "/mu")};
        }
    } else {
        throw SchemaError("/povm", "expected \"tetrahedron\" or 4 elements");
    }

    if (j.contains("aux")) {
        const Json &a = j.at("aux");
        if (!a.is_object()) {
            throw SchemaError("/aux", "expected an object");
        }
        AuxVectors aux;
        aux.a = vec3(field(a, "a", "/aux"), "/aux/a");
        aux.b = vec3(field(a, "b", "/aux"), "/aux/b");
        aux.c = vec3(field(a, "c", "/aux"), "/aux/c");
        aux.d = vec3(field(a, "d", "/aux"), "/aux/d");
        f.aux = aux;
    }
    return f;
}

template <typename Vec>
Json array(const Vec &v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); i++) {
        j.push_back(v(i));
    }
    return j;
}

Json rows(const Eigen::Matrix<double, 4, 3> &m) {
    Json j = Json::array();
    for (int k = 0; k < 4; k++) {
        j.push_back(array(Eigen::Vector3d(m.row(k).transpose())));
    }
    return j;
}

struct CalibrateOptions {
    std::string fixture;
    std::uint64_t seed = 0;
    std::string out;
};

void run_calibrate(const CalibrateOptions &opt, Context &ctx) {
    Fixture f;
    try {
        f = parse_fixture(load_json(opt.fixture));
    } catch (const SchemaError &e) {
        if (e.where().rfind(opt.fixture, 0) == 0) {
            throw;
        }
        throw SchemaError(opt.fixture + ":" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
    if (!(std::abs(f.theta) <= kPi / 2)) {
        throw std::invalid_argument("theta must lie in [-pi/2, pi/2]");
    }
    double lambda = std::sin(f.theta);
    ProbMatrices pm;
    try {
        pm = prob_matrices(f.preps, f.povm, f.q, lambda);
    } catch (const std::invalid_argument &e) {
        throw SchemaError(opt.fixture, e.what());
    }
    CalibrationResult r = f.aux ? calibrate(pm, *f.aux) : calibrate(pm, opt.seed);
    ContrastOperators c = contrast_operators(r, f.povm, f.preps);

    double norm_m = spectral_norm(c.mbar);
    double norm_p = spectral_norm(c.pbar);
    double residual = spectral_norm(anticommutator(c.mbar, c.pbar)) / (norm_m * norm_p);
    MeasurementClass cls = classify_measurement(c.mbar / norm_m, c.pbar / norm_p, 1e-8);

    Json j;
    j["version"] = std::string(kFormatVersion);
    j["theta"] = f.theta;
    j["lambda"] = lambda;
    j["w"] = rows(pm.w);
    j["v"] = rows(pm.v);
    j["m_par"] = array(r.m_par);
    j["p_par"] = array(r.p_par);
    j["m_perp"] = array(r.m_perp);
    j["pbar"] = array(r.pbar);
    j["p_perp"] = array(r.p_perp);
    j["m_prime"] = array(r.m_prime);
    j["mu0prime"] = r.mu0prime;
    j["mbar"] = array(r.mbar);
    j["retries"] = r.retries;
    j["bounds"] = {{"rho_bar", {r.bounds.rho_bar.lower, r.bounds.rho_bar.upper}},
                   {"mu_bar", {r.bounds.mu_bar.lower, r.bounds.mu_bar.upper}}};
    j["contrast"] = {{"mu0", c.mu0}, {"mu", array(c.mu)}, {"rho0", c.rho0}, {"rho", array(c.rho)}};
    j["anticommutation_residual"] = residual;
    j["classification"] = std::string(to_string(cls));

    std::string text = j.dump(2) + "\n";
    if (opt.out.empty()) {
        ctx.out << text;
    } else {
        write_text(opt.out, text);
        ctx.out << "classification " << to_string(cls) << "\n";
        ctx.out << "anticommutation_residual " << num(residual) << "\n";
    }
}

}  // namespace

void add_calibrate(CLI::App &app, Context &ctx) {
    auto opt = std::make_shared<CalibrateOptions>();
    auto *cmd = app.add_subcommand("calibrate", "Contrast construction from a calibration fixture");
    cmd->add_option("fixture", opt->fixture, "Calibration fixture JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", opt->seed, "Seed for auxiliary-vector retries")->capture_default_str();
    cmd->add_option("--out", opt->out, "Report JSON (default stdout)");
    cmd->add_flag("--json", "Accepted for uniformity; output is always JSON");
    cmd->callback([opt, &ctx] { run_calibrate(*opt, ctx); });
}

}  // namespace weakreal::tools
