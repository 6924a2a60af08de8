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

#include <fstream>
#include <memory>

#include "commands.h"
#include "weakreal/constants.h"
#include "weakreal/protocol.h"

namespace weakreal::tools {

void ProtocolFlags::attach(CLI::App &cmd) {
    cmd.add_option("--config", config, "Run configuration JSON")->check(CLI::ExistingFile);
    cmd.add_option("--psi", psi, "System angle psi in radians");
    cmd.add_option("--theta", theta, "Coupling angle theta in radians (lambda = sin theta)");
    cmd.add_option("--order", order, "Meter order")->check(CLI::IsMember({"AB", "BA"}));
}

RunConfig ProtocolFlags::resolve() const {
    RunConfig rc;
    if (!config.empty()) {
        rc = parse_run_config(load_json(config), config);
    }
    if (psi) {
        rc.protocol.psi = *psi;
    }
    if (theta) {
        rc.protocol.theta = *theta;
    }
    if (order) {
        rc.protocol.order = parse_order(*order);
    }
    rc.protocol.validate();
    return rc;
}

namespace {

struct PredictOptions {
    ProtocolFlags flags;
    bool json = false;
};

void run_predict(const PredictOptions &opt, Context &ctx) {
    ProtocolConfig cfg = opt.flags.resolve().protocol;
    ViolationReport rep = predict(cfg);
    const ExpectationSet &e = rep.components;

    if (rep.indeterminate()) {
        ctx.err << "warning: lhs is indeterminate (0/0) at psi=" << num(cfg.psi) << " theta=" << num(cfg.theta)
                << "\n";
    }

    if (opt.json) {
        Json j;
        j["version"] = std::string(kFormatVersion);
        j["psi"] = cfg.psi;
        j["theta"] = cfg.theta;
        j["lambda"] = cfg.lambda();
        j["order"] = std::string(to_string(cfg.order));
        j["mode"] = e.limit ? "limit" : "exact";
        if (cfg.noise_a) {
            j["noise_a"] = to_json(*cfg.noise_a);
        }
        if (cfg.noise_b) {
            j["noise_b"] = to_json(*cfg.noise_b);
        }
        j["components"] = to_json(e);
        j["lhs"] = rep.lhs ? Json(*rep.lhs) : Json(nullptr);
        j["indeterminate"] = rep.indeterminate();
        j["classical_bound"] = rep.classical_bound;
        j["violation"] = rep.lhs.has_value() && *rep.lhs > rep.classical_bound;
        ctx.out << j.dump(2) << "\n";
        return;
    }

    auto line = [&](const char *k, const std::string &v) { ctx.out << k << " " << v << "\n"; };
    ctx.out << "# " << kFormatVersion << "\n";
    line("psi", num(cfg.psi));
    line("theta", num(cfg.theta));
    line("lambda", num(cfg.lambda()));
    line("order", std::string(to_string(cfg.order)));
    line("mode", e.limit ? "limit" : "exact");
    line("c", num(e.c));
    line("a", num(e.a));
    line("b", num(e.b));
    line("ac", num(e.ac));
    line("bc", num(e.bc));
    line("ab", num(e.ab));
    line("abc", num(e.abc));
    line("lhs", rep.lhs ? num(*rep.lhs) : "indeterminate");
    line("classical_bound", num(rep.classical_bound));
    line("violation", rep.lhs && *rep.lhs > rep.classical_bound ? "yes" : "no");
}

struct SweepOptions {
    std::string psi_grid;
    std::string theta_grid = "0";
    std::string out;
    unsigned threads = 0;
};

void run_sweep(const SweepOptions &opt, Context &ctx) {
    std::vector<double> psi = parse_grid(opt.psi_grid);
    std::vector<double> theta = parse_grid(opt.theta_grid);
    std::vector<SweepRow> rows = sweep(psi, theta, opt.threads);

    std::ofstream file;
    std::ostream *os = &ctx.out;
    if (!opt.out.empty()) {
        write_text(opt.out, "");
        file.open(opt.out, std::ios::binary);
        os = &file;
    }
    CsvWriter csv(*os, {"psi", "lambda", "lhs", "indeterminate"});
    std::size_t indeterminate = 0;
    for (const auto &r : rows) {
        csv.cell(r.psi).cell(r.lambda).cell(r.lhs ? num(*r.lhs) : std::string()).cell(std::int64_t{!r.lhs});
        csv.end_row();
        indeterminate += !r.lhs;
    }
    if (indeterminate > 0) {
        ctx.err << "warning: " << indeterminate << " of " << rows.size() << " rows are indeterminate\n";
    }
}

}  // namespace

void add_predict(CLI::App &app, Context &ctx) {
    auto opt = std::make_shared<PredictOptions>();
    auto *cmd = app.add_subcommand("predict", "Exact or weak-limit prediction of the correlations and lhs");
    opt->flags.attach(*cmd);
    cmd->add_flag("--json", opt->json, "Machine-readable output");
    cmd->callback([opt, &ctx] { run_predict(*opt, ctx); });
}

void add_sweep(CLI::App &app, Context &ctx) {
    auto opt = std::make_shared<SweepOptions>();
    auto *cmd = app.add_subcommand("sweep", "lhs over a (psi, theta) grid as CSV");
    cmd->add_option("--psi-grid", opt->psi_grid, "start:stop:count or a comma list")->required();
    cmd->add_option("--theta-grid", opt->theta_grid, "start:stop:count or a comma list")->capture_default_str();
    cmd->add_option("--out", opt->out, "Output CSV (default stdout)");
    cmd->add_option("--threads", opt->threads, "Worker threads, 0 = automatic")->capture_default_str();
    cmd->callback([opt, &ctx] { run_sweep(*opt, ctx); });
}

}  // namespace weakreal::tools
