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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "commands.h"
#include "weakreal/constants.h"
#include "weakreal/counts_json.h"
#include "weakreal/errors.h"
#include "weakreal/sampler.h"

namespace weakreal::tools {

namespace {

namespace fs = std::filesystem;

struct Report {
    EstimatedSet est;
    std::optional<Significance> sig;
    std::optional<EstimateWithError> boot;
};

Report build_report(const std::vector<CountsTable> &tables, std::size_t bootstrap, std::uint64_t seed,
                    Context &ctx) {
    Report r{estimate(tables), std::nullopt, std::nullopt};
    try {
        r.sig = violation_significance(r.est);
    } catch (const DegenerateInput &) {
        ctx.err << "warning: lhs is indeterminate (abc c vanishes)\n";
    }
    if (bootstrap > 0 && r.sig) {
        r.boot = bootstrap_sigma(tables, bootstrap, seed);
    }
    return r;
}

void write_estimates(std::ostream &os, const Report &r) {
    CsvWriter csv(os, {"quantity", "value", "sigma"});
    auto row = [&](const std::string &name, double v, double s) { csv.cell(name).cell(v).cell(s).end_row(); };
    const EstimatedSet &e = r.est;
    row("c", e.c.value, e.c.sigma);
    row("a", e.a.value, e.a.sigma);
    row("b", e.b.value, e.b.sigma);
    row("ac", e.ac.value, e.ac.sigma);
    row("bc", e.bc.value, e.bc.sigma);
    row("ab", e.ab.value, e.ab.sigma);
    row("abc", e.abc.value, e.abc.sigma);
    double lam = std::sin(e.theta);
    if (lam != 0) {
        double l2 = lam * lam;
        row("a/lambda", e.a.value / lam, e.a.sigma / std::abs(lam));
        row("b/lambda", e.b.value / lam, e.b.sigma / std::abs(lam));
        row("ac/lambda", e.ac.value / lam, e.ac.sigma / std::abs(lam));
        row("bc/lambda", e.bc.value / lam, e.bc.sigma / std::abs(lam));
        row("ab/lambda^2", e.ab.value / l2, e.ab.sigma / l2);
        row("abc/lambda^2", e.abc.value / l2, e.abc.sigma / l2);
    }
    if (r.sig) {
        row("lhs", r.sig->lhs, r.sig->sigma);
        csv.cell("z_score").cell(r.sig->z_score).cell(std::string()).end_row();
    } else {
        csv.cell("lhs").cell(std::string("indeterminate")).cell(std::string()).end_row();
    }
    if (r.boot) {
        row("lhs_bootstrap", r.boot->value, r.boot->sigma);
    }
}

Json report_json(const Report &r) {
    const EstimatedSet &e = r.est;
    Json j;
    j["version"] = std::string(kFormatVersion);
    j["psi"] = e.psi;
    j["theta"] = e.theta;
    j["jobs"] = e.jobs;
    j["shots_per_setting"] = e.shots_per_setting;
    Json q;
    auto put = [&](const char *k, const EstimateWithError &x) {
        q[k] = Json{{"value", x.value}, {"sigma", x.sigma}};
    };
    put("c", e.c);
    put("a", e.a);
    put("b", e.b);
    put("ac", e.ac);
    put("bc", e.bc);
    put("ab", e.ab);
    put("abc", e.abc);
    j["estimates"] = q;
    j["lhs"] = r.sig ? Json(r.sig->lhs) : Json(nullptr);
    j["sigma"] = r.sig ? Json(r.sig->sigma) : Json(nullptr);
    j["z_score"] = r.sig && std::isfinite(r.sig->z_score) ? Json(r.sig->z_score) : Json(nullptr);
    j["indeterminate"] = !r.sig;
    if (r.boot) {
        j["bootstrap_sigma"] = r.boot->sigma;
    }
    return j;
}

void write_summary(std::ostream &os, const Report &r) {
    os << "# " << kFormatVersion << "\n";
    os << "jobs " << r.est.jobs << "\n";
    os << "shots_per_setting " << r.est.shots_per_setting << "\n";
    if (r.sig) {
        os << "lhs " << num(r.sig->lhs) << "\n";
        os << "sigma " << num(r.sig->sigma) << "\n";
        os << "z_score " << num(r.sig->z_score) << "\n";
    } else {
        os << "lhs indeterminate\n";
    }
    if (r.boot) {
        os << "bootstrap_sigma " << num(r.boot->sigma) << "\n";
    }
}

std::string job_file_name(std::size_t job) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "counts_job%04zu.json", job);
    return buf;
}

struct SimulateOptions {
    ProtocolFlags flags;
    std::optional<std::int64_t> shots;
    std::optional<std::int64_t> reps;
    std::optional<std::int64_t> jobs;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::size_t bootstrap = 0;
    unsigned threads = 0;
    bool json = false;
};

void run_simulate(const SimulateOptions &opt, Context &ctx) {
    RunConfig rc = opt.flags.resolve();
    SampleSpec &spec = rc.sampling;
    if (opt.shots) {
        spec.shots = *opt.shots;
    }
    if (opt.reps) {
        spec.repetitions = *opt.reps;
    }
    if (opt.jobs) {
        spec.jobs = *opt.jobs;
    }
    if (opt.seed) {
        spec.seed = *opt.seed;
    }
    if (spec.shots < 1 || spec.repetitions < 1 || spec.jobs < 1) {
        throw std::invalid_argument("shots, reps and jobs must be positive");
    }

    std::vector<CountsTable> tables = sample_counts(rc.protocol, spec, opt.threads);
    Report r = build_report(tables, opt.bootstrap, spec.seed, ctx);

    if (!opt.out.empty()) {
        fs::path dir(opt.out);
        fs::create_directories(dir);
        for (std::size_t k = 0; k < tables.size(); k++) {
            save_counts_file(dir / job_file_name(k), tables[k]);
        }
        std::ostringstream csv;
        write_estimates(csv, r);
        write_text(dir / "estimates.csv", csv.str());
        RunManifest m{"simulate", opt.flags.config, spec.seed, dir.string()};
        write_text(dir / "manifest.json", m.to_json().dump(2) + "\n");
    }
    if (opt.json) {
        Json j = report_json(r);
        j["seed"] = spec.seed;
        ctx.out << j.dump(2) << "\n";
    } else {
        write_summary(ctx.out, r);
    }
}

struct AnalyzeOptions {
    std::vector<std::string> files;
    std::string out;
    std::size_t bootstrap = 0;
    std::uint64_t seed = 0;
    bool json = false;
};

void run_analyze(const AnalyzeOptions &opt, Context &ctx) {
    std::vector<CountsTable> tables;
    for (const auto &f : opt.files) {
        CountsTable t = load_counts_file(f);
        if (t.runs.empty()) {
            throw SchemaError(f + ":/runs", "runs list is empty");
        }
        tables.push_back(std::move(t));
    }
    Report r = build_report(tables, opt.bootstrap, opt.seed, ctx);

    if (!opt.out.empty()) {
        std::ostringstream csv;
        write_estimates(csv, r);
        write_text(opt.out, csv.str());
    }
    if (opt.json) {
        ctx.out << report_json(r).dump(2) << "\n";
    } else if (opt.out.empty()) {
        write_estimates(ctx.out, r);
    } else {
        write_summary(ctx.out, r);
    }
}

}  // namespace

void add_simulate(CLI::App &app, Context &ctx) {
    auto opt = std::make_shared<SimulateOptions>();
    auto *cmd = app.add_subcommand("simulate", "Sample counts for all sign settings and estimate the lhs");
    opt->flags.attach(*cmd);
    cmd->add_option("--shots", opt->shots, "Shots per run");
    cmd->add_option("--reps", opt->reps, "Repetitions per setting and job");
    cmd->add_option("--jobs", opt->jobs, "Jobs");
    cmd->add_option("--seed", opt->seed, "RNG seed");
    cmd->add_option("--out", opt->out, "Directory for counts files, estimates.csv and manifest.json");
    cmd->add_option("--bootstrap", opt->bootstrap, "Bootstrap resamples (0 = off, else >= 100)");
    cmd->add_option("--threads", opt->threads, "Worker threads, 0 = automatic");
    cmd->add_flag("--json", opt->json, "Machine-readable summary");
    cmd->callback([opt, &ctx] { run_simulate(*opt, ctx); });
}

void add_analyze(CLI::App &app, Context &ctx) {
    auto opt = std::make_shared<AnalyzeOptions>();
    auto *cmd = app.add_subcommand("analyze", "Estimate correlations and significance from counts files");
    cmd->add_option("files", opt->files, "Counts JSON files")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opt->out, "Estimates CSV (default stdout)");
    cmd->add_option("--bootstrap", opt->bootstrap, "Bootstrap resamples (0 = off, else >= 100)");
    cmd->add_option("--seed", opt->seed, "Bootstrap seed")->capture_default_str();
    cmd->add_flag("--json", opt->json, "Machine-readable summary");
    cmd->callback([opt, &ctx] { run_analyze(*opt, ctx); });
}

}  // namespace weakreal::tools
