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
#include "weakreal/continuum.h"

namespace weakreal::tools {

namespace {

// Opens --out or falls back to the context stream.
class Sink {
   public:
    Sink(const std::string &path, std::ostream &fallback) : os_(&fallback) {
        if (!path.empty()) {
            write_text(path, "");
            file_.open(path, std::ios::binary);
            os_ = &file_;
        }
    }
    std::ostream &stream() {
        return *os_;
    }

   private:
    std::ofstream file_;
    std::ostream *os_;
};

struct CatOptions {
    std::string a_grid = "0:2.5:26";
    std::string out;
};

struct WignerOptions {
    double a = 2;
    std::string x_grid = "-4:4:81";
    std::string q_grid = "-4:4:81";
    std::string out;
};

struct FockOptions {
    int n_max = 10;
    std::size_t points = 4096;
    std::string out;
};

void run_cat(const CatOptions &opt, Context &ctx) {
    Sink sink(opt.out, ctx.out);
    CsvWriter csv(sink.stream(), {"a", "ratio", "alpha_second"});
    for (double a : parse_grid(opt.a_grid)) {
        csv.cell(a).cell(wigner_conditional_ratio(a)).cell(cat_alpha_second(a, 0)).end_row();
    }
}

void run_wigner(const WignerOptions &opt, Context &ctx) {
    auto xs = parse_grid(opt.x_grid);
    auto qs = parse_grid(opt.q_grid);
    Sink sink(opt.out, ctx.out);
    CsvWriter csv(sink.stream(), {"x", "q", "W"});
    for (double x : xs) {
        for (double q : qs) {
            csv.cell(x).cell(q).cell(wigner_cat(x, q, opt.a)).end_row();
        }
    }
}

void run_fock(const FockOptions &opt, Context &ctx) {
    if (opt.n_max < 0 || opt.n_max > 12) {
        throw std::invalid_argument("--n-max must lie in [0, 12]");
    }
    Grid1D grid;
    grid.n = opt.points;
    Sink sink(opt.out, ctx.out);
    CsvWriter csv(sink.stream(), {"n", "max_alpha_second", "violates", "min_turan_residual", "skipped"});
    for (int n = 0; n <= opt.n_max; n++) {
        FockReport r = fock_check(n, grid);
        csv.cell(std::int64_t{n}).cell(r.max_alpha_second).cell(std::int64_t{r.violates});
        csv.cell(r.min_turan_residual).cell(static_cast<std::int64_t>(r.skipped)).end_row();
    }
}

}  // namespace

void add_continuum(CLI::App &app, Context &ctx) {
    auto *cmd = app.add_subcommand("continuum", "Continuous-variable reports as CSV");
    cmd->require_subcommand(1);

    auto cat = std::make_shared<CatOptions>();
    auto *c = cmd->add_subcommand("cat-ratio", "Conditional Wigner ratio and alpha''(0) of the cat state vs a");
    c->add_option("--a-grid", cat->a_grid, "start:stop:count or a comma list")->capture_default_str();
    c->add_option("--out", cat->out, "Output CSV (default stdout)");
    c->callback([cat, &ctx] { run_cat(*cat, ctx); });

    auto wig = std::make_shared<WignerOptions>();
    auto *w = cmd->add_subcommand("wigner", "Cat-state Wigner function on an (x, q) grid");
    w->add_option("--a", wig->a, "Cat separation")->capture_default_str();
    w->add_option("--x-grid", wig->x_grid, "start:stop:count or a comma list")->capture_default_str();
    w->add_option("--q-grid", wig->q_grid, "start:stop:count or a comma list")->capture_default_str();
    w->add_option("--out", wig->out, "Output CSV (default stdout)");
    w->callback([wig, &ctx] { run_wigner(*wig, ctx); });

    auto fock = std::make_shared<FockOptions>();
    auto *f = cmd->add_subcommand("fock", "Violation check for Fock states n = 0..n_max");
    f->add_option("--n-max", fock->n_max, "Largest n (<= 12)")->capture_default_str();
    f->add_option("--points", fock->points, "Grid points on [-12, 12]")->capture_default_str()
        ->check(CLI::Range(std::size_t{16}, std::size_t{1} << 20));
    f->add_option("--out", fock->out, "Output CSV (default stdout)");
    f->callback([fock, &ctx] { run_fock(*fock, ctx); });
}

}  // namespace weakreal::tools
