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

#include "cli.h"

#include "commands.h"
#include "weakreal/errors.h"

namespace weakreal::tools {

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Weak-measurement realism toolkit", "weakreal"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "weakreal 1.0.0 (format weakreal/1)");

    Context ctx{out, err};
    add_predict(app, ctx);
    add_sweep(app, ctx);
    add_simulate(app, ctx);
    add_analyze(app, ctx);
    add_calibrate(app, ctx);
    add_continuum(app, ctx);

    // CLI11 consumes the vector from the back.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    } catch (const DegenerateInput &e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        // Schema, I/O and other data errors.
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

}  // namespace weakreal::tools
