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

#ifndef WEAKREAL_TOOLS_COMMANDS_H
#define WEAKREAL_TOOLS_COMMANDS_H

#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "io.h"

namespace weakreal::tools {

struct Context {
    std::ostream &out;
    std::ostream &err;
};

/// Config file (if any) with explicitly given flags applied on top.
struct ProtocolFlags {
    std::string config;
    std::optional<double> psi;
    std::optional<double> theta;
    std::optional<std::string> order;

    void attach(CLI::App &cmd);
    RunConfig resolve() const;
};

// Each registers one subcommand whose callback writes to the context streams
// and throws on failure.
void add_predict(CLI::App &app, Context &ctx);
void add_sweep(CLI::App &app, Context &ctx);
void add_simulate(CLI::App &app, Context &ctx);
void add_analyze(CLI::App &app, Context &ctx);
void add_calibrate(CLI::App &app, Context &ctx);
void add_continuum(CLI::App &app, Context &ctx);

}  // namespace weakreal::tools

#endif
