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

#ifndef WEAKREAL_TOOLS_IO_H
#define WEAKREAL_TOOLS_IO_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weakreal/protocol.h"
#include "weakreal/sampler.h"

namespace weakreal::tools {

using Json = nlohmann::ordered_json;

/// Round-trip formatting (%.17g). Non-finite values print as nan/inf.
std::string num(double x);

/// Parses "start:stop:count" (inclusive, evenly spaced) or "x1,x2,...".
std::vector<double> parse_grid(const std::string &spec);

/// Reads a JSON file; syntax errors become SchemaError("path:line:col").
Json load_json(const std::filesystem::path &path);

/// Writes text to a file, creating parent directories.
void write_text(const std::filesystem::path &path, const std::string &text);

/// CSV with a "# weakreal/1" first line followed by the header row.
class CsvWriter {
   public:
    CsvWriter(std::ostream &out, const std::vector<std::string> &header);
    CsvWriter &cell(double x);
    CsvWriter &cell(const std::string &s);
    CsvWriter &cell(std::int64_t x);
    void end_row();

   private:
    std::ostream &out_;
    bool first_ = true;
};

/// Run configuration file:
///   {"version": "weakreal/1", "psi": float, "theta": float, "order": "AB"|"BA",
///    "noise_a": {...}, "noise_b": {...},
///    "shots": int, "repetitions": int, "jobs": int, "seed": int}
/// Every key is optional; unknown keys are rejected. Noise objects take
/// epsilon, alpha, beta, eta, omega.
struct RunConfig {
    ProtocolConfig protocol;
    SampleSpec sampling;
};

RunConfig parse_run_config(const Json &j, const std::string &origin);
Json to_json(const NoiseParams &p);
Json to_json(const ExpectationSet &e);

/// Record of one invocation, written next to generated files.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string output_dir;

    Json to_json() const;
};

}  // namespace weakreal::tools

#endif
