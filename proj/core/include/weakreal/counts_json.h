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

#ifndef WEAKREAL_COUNTS_JSON_H
#define WEAKREAL_COUNTS_JSON_H

#include <filesystem>
#include <string>
#include <string_view>

#include "weakreal/sampler.h"

namespace weakreal {

// Counts file layout:
//
//   {"version": "weakreal/1",
//    "meta": {"psi": float, "theta": float, "order": "AB" | "BA", "shots": int, "source": string},
//    "runs": [{"sign_a": 1 | -1, "sign_b": 1 | -1, "counts": {"abc": int, ...}}, ...]}
//
// Unknown keys are rejected. Writing is canonical: two-space indent, keys in
// the order above, counts keys sorted, trailing newline.

std::string write_counts_json(const CountsTable &table);

/// Throws SchemaError; where() is "line:col" for syntax errors and a JSON
/// pointer for schema violations.
CountsTable read_counts_json(std::string_view text);

CountsTable load_counts_file(const std::filesystem::path &path);
void save_counts_file(const std::filesystem::path &path, const CountsTable &table);

}  // namespace weakreal

#endif
