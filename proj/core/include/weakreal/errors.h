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

#ifndef WEAKREAL_ERRORS_H
#define WEAKREAL_ERRORS_H

#include <stdexcept>
#include <string>

namespace weakreal {

/// Input is well formed but carries no usable information (rank-deficient
/// calibration data, a condition that is never met, zero shots).
class DegenerateInput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A calibration denominator vanished for the chosen auxiliary vectors; retry
/// with different ones.
class CalibrationRetry : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Counts file failed schema validation. `where` is a JSON pointer or line:col.
class SchemaError : public std::runtime_error {
   public:
    SchemaError(std::string where, const std::string &what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {
    }
    const std::string &where() const {
        return where_;
    }

   private:
    std::string where_;
};

}  // namespace weakreal

#endif
