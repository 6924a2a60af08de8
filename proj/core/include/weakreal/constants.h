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

#ifndef WEAKREAL_CONSTANTS_H
#define WEAKREAL_CONSTANTS_H

#include <cstddef>
#include <numbers>
#include <string_view>

namespace weakreal {

/// Format tag written into every file the toolkit emits.
inline constexpr std::string_view kFormatVersion = "weakreal/1";

inline constexpr double kPi = std::numbers::pi;

/// Numerical tolerances shared by every module.
namespace tol {
/// Hermiticity and unit trace of a prepared density matrix.
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
/// Smallest eigenvalue still accepted as positive semidefinite.
inline constexpr double kPsdEigen = -1e-10;
/// Unitarity and involution checks on gate matrices.
inline constexpr double kUnitary = 1e-10;
/// Kraus completeness of an instrument.
inline constexpr double kCompleteness = 1e-10;
/// Denominator of the realism ratio below which it is reported indeterminate.
inline constexpr double kIndeterminate = 1e-14;
/// Rank-2 gate for calibration probability matrices (relative singular value).
inline constexpr double kRank = 1e-8;
/// Relative norm below which an intermediate calibration vector is degenerate.
inline constexpr double kDegenerate = 1e-10;
}  // namespace tol

/// Dense simulation is capped at this many qubits.
inline constexpr std::size_t kMaxQubits = 10;

}  // namespace weakreal

#endif
