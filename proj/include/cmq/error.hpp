// Copyright 2026 The cmq Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace cmq {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands whose dimensions do not fit together.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A coefficient matrix that does not describe a Hermitian operator.
struct NonHermitian : Error {
    using Error::Error;
};

/// Dense (2^N) oracle asked for a system beyond its size cap.
struct SizeCapExceeded : Error {
    using Error::Error;
};

/// Lowest eigenvalue of a parity sector is (numerically) degenerate.
struct DegenerateGroundState : Error {
    using Error::Error;
};

/// The calibration derivative vanishes, so g cannot be inferred at this point.
struct NonIdentifiable : Error {
    using Error::Error;
};

/// Malformed gate-program text.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace cmq
