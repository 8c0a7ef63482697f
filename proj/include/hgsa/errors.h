// Copyright 2026 The hgsa Authors
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

#ifndef HGSA_ERRORS_H
#define HGSA_ERRORS_H

#include <stdexcept>
#include <string>

namespace hgsa {

/// Base class of every error raised by the simulator.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live on overlapping, missing, or mismatched subsystems.
struct CompositionError : Error {
    using Error::Error;
};

/// An element's local matrix is malformed or not unitary.
struct ElementError : Error {
    using Error::Error;
};

/// An element was bound to a subsystem of the wrong kind.
struct BindingError : Error {
    using Error::Error;
};

struct ArgumentError : Error {
    using Error::Error;
};

/// Amplitude would be pushed past the last time slot.
struct LatticeOverflowError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

/// A photon reached the detectors spread over more than one time slot.
struct TemporalDistinguishabilityError : Error {
    using Error::Error;
};

/// Malformed text input, with 1-based line/column of the offending token.
struct ParseError : Error {
    ParseError(const std::string &message, int line = 0, int column = 0)
        : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message : message),
          line(line),
          column(column) {
    }
    int line;
    int column;
};

}  // namespace hgsa

#endif
