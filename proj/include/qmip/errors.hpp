// Copyright 2026 The qmip-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qmip {

/// Malformed input: bad register references, schema violations, non-unitary
/// gates. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A transformation's hypothesis does not hold for the given instance.
/// Maps to CLI exit code 3.
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Configured size limit (qubits, coin branches, operator dimension) exceeded.
/// Maps to CLI exit code 4.
class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An internal numerical self-check failed. Maps to CLI exit code 5.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qmip
