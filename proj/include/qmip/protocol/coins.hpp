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

#include "qmip/protocol/model.hpp"

namespace qmip::protocol {

/// Name of the copy of coin register `coin` kept for prover i (0-based).
std::string coin_copy_name(const std::string& coin, int prover);

/// Replaces every public coin by a unitary preparation: Hadamards on the
/// coin register followed by CNOT copies into one fresh verifier register per
/// recipient. Each copy is handed to its prover at every later prover turn,
/// and coin-indexed prover circuits become circuits controlled on the copy.
/// The acceptance probability is unchanged and the verifier becomes unitary.
VerifierSpec purify_coins(const VerifierSpec& spec);
ProtocolInstance purify_coins(const ProtocolInstance& instance);

bool has_coins(const VerifierSpec& spec);

} // namespace qmip::protocol
