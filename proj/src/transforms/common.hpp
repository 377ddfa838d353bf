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

#include <string>
#include <vector>

#include "qmip/protocol/simulator.hpp"
#include "qmip/transforms/transforms.hpp"

namespace qmip::transforms::detail {

using namespace protocol;

inline constexpr double kIdentityTol = 1e-9;

std::string fresh_name(const VerifierSpec& spec, const std::string& base);

Register verifier_zero(std::string name, int qubits = 1);

/// Registers a prover may have to act on at each prover turn, private
/// registers excluded: what it is handed plus what it still owns.
/// Indexed by prover-turn ordinal, then prover.
std::vector<std::vector<std::vector<std::string>>> reach(const VerifierSpec& spec);

/// The held sets, by prover-turn ordinal.
std::vector<std::vector<std::vector<std::string>>> held_sets(const VerifierSpec& spec);

/// Circuits of the verifier turns in schedule order. Requires a coinless spec.
std::vector<Circuit> verifier_circuits(const VerifierSpec& spec);

/// The honest circuit of a coinless instance (identity when absent).
Circuit honest_circuit(const ProtocolInstance& in, int prover, int turn);

/// Joint state after schedule position `position` (0-based, inclusive); no
/// coin may be tossed up to there. -1 gives the initial state.
linalg::StateVector state_after(const ProtocolInstance& in, int position);

/// Amplitudes of `full` on the registers of `sub`; every other register must
/// be |0> (NumericalError otherwise).
linalg::StateVector restrict_to(const linalg::StateVector& full, const linalg::Layout& sub);

/// Qubits of the listed registers, register order preserved.
std::vector<QubitRef> qubits_of(const VerifierSpec& spec, const std::vector<std::string>& regs);

/// Union preserving first-seen order.
std::vector<std::string> merge(const std::vector<std::string>& a, const std::vector<std::string>& b);

bool contains(const std::vector<std::string>& v, const std::string& s);

void fill_in(TransformReport& r, const VerifierSpec& in, const VerifierSpec& out);

/// Throws ValidationError listing the violations of a constructed spec.
void ensure_valid(const VerifierSpec& spec, const std::string& pass);
void ensure_valid(const ProtocolInstance& instance, const std::string& pass);

/// Honest acceptance of input and output, recorded on the report.
void measure(TransformReport& r, const ProtocolInstance& in, const ProtocolInstance& out);

} // namespace qmip::transforms::detail
