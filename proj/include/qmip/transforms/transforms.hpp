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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmip/protocol/model.hpp"

namespace qmip::transforms {

using protocol::ProtocolInstance;
using protocol::VerifierSpec;

/// A claimed bound with its formula and value.
struct Claim {
    std::string name;     // "c'" or "s'"
    std::string formula;  // human-readable expression
    double value = 0.0;
};

struct TransformReport {
    std::string pass;
    int k_in = 0;
    int m_in = 0;
    int k_out = 0;
    int m_out = 0;
    /// Honest acceptance before and after, when measured.
    std::optional<double> c_in;
    std::optional<double> c_out;
    std::vector<Claim> claims;
    int qubits_in = 0;
    int qubits_out = 0;
    int registers_in = 0;
    int registers_out = 0;
    std::map<std::string, double> values;
    std::vector<std::string> notes;

    const Claim* claim(const std::string& name) const;
};

/// Completeness/soundness parameters of the input system, when known.
struct Bounds {
    std::optional<double> c;
    std::optional<double> s;
};

struct Result {
    ProtocolInstance instance;
    TransformReport report;
};

/// Verifier-side construction only, for no-instances and audits.
struct SpecResult {
    VerifierSpec verifier;
    TransformReport report;
};

// Perfect rewindability: adds a qubit B, passed to prover 1 in its last turn,
// and accepts only if the original test accepts and B reads 1. The honest
// prover rotates B so the best achievable value is exactly 1/2.
Result make_perfectly_rewindable(const ProtocolInstance& in, double p_max, const Bounds& bounds = {});
SpecResult make_perfectly_rewindable(const VerifierSpec& in, const Bounds& bounds = {});

// Perfect completeness by quantum rewinding (3m turns; odd m is padded).
Result rewind_to_perfect_completeness(const ProtocolInstance& in, const Bounds& bounds = {});
SpecResult rewind_to_perfect_completeness(const VerifierSpec& in, const Bounds& bounds = {});

// 4m0+1 turns -> 2m0+1 turns.
Result halve_turns(const ProtocolInstance& in, const Bounds& bounds = {});
SpecResult halve_turns(const VerifierSpec& in, const Bounds& bounds = {});

// Pad to 2^(l+1)+1 turns and halve l times.
Result parallelize_to_three(const ProtocolInstance& in, const Bounds& bounds = {});
SpecResult parallelize_to_three(const VerifierSpec& in, const Bounds& bounds = {});

// Three turns -> three-turn public coin with a one-bit coin.
Result to_public_coin_3turn(const ProtocolInstance& in, const Bounds& bounds = {});
SpecResult to_public_coin_3turn(const VerifierSpec& in, const Bounds& bounds = {});

// Three-turn public coin with k provers -> two turns with k+1 provers.
Result public_coin_to_one_round(const ProtocolInstance& in, const Bounds& bounds = {});
SpecResult public_coin_to_one_round(const VerifierSpec& in, const Bounds& bounds = {});

// Three turns -> two turns with k+1 provers, directly.
Result direct_two_turn(const ProtocolInstance& in, const Bounds& bounds = {});
SpecResult direct_two_turn(const VerifierSpec& in, const Bounds& bounds = {});

// n sequential runs with fresh verifier workspace; accept iff all accept.
Result sequential_repetition(const ProtocolInstance& in, int n, const Bounds& bounds = {});
SpecResult sequential_repetition(const VerifierSpec& in, int n, const Bounds& bounds = {});

// n parallel runs, each with its own group of k provers.
Result parallel_repetition_fresh_provers(const ProtocolInstance& in, int n, const Bounds& bounds = {});
SpecResult parallel_repetition_fresh_provers(const VerifierSpec& in, int n, const Bounds& bounds = {});

/// Pass names accepted by `apply_pass`.
const std::vector<std::string>& pass_names();

struct PassOptions {
    int repetitions = 2;
    /// Required by the rewindable pass; computed from the honest provers when
    /// absent.
    std::optional<double> p_max;
};

Result apply_pass(const std::string& pass, const ProtocolInstance& in, const Bounds& bounds,
                  const PassOptions& options = {});
SpecResult apply_pass(const std::string& pass, const VerifierSpec& in, const Bounds& bounds,
                      const PassOptions& options = {});

/// Acceptance paths of a rewound protocol: p1 (first acceptance check of the
/// rewinding test), p2 (final check of the rewinding test), p3 (invertibility
/// test); overall acceptance is (p1 + p2 + p3) / 2.
struct RewindPaths {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
};
RewindPaths rewind_paths(const ProtocolInstance& rewound);

} // namespace qmip::transforms
