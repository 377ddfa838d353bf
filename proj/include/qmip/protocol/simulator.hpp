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

#include <functional>
#include <string>
#include <vector>

#include "qmip/protocol/model.hpp"

namespace qmip::protocol {

/// One step of a protocol run for a fixed coin outcome.
struct Step {
    enum class Kind { Verifier, Prover, Final };
    Kind kind = Kind::Verifier;
    int position = -1;     // schedule position; -1 for the final circuit
    int prover = -1;       // Prover steps only
    int prover_turn = -1;  // prover-turn ordinal, Prover steps only
    Index history = 0;     // coin bits visible to the prover
    Circuit circuit;       // Verifier / Final steps (coin writes included)
};

/// All steps of the run in which the public coins read `value` (coins in
/// time order, earlier coins in the more significant bits).
struct Branch {
    Index value = 0;
    double weight = 1.0;
    std::vector<Step> steps;
};

inline constexpr int kMaxCoinBits = 16;

/// Enumerates every coin outcome. Throws BudgetError above kMaxCoinBits.
std::vector<Branch> enumerate_branches(const VerifierSpec& spec);

/// Places the shared state on the full layout, every other register |0>.
linalg::StateVector initial_state(const VerifierSpec& spec, const SharedState& shared);

/// Prover circuit lookup; nullptr means identity.
using ProverLookup = std::function<const Circuit*(int prover, int turn, Index history)>;

ProverLookup lookup_for(const std::vector<ProverStrategy>& provers);

/// Applies steps [begin, end) of a branch to `state`.
void run_steps(linalg::StateVector& state, const Branch& branch, std::size_t begin, std::size_t end,
               const ProverLookup& lookup);

/// Applies the inverse of steps [begin, end), last step first.
void run_steps_adjoint(linalg::StateVector& state, const Branch& branch, std::size_t begin, std::size_t end,
                       const ProverLookup& lookup);

/// Full-layout basis index of every shared-state basis index.
std::vector<Index> shared_embedding(const VerifierSpec& spec);

/// Probability that `q` reads 1.
double probability_one(const linalg::StateVector& state, const QubitRef& q);

struct Snapshot {
    Index branch = 0;
    std::size_t step = 0;  // state after this step
    std::string label;
    linalg::StateVector state;
};

struct SimOptions {
    bool snapshots = false;
};

struct SimResult {
    double p_acc = 0.0;
    /// Acceptance probability conditioned on each coin outcome.
    std::vector<double> branch_p;
    std::vector<Snapshot> snapshots;
};

SimResult simulate(const ProtocolInstance& instance, const SimOptions& options = {});
double acceptance_probability(const ProtocolInstance& instance);

std::string step_label(const Step& s);

} // namespace qmip::protocol
