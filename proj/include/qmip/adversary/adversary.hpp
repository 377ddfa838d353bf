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

#include <cstdint>
#include <string>
#include <vector>

#include "qmip/protocol/model.hpp"

namespace qmip::adversary {

using protocol::ProverStrategy;
using protocol::SharedState;
using protocol::VerifierSpec;

struct SharedOptimum {
    double p_max = 0.0;
    SharedState state;
};

struct SharedStateOptions {
    /// Largest shared dimension handled by building the operator densely;
    /// bigger spaces use a matrix-free Lanczos iteration.
    std::size_t dense_limit = 256;
    /// Largest shared dimension accepted at all.
    std::size_t max_dimension = std::size_t{1} << 20;
    /// When non-empty, the shared registers are partitioned into these groups
    /// and only product states across groups are considered.
    std::vector<std::vector<std::string>> product_groups;
    /// Starting vector for the Lanczos iteration; random when empty.
    linalg::Vector start;
    /// Lanczos restarts before the best Ritz vector so far is returned.
    int lanczos_restarts = 60;
    /// Krylov dimension per Lanczos restart.
    int krylov_steps = 40;
};

/// Maximizes acceptance over the shared state for fixed prover circuits.
/// Acceptance is <Phi|A|Phi> for a PSD operator A on the shared registers;
/// the result is its top eigenvector, and p_max is re-simulated with it.
SharedOptimum optimal_shared_state(const VerifierSpec& verifier, const std::vector<ProverStrategy>& provers,
                                   const SharedStateOptions& options = {});

struct SeesawConfig {
    int restarts = 10;
    int max_sweeps = 200;
    double convergence_tol = 1e-9;
    /// Private-register qubits for each prover; empty keeps the spec's sizes.
    std::vector<int> prover_dims;
    std::uint64_t seed = 1;
    /// Polar updates per prover slot before moving to the next slot.
    int inner_iterations = 3;
    /// Largest number of qubits one prover may act on in a single turn.
    int max_slot_qubits = 10;
    /// Shared-state step of each sweep. Large spaces get a short warm-started
    /// Lanczos run: the sweep only has to improve the value.
    SharedStateOptions shared = [] {
        SharedStateOptions o;
        o.lanczos_restarts = 3;
        o.krylov_steps = 16;
        return o;
    }();
};

struct AdversaryResult {
    double value = 0.0;
    /// The protocol the strategies refer to: every prover-held register is part
    /// of the shared state and private registers have the configured sizes.
    VerifierSpec verifier;
    std::vector<ProverStrategy> strategies;
    SharedState shared;
    /// Best restart's value after each sweep.
    std::vector<double> trace;
    int best_restart = 0;
    bool converged = false;
    /// Final value of every restart.
    std::vector<double> restart_values;
};

/// The protocol as seen by cheating provers: all prover-held registers start
/// in the shared state and private registers are resized to `prover_dims`.
VerifierSpec adversary_view(const VerifierSpec& verifier, const std::vector<int>& prover_dims = {});

/// One adjustable prover unitary: prover, prover-turn ordinal, coin history,
/// and the qubits it acts on.
struct Slot {
    int prover = 0;
    int turn = 0;
    protocol::Index history = 0;
    std::vector<protocol::QubitRef> qubits;
};

/// Slots of a validated protocol. Prover turns in which a prover receives
/// nothing are left out: such a move commutes with the verifier and can be
/// postponed to the prover's next turn or folded into the shared state. So
/// are moves made before the prover has received any register or coin.
std::vector<Slot> prover_slots(const VerifierSpec& verifier);

/// Strategies placing `unitaries[j]` on `slots[j]`.
std::vector<ProverStrategy> strategies_from(const VerifierSpec& verifier, const std::vector<Slot>& slots,
                                            const std::vector<protocol::Matrix>& unitaries);

/// Environment operator of slot j: acceptance f(U) is a convex quadratic in
/// U_j and Re tr(U^dag G) with G computed at U_j equals f(U_j). Replacing
/// U_j by polar(G) never lowers acceptance.
protocol::Matrix environment(const VerifierSpec& verifier, const std::vector<Slot>& slots,
                             const std::vector<protocol::Matrix>& unitaries, std::size_t j,
                             const SharedState& shared);

AdversaryResult seesaw(const VerifierSpec& verifier, const SeesawConfig& cfg);

/// Exhaustive grid over a fixed small parameterization of every slot:
/// one qubit gets Ry(theta); two qubits (a private one plus one other) get a
/// rotation of the private qubit controlled on the other, then a CNOT from the
/// private qubit into the other. Angles run over [0, 4 pi) with the given step
/// and the shared state is optimized exactly at every grid point. Throws
/// PreconditionError for slots outside this family and BudgetError when the
/// grid has more than `max_points` points.
double brute_force_value(const VerifierSpec& verifier, double resolution, std::size_t max_points = 1u << 22);

} // namespace qmip::adversary
