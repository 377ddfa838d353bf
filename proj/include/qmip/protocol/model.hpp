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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmip/linalg/state_vector.hpp"
#include "qmip/protocol/circuit.hpp"

namespace qmip::protocol {

inline constexpr int kVerifier = -1;

enum class Role {
    Verifier,  // verifier workspace (including auxiliary and coin registers)
    Message,   // a message register M_i; all of these share one size q_M
    Private,   // a prover's private register; never handed to the verifier
};

/// One named register of a protocol.
///
/// `owner` says who holds the register before the first turn: the verifier or
/// a prover (0-based). A prover-held register that is not private is
/// "prover-supplied": its owner may act on it until it is first listed in a
/// prover turn's `held` set, after which it travels like any message.
/// Registers with `zero_init == false` carry the a priori shared state.
struct Register {
    std::string name;
    int qubits = 1;
    Role role = Role::Verifier;
    int owner = kVerifier;
    bool zero_init = true;

    bool operator==(const Register&) const = default;
};

/// A public coin: at the start of the verifier turn `flips` fair classical
/// coins are written into `reg` (which must still be |0...0>) and broadcast
/// to `recipients`.
struct Coin {
    std::string reg;
    std::vector<int> recipients;

    bool operator==(const Coin&) const = default;
};

struct VerifierTurn {
    Circuit circuit;
    std::optional<Coin> coin;
};

/// During a prover turn prover i holds `held[i]` in addition to its private
/// registers and any prover-supplied registers it still owns. Every held
/// register returns to the verifier at the end of the turn.
struct ProverTurn {
    std::vector<std::vector<std::string>> held;
};

using Turn = std::variant<VerifierTurn, ProverTurn>;

/// The verifier side of a protocol: register layout, turn schedule, final
/// circuit and output qubit. Turns alternate and the last listed turn always
/// belongs to the provers; `final_circuit` is applied afterwards and the
/// output qubit decides acceptance.
struct VerifierSpec {
    int k = 1;
    std::vector<Register> registers;
    std::vector<Turn> turns;
    Circuit final_circuit;
    QubitRef output;

    int m() const { return static_cast<int>(turns.size()); }
    int prover_turn_count() const;
    int verifier_turn_count() const { return m() - prover_turn_count(); }
    /// Schedule positions of the prover turns, in order.
    std::vector<int> prover_turn_positions() const;

    const Register& reg(const std::string& name) const;
    Register& reg(const std::string& name);
    bool has_reg(const std::string& name) const;

    linalg::Layout layout() const;
    /// Layout of the a priori shared state: registers with zero_init false.
    linalg::Layout shared_layout() const;
    /// Registers held by the verifier and initialized to zero before the
    /// first turn. Their all-zero projector is the "initial" projector.
    std::vector<std::string> initial_verifier_registers() const;
    std::vector<std::string> private_registers(int prover) const;

    int total_coin_bits() const;
    bool is_public_coin() const;

    /// Registers of a given role owned by a prover (message registers are
    /// listed in register order).
    std::vector<std::string> registers_with_role(Role role) const;
};

/// Per-prover-turn circuits of one prover. `turns[t][h]` is applied at the
/// prover's t-th turn when the coins it has seen so far read `h` (coins in
/// time order, earlier coins in the more significant bits). An empty outer
/// vector, or a missing turn, means identity.
struct ProverStrategy {
    std::vector<std::vector<Circuit>> turns;

    const Circuit* circuit(int turn, Index history) const;
};

/// The state of the registers with zero_init == false.
using SharedState = linalg::StateVector;

struct ProtocolInstance {
    VerifierSpec verifier;
    std::vector<ProverStrategy> provers;
    SharedState shared;
};

/// Static analysis of who holds what when.
struct TurnAccess {
    /// Registers each prover may act on during a prover turn (indexed by
    /// prover-turn ordinal, then prover).
    std::vector<std::vector<std::vector<std::string>>> prover_access;
    /// Coin bits visible to each prover before each prover turn, as
    /// (coin register) in time order.
    std::vector<std::vector<std::vector<std::string>>> visible_coins;
    /// Registers the verifier holds during each verifier turn (indexed by
    /// schedule position; empty for prover turns) and at the final circuit.
    std::vector<std::vector<std::string>> verifier_access;
    std::vector<std::string> final_access;
    std::vector<std::string> violations;
};

TurnAccess analyze(const VerifierSpec& spec);

/// Every violated structural invariant, in a stable order. Empty means valid.
std::vector<std::string> validate(const VerifierSpec& spec);
std::vector<std::string> validate(const ProtocolInstance& instance);

/// Human-readable name for diagnostics: prover i is 1-based.
std::string prover_name(int prover);

} // namespace qmip::protocol
