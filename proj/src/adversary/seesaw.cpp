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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "qmip/adversary/adversary.hpp"
#include "qmip/errors.hpp"
#include "qmip/linalg/operators.hpp"
#include "qmip/protocol/simulator.hpp"

namespace qmip::adversary {

using linalg::Matrix;
using protocol::Circuit;
using protocol::Index;
using protocol::Role;

VerifierSpec adversary_view(const VerifierSpec& verifier, const std::vector<int>& prover_dims) {
    VerifierSpec out = verifier;
    std::vector<protocol::Register> regs;
    std::vector<bool> sized(static_cast<std::size_t>(verifier.k), false);
    for (auto r : verifier.registers) {
        if (r.owner >= 0) {
            r.zero_init = false;
        }
        if (r.role == Role::Private && !prover_dims.empty()) {
            const auto i = static_cast<std::size_t>(r.owner);
            if (i >= prover_dims.size()) {
                throw ValidationError("prover dimensions given for " + std::to_string(prover_dims.size()) +
                                      " provers, protocol has " + std::to_string(verifier.k));
            }
            if (sized[i] || prover_dims[i] == 0) {
                continue;
            }
            r.qubits = prover_dims[i];
            sized[i] = true;
        }
        regs.push_back(std::move(r));
    }
    // Provers without a private register get one when asked for.
    for (std::size_t i = 0; i < prover_dims.size() && i < sized.size(); ++i) {
        if (!sized[i] && prover_dims[i] > 0) {
            regs.push_back({"P_" + std::to_string(i + 1), prover_dims[i], Role::Private, static_cast<int>(i), false});
        }
    }
    out.registers = std::move(regs);
    return out;
}

std::vector<Slot> prover_slots(const VerifierSpec& verifier) {
    const auto acc = protocol::analyze(verifier);
    if (!acc.violations.empty()) {
        throw ValidationError(acc.violations.front());
    }
    const auto layout = verifier.layout();
    std::vector<Slot> out;
    std::set<std::string> at_verifier;
    for (const auto& r : verifier.registers) {
        if (r.owner == protocol::kVerifier) {
            at_verifier.insert(r.name);
        }
    }
    std::vector<bool> received(static_cast<std::size_t>(verifier.k), false);
    int t = 0;
    for (const auto& turn : verifier.turns) {
        const auto* pt = std::get_if<protocol::ProverTurn>(&turn);
        if (!pt) {
            continue;
        }
        for (int i = 0; i < verifier.k; ++i) {
            const auto& held = pt->held[static_cast<std::size_t>(i)];
            for (const auto& r : held) {
                if (at_verifier.contains(r)) {
                    received[static_cast<std::size_t>(i)] = true;
                }
            }
            int bits = 0;
            for (const auto& c : acc.visible_coins[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)]) {
                bits += verifier.reg(c).qubits;
            }
            // Before anything reaches the prover its move only touches shared
            // registers and is folded into the shared state.
            if (held.empty() || (bits == 0 && !received[static_cast<std::size_t>(i)])) {
                continue;
            }
            std::vector<protocol::QubitRef> qubits;
            for (const auto& r : acc.prover_access[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)]) {
                for (int q = 0; q < verifier.reg(r).qubits; ++q) {
                    qubits.push_back({r, q});
                }
            }
            for (Index h = 0; h < (Index{1} << bits); ++h) {
                out.push_back({i, t, h, qubits});
            }
        }
        for (const auto& h : pt->held) {
            at_verifier.insert(h.begin(), h.end());
        }
        ++t;
    }
    return out;
}

std::vector<ProverStrategy> strategies_from(const VerifierSpec& verifier, const std::vector<Slot>& slots,
                                            const std::vector<Matrix>& unitaries) {
    const auto acc = protocol::analyze(verifier);
    std::vector<ProverStrategy> out(static_cast<std::size_t>(verifier.k));
    for (auto& s : out) {
        s.turns.resize(static_cast<std::size_t>(verifier.prover_turn_count()));
    }
    for (std::size_t j = 0; j < slots.size(); ++j) {
        const auto& slot = slots[j];
        int bits = 0;
        for (const auto& c :
             acc.visible_coins[static_cast<std::size_t>(slot.turn)][static_cast<std::size_t>(slot.prover)]) {
            bits += verifier.reg(c).qubits;
        }
        auto& options = out[static_cast<std::size_t>(slot.prover)].turns[static_cast<std::size_t>(slot.turn)];
        options.resize(std::size_t{1} << bits);
        options[slot.history] = Circuit{protocol::gates::unitary(unitaries[j], slot.qubits)};
    }
    return out;
}

namespace {

/// Gathers the amplitudes of `v` into a (2^|bits| x rest) matrix.
Matrix gather(const linalg::Vector& v, const std::vector<int>& bits, const std::vector<int>& rest) {
    const auto rows = Eigen::Index{1} << bits.size();
    const auto cols = Eigen::Index{1} << rest.size();
    Matrix out(rows, cols);
    for (Index i = 0; i < static_cast<Index>(v.size()); ++i) {
        Index r = 0;
        for (std::size_t j = 0; j < bits.size(); ++j) {
            r |= ((i >> bits[j]) & 1U) << j;
        }
        Index c = 0;
        for (std::size_t j = 0; j < rest.size(); ++j) {
            c |= ((i >> rest[j]) & 1U) << j;
        }
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[static_cast<Eigen::Index>(i)];
    }
    return out;
}

} // namespace

Matrix environment(const VerifierSpec& verifier, const std::vector<Slot>& slots, const std::vector<Matrix>& unitaries,
                   std::size_t j, const SharedState& shared) {
    const auto& slot = slots[j];
    const auto strategies = strategies_from(verifier, slots, unitaries);
    const auto lookup = protocol::lookup_for(strategies);
    const auto init = protocol::initial_state(verifier, shared);
    const auto& layout = init.layout();
    const auto bits = layout.global(slot.qubits);
    std::vector<int> rest;
    for (int b = 0; b < layout.total_qubits(); ++b) {
        if (std::find(bits.begin(), bits.end(), b) == bits.end()) {
            rest.push_back(b);
        }
    }
    const Index out_mask = Index{1} << layout.global(verifier.output);
    const auto d = Eigen::Index{1} << bits.size();
    Matrix g = Matrix::Zero(d, d);
    for (const auto& br : protocol::enumerate_branches(verifier)) {
        std::size_t at = br.steps.size();
        for (std::size_t s = 0; s < br.steps.size(); ++s) {
            const auto& st = br.steps[s];
            if (st.kind == protocol::Step::Kind::Prover && st.prover == slot.prover && st.prover_turn == slot.turn &&
                st.history == slot.history) {
                at = s;
                break;
            }
        }
        if (at == br.steps.size()) {
            continue;
        }
        auto chi = init;
        protocol::run_steps(chi, br, 0, at, lookup);
        auto eta = chi;
        protocol::run_steps(eta, br, at, br.steps.size(), lookup);
        auto& a = eta.amplitudes();
        for (Index i = 0; i < eta.size(); ++i) {
            if (!(i & out_mask)) {
                a[static_cast<Eigen::Index>(i)] = 0.0;
            }
        }
        protocol::run_steps_adjoint(eta, br, at + 1, br.steps.size(), lookup);
        g += br.weight * gather(eta.amplitudes(), bits, rest) * gather(chi.amplitudes(), bits, rest).adjoint();
    }
    return g;
}

AdversaryResult seesaw(const VerifierSpec& verifier, const SeesawConfig& cfg) {
    if (cfg.restarts < 1) {
        throw ValidationError("see-saw needs at least one restart");
    }
    if (!(cfg.convergence_tol > 0.0)) {
        throw ValidationError("see-saw convergence tolerance must be positive");
    }
    const auto view = adversary_view(verifier, cfg.prover_dims);
    const auto slots = prover_slots(view);
    for (const auto& s : slots) {
        if (static_cast<int>(s.qubits.size()) > cfg.max_slot_qubits) {
            throw BudgetError(protocol::prover_name(s.prover) + " acts on " + std::to_string(s.qubits.size()) +
                              " qubits in one turn; the see-saw limit is " + std::to_string(cfg.max_slot_qubits));
        }
    }

    AdversaryResult best;
    best.value = -1.0;
    best.verifier = view;
    for (int r = 0; r < cfg.restarts; ++r) {
        std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(r)};
        std::mt19937_64 rng(seq);
        std::vector<Matrix> us;
        for (const auto& s : slots) {
            us.push_back(linalg::haar_unitary(Eigen::Index{1} << s.qubits.size(), rng));
        }
        auto opt = optimal_shared_state(view, strategies_from(view, slots, us), cfg.shared);
        std::vector<double> trace;
        bool converged = false;
        for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
            for (std::size_t j = 0; j < slots.size(); ++j) {
                for (int it = 0; it < std::max(1, cfg.inner_iterations); ++it) {
                    us[j] = linalg::polar_unitary(environment(view, slots, us, j, opt.state));
                }
            }
            auto warm = cfg.shared;
            warm.start = opt.state.amplitudes();
            opt = optimal_shared_state(view, strategies_from(view, slots, us), warm);
            trace.push_back(opt.p_max);
            if (opt.p_max >= 1.0 - 1e-12 ||
                (trace.size() > 1 && trace.back() - trace[trace.size() - 2] < cfg.convergence_tol)) {
                converged = true;
                break;
            }
        }
        if (trace.empty()) {
            trace.push_back(opt.p_max);
        }
        best.restart_values.push_back(opt.p_max);
        if (opt.p_max > best.value) {
            best.value = opt.p_max;
            best.strategies = strategies_from(view, slots, us);
            best.shared = opt.state;
            best.trace = trace;
            best.best_restart = r;
            best.converged = converged;
        }
    }
    return best;
}

} // namespace qmip::adversary
