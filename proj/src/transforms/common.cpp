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

#include "common.hpp"

#include <algorithm>
#include <cmath>

#include "qmip/errors.hpp"

namespace qmip::transforms::detail {

std::string fresh_name(const VerifierSpec& spec, const std::string& base) {
    if (!spec.has_reg(base)) {
        return base;
    }
    for (int n = 2;; ++n) {
        const auto name = base + "_" + std::to_string(n);
        if (!spec.has_reg(name)) {
            return name;
        }
    }
}

Register verifier_zero(std::string name, int qubits) {
    return {std::move(name), qubits, Role::Verifier, kVerifier, true};
}

std::vector<std::vector<std::vector<std::string>>> reach(const VerifierSpec& spec) {
    auto access = analyze(spec).prover_access;
    for (auto& turn : access) {
        for (std::size_t i = 0; i < turn.size(); ++i) {
            const auto priv = spec.private_registers(static_cast<int>(i));
            std::erase_if(turn[i], [&](const std::string& r) { return contains(priv, r); });
        }
    }
    return access;
}

std::vector<std::vector<std::vector<std::string>>> held_sets(const VerifierSpec& spec) {
    std::vector<std::vector<std::vector<std::string>>> out;
    for (const auto& t : spec.turns) {
        if (const auto* p = std::get_if<ProverTurn>(&t)) {
            out.push_back(p->held);
        }
    }
    return out;
}

std::vector<Circuit> verifier_circuits(const VerifierSpec& spec) {
    std::vector<Circuit> out;
    for (const auto& t : spec.turns) {
        if (const auto* v = std::get_if<VerifierTurn>(&t)) {
            if (v->coin) {
                throw ValidationError("internal: verifier circuits requested for a spec with coins");
            }
            out.push_back(v->circuit);
        }
    }
    return out;
}

Circuit honest_circuit(const ProtocolInstance& in, int prover, int turn) {
    if (prover < 0 || static_cast<std::size_t>(prover) >= in.provers.size()) {
        return {};
    }
    const auto& turns = in.provers[static_cast<std::size_t>(prover)].turns;
    if (turn < 0 || static_cast<std::size_t>(turn) >= turns.size()) {
        return {};
    }
    const auto& options = turns[static_cast<std::size_t>(turn)];
    if (options.empty()) {
        return {};
    }
    if (options.size() > 1) {
        throw ValidationError("internal: coin-dependent prover circuit in a coinless protocol");
    }
    return options.front();
}

linalg::StateVector state_after(const ProtocolInstance& in, int position) {
    for (int p = 0; p <= position && p < in.verifier.m(); ++p) {
        const auto* v = std::get_if<VerifierTurn>(&in.verifier.turns[static_cast<std::size_t>(p)]);
        if (v && v->coin) {
            throw ValidationError("internal: snapshot requested after a coin turn");
        }
    }
    const auto br = enumerate_branches(in.verifier).front();
    auto state = initial_state(in.verifier, in.shared);
    std::size_t end = 0;
    while (end < br.steps.size() && br.steps[end].kind != Step::Kind::Final && br.steps[end].position <= position) {
        ++end;
    }
    run_steps(state, br, 0, end, lookup_for(in.provers));
    return state;
}

linalg::StateVector restrict_to(const linalg::StateVector& full, const linalg::Layout& sub) {
    const auto& fl = full.layout();
    std::vector<std::pair<int, int>> bit_map;
    for (const auto& slot : sub.slots()) {
        for (int q = 0; q < slot.qubits; ++q) {
            bit_map.emplace_back(sub.offset(slot.name) + q, fl.offset(slot.name) + q);
        }
    }
    linalg::Vector amps(static_cast<Eigen::Index>(sub.dimension()));
    for (Index i = 0; i < sub.dimension(); ++i) {
        Index f = 0;
        for (const auto& [from, to] : bit_map) {
            f |= ((i >> from) & 1U) << to;
        }
        amps[static_cast<Eigen::Index>(i)] = full[f];
    }
    const double lost = std::abs(full.norm() - amps.norm());
    if (lost > 1e-9) {
        throw NumericalError("snapshot has weight " + std::to_string(lost) +
                             " outside the registers it is restricted to");
    }
    return linalg::StateVector(sub, std::move(amps), true);
}

std::vector<QubitRef> qubits_of(const VerifierSpec& spec, const std::vector<std::string>& regs) {
    std::vector<QubitRef> out;
    for (const auto& r : regs) {
        for (int q = 0; q < spec.reg(r).qubits; ++q) {
            out.push_back({r, q});
        }
    }
    return out;
}

std::vector<std::string> merge(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    auto out = a;
    for (const auto& s : b) {
        if (!contains(out, s)) {
            out.push_back(s);
        }
    }
    return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

void fill_in(TransformReport& r, const VerifierSpec& in, const VerifierSpec& out) {
    r.k_in = in.k;
    r.m_in = in.m();
    r.k_out = out.k;
    r.m_out = out.m();
    r.qubits_in = in.layout().total_qubits();
    r.qubits_out = out.layout().total_qubits();
    r.registers_in = static_cast<int>(in.registers.size());
    r.registers_out = static_cast<int>(out.registers.size());
}

void ensure_valid(const VerifierSpec& spec, const std::string& pass) {
    const auto v = validate(spec);
    if (!v.empty()) {
        throw ValidationError(pass + " produced an invalid protocol: " + v.front());
    }
}

void ensure_valid(const ProtocolInstance& instance, const std::string& pass) {
    const auto v = validate(instance);
    if (!v.empty()) {
        throw ValidationError(pass + " produced an invalid protocol: " + v.front());
    }
}

void measure(TransformReport& r, const ProtocolInstance& in, const ProtocolInstance& out) {
    r.c_in = acceptance_probability(in);
    r.c_out = acceptance_probability(out);
}

} // namespace qmip::transforms::detail
