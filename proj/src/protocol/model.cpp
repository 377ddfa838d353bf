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

#include "qmip/protocol/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "qmip/errors.hpp"
#include "qmip/linalg/operators.hpp"

namespace qmip::protocol {

std::string prover_name(int prover) { return "prover " + std::to_string(prover + 1); }

int VerifierSpec::prover_turn_count() const {
    return static_cast<int>(std::count_if(turns.begin(), turns.end(), [](const Turn& t) {
        return std::holds_alternative<ProverTurn>(t);
    }));
}

std::vector<int> VerifierSpec::prover_turn_positions() const {
    std::vector<int> out;
    for (int p = 0; p < m(); ++p) {
        if (std::holds_alternative<ProverTurn>(turns[static_cast<std::size_t>(p)])) {
            out.push_back(p);
        }
    }
    return out;
}

const Register& VerifierSpec::reg(const std::string& name) const {
    for (const auto& r : registers) {
        if (r.name == name) {
            return r;
        }
    }
    throw ValidationError("unknown register " + name);
}

Register& VerifierSpec::reg(const std::string& name) {
    return const_cast<Register&>(static_cast<const VerifierSpec&>(*this).reg(name));
}

bool VerifierSpec::has_reg(const std::string& name) const {
    return std::any_of(registers.begin(), registers.end(), [&](const Register& r) { return r.name == name; });
}

linalg::Layout VerifierSpec::layout() const {
    std::vector<linalg::RegisterSlot> slots;
    for (const auto& r : registers) {
        slots.push_back({r.name, r.qubits});
    }
    return linalg::Layout(std::move(slots));
}

linalg::Layout VerifierSpec::shared_layout() const {
    std::vector<linalg::RegisterSlot> slots;
    for (const auto& r : registers) {
        if (!r.zero_init) {
            slots.push_back({r.name, r.qubits});
        }
    }
    return linalg::Layout(std::move(slots));
}

std::vector<std::string> VerifierSpec::initial_verifier_registers() const {
    std::vector<std::string> out;
    for (const auto& r : registers) {
        if (r.owner == kVerifier && r.zero_init) {
            out.push_back(r.name);
        }
    }
    return out;
}

std::vector<std::string> VerifierSpec::private_registers(int prover) const {
    std::vector<std::string> out;
    for (const auto& r : registers) {
        if (r.role == Role::Private && r.owner == prover) {
            out.push_back(r.name);
        }
    }
    return out;
}

std::vector<std::string> VerifierSpec::registers_with_role(Role role) const {
    std::vector<std::string> out;
    for (const auto& r : registers) {
        if (r.role == role) {
            out.push_back(r.name);
        }
    }
    return out;
}

int VerifierSpec::total_coin_bits() const {
    int bits = 0;
    for (const auto& t : turns) {
        if (const auto* v = std::get_if<VerifierTurn>(&t); v && v->coin) {
            bits += has_reg(v->coin->reg) ? reg(v->coin->reg).qubits : 0;
        }
    }
    return bits;
}

bool VerifierSpec::is_public_coin() const {
    if (!validate(*this).empty()) {
        return false;
    }
    std::set<std::string> at_verifier;
    for (const auto& r : registers) {
        if (r.owner == kVerifier && r.role != Role::Private) {
            at_verifier.insert(r.name);
        }
    }
    bool any_coin = false;
    for (std::size_t p = 0; p < turns.size(); ++p) {
        if (const auto* v = std::get_if<VerifierTurn>(&turns[p])) {
            if (!v->coin || !v->circuit.empty()) {
                return false;
            }
            any_coin = true;
        } else {
            const auto& pt = std::get<ProverTurn>(turns[p]);
            for (const auto& held : pt.held) {
                for (const auto& r : held) {
                    // Anything arriving from the verifier's side is a quantum
                    // message, which a public-coin verifier never sends.
                    if (at_verifier.contains(r)) {
                        return false;
                    }
                }
            }
            for (const auto& held : pt.held) {
                at_verifier.insert(held.begin(), held.end());
            }
        }
    }
    return any_coin;
}

const Circuit* ProverStrategy::circuit(int turn, Index history) const {
    if (turn < 0 || static_cast<std::size_t>(turn) >= turns.size()) {
        return nullptr;
    }
    const auto& options = turns[static_cast<std::size_t>(turn)];
    if (options.empty()) {
        return nullptr;
    }
    if (options.size() == 1) {
        return &options.front();
    }
    if (history >= options.size()) {
        throw ValidationError("coin history out of range for prover circuit table");
    }
    return &options[history];
}

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? ", " : "") + xs[i];
    }
    return out;
}

void push_unique(std::vector<std::string>& v, std::string s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) {
        v.push_back(std::move(s));
    }
}

void check_gates(const Circuit& c, std::vector<std::string>& out) {
    for (const auto& g : c.gates()) {
        const double d = linalg::unitarity_defect(g.matrix);
        if (!(d <= linalg::default_tolerances().unitarity)) {
            std::ostringstream os;
            os << "gate " << g.name << " not unitary (‖U†U−I‖ = " << d << ")";
            push_unique(out, os.str());
        }
        if (g.matrix.rows() != (Eigen::Index{1} << g.targets.size())) {
            push_unique(out, "gate " + g.name + " matrix size does not match its targets");
        }
    }
}

bool subset(const std::set<std::string>& used, const std::vector<std::string>& allowed) {
    return std::all_of(used.begin(), used.end(), [&](const std::string& r) {
        return std::find(allowed.begin(), allowed.end(), r) != allowed.end();
    });
}

} // namespace

TurnAccess analyze(const VerifierSpec& spec) {
    TurnAccess out;
    auto& v = out.violations;

    if (spec.k < 1) {
        v.push_back("prover count must be at least 1");
        return out;
    }
    try {
        (void)spec.layout();
    } catch (const std::exception& e) {
        v.push_back(e.what());
        return out;
    }

    // Location: kVerifier, a prover index (still owned), or kPrivate.
    constexpr int kPrivate = -2;
    std::map<std::string, int> loc;
    std::optional<int> q_m;
    bool unequal = false;
    for (const auto& r : spec.registers) {
        if (r.qubits < 1) {
            v.push_back("register " + r.name + " must have at least one qubit");
        }
        if (r.owner < kVerifier || r.owner >= spec.k) {
            v.push_back("register " + r.name + " has an invalid owner");
            continue;
        }
        if (r.role == Role::Private) {
            if (r.owner == kVerifier) {
                v.push_back("private register " + r.name + " must belong to a prover");
            }
            loc[r.name] = kPrivate;
        } else {
            loc[r.name] = r.owner;
        }
        if (!r.zero_init && r.owner == kVerifier) {
            v.push_back("shared-state register " + r.name + " must start with a prover");
        }
        if (r.role == Role::Message) {
            if (q_m && *q_m != r.qubits) {
                unequal = true;
            }
            q_m = r.qubits;
        }
    }
    if (unequal) {
        v.push_back("unequal message register sizes");
    }

    if (spec.turns.empty()) {
        v.push_back("protocol has no turns");
    } else if (!std::holds_alternative<ProverTurn>(spec.turns.back())) {
        v.push_back("the last turn must belong to the provers");
    }

    auto verifier_held = [&] {
        std::vector<std::string> held;
        for (const auto& r : spec.registers) {
            if (loc.count(r.name) && loc[r.name] == kVerifier) {
                held.push_back(r.name);
            }
        }
        return held;
    };

    std::set<std::string> touched;
    std::set<std::string> coin_regs;
    std::vector<std::vector<std::string>> visible(static_cast<std::size_t>(spec.k));
    out.verifier_access.resize(spec.turns.size());

    for (std::size_t p = 0; p < spec.turns.size(); ++p) {
        if (p > 0 && spec.turns[p].index() == spec.turns[p - 1].index()) {
            v.push_back("turns " + std::to_string(p) + " and " + std::to_string(p + 1) + " do not alternate");
        }
        if (const auto* vt = std::get_if<VerifierTurn>(&spec.turns[p])) {
            auto access = verifier_held();
            check_gates(vt->circuit, v);
            if (vt->coin) {
                const auto& c = *vt->coin;
                if (!spec.has_reg(c.reg)) {
                    v.push_back("coin register " + c.reg + " does not exist");
                } else {
                    const auto& r = spec.reg(c.reg);
                    if (r.role != Role::Verifier || r.owner != kVerifier || !r.zero_init) {
                        v.push_back("coin register " + c.reg + " must be a zero-initialized verifier register");
                    }
                    if (touched.contains(c.reg) || coin_regs.contains(c.reg)) {
                        v.push_back("coin register " + c.reg + " is used before its coin turn");
                    }
                }
                coin_regs.insert(c.reg);
                for (int i : c.recipients) {
                    if (i < 0 || i >= spec.k) {
                        v.push_back("coin recipient out of range");
                    } else {
                        visible[static_cast<std::size_t>(i)].push_back(c.reg);
                    }
                }
            }
            const auto used = vt->circuit.registers();
            if (!subset(used, access)) {
                for (const auto& r : used) {
                    if (std::find(access.begin(), access.end(), r) == access.end()) {
                        push_unique(v, "verifier turn " + std::to_string(p + 1) + " acts on register " + r +
                                           " it does not hold");
                    }
                }
            }
            touched.insert(used.begin(), used.end());
            out.verifier_access[p] = std::move(access);
        } else {
            const auto& pt = std::get<ProverTurn>(spec.turns[p]);
            if (static_cast<int>(pt.held.size()) != spec.k) {
                v.push_back("prover turn " + std::to_string(p + 1) + " must list held registers for every prover");
                out.prover_access.emplace_back(static_cast<std::size_t>(spec.k));
                out.visible_coins.push_back(visible);
                continue;
            }
            std::vector<std::vector<std::string>> access(static_cast<std::size_t>(spec.k));
            std::set<std::string> claimed;
            for (int i = 0; i < spec.k; ++i) {
                auto& a = access[static_cast<std::size_t>(i)];
                for (const auto& r : spec.private_registers(i)) {
                    a.push_back(r);
                }
                for (const auto& r : spec.registers) {
                    if (r.role != Role::Private && loc[r.name] == i) {
                        a.push_back(r.name);
                    }
                }
                for (const auto& r : pt.held[static_cast<std::size_t>(i)]) {
                    if (!loc.count(r)) {
                        v.push_back("prover turn " + std::to_string(p + 1) + " holds unknown register " + r);
                        continue;
                    }
                    if (!claimed.insert(r).second) {
                        v.push_back("register " + r + " held by two provers at turn " + std::to_string(p + 1));
                    }
                    if (coin_regs.contains(r)) {
                        v.push_back("coin register " + r + " cannot be sent to a prover");
                    }
                    const int l = loc[r];
                    if (l == kPrivate || (l != kVerifier && l != i)) {
                        v.push_back(prover_name(i) + " cannot receive register " + r + " at turn " +
                                    std::to_string(p + 1));
                    }
                    push_unique(a, r);
                }
            }
            for (int i = 0; i < spec.k; ++i) {
                for (const auto& r : pt.held[static_cast<std::size_t>(i)]) {
                    if (loc.count(r) && loc[r] != kPrivate) {
                        loc[r] = kVerifier;
                    }
                }
            }
            out.prover_access.push_back(std::move(access));
            out.visible_coins.push_back(visible);
        }
    }

    out.final_access = verifier_held();
    check_gates(spec.final_circuit, v);
    for (const auto& r : spec.final_circuit.registers()) {
        if (std::find(out.final_access.begin(), out.final_access.end(), r) == out.final_access.end()) {
            push_unique(v, "final circuit acts on register " + r + " the verifier does not hold");
        }
    }
    if (!spec.has_reg(spec.output.reg)) {
        v.push_back("output qubit register " + spec.output.reg + " does not exist");
    } else {
        if (spec.output.index < 0 || spec.output.index >= spec.reg(spec.output.reg).qubits) {
            v.push_back("output qubit index out of range");
        }
        if (std::find(out.final_access.begin(), out.final_access.end(), spec.output.reg) ==
            out.final_access.end()) {
            v.push_back("output qubit is not held by the verifier at the end");
        }
    }
    return out;
}

std::vector<std::string> validate(const VerifierSpec& spec) { return analyze(spec).violations; }

std::vector<std::string> validate(const ProtocolInstance& instance) {
    const auto& spec = instance.verifier;
    auto acc = analyze(spec);
    auto v = acc.violations;
    if (!v.empty()) {
        return v;
    }
    if (static_cast<int>(instance.provers.size()) != spec.k) {
        v.push_back("expected " + std::to_string(spec.k) + " prover strategies, got " +
                    std::to_string(instance.provers.size()));
        return v;
    }
    const int turns = spec.prover_turn_count();
    for (int i = 0; i < spec.k; ++i) {
        const auto& s = instance.provers[static_cast<std::size_t>(i)];
        if (static_cast<int>(s.turns.size()) > turns) {
            v.push_back(prover_name(i) + " has more turns than the protocol");
            continue;
        }
        for (int t = 0; t < static_cast<int>(s.turns.size()); ++t) {
            const auto& options = s.turns[static_cast<std::size_t>(t)];
            const auto& allowed = acc.prover_access[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
            int bits = 0;
            for (const auto& c : acc.visible_coins[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)]) {
                bits += spec.reg(c).qubits;
            }
            if (options.size() > 1 && options.size() != (std::size_t{1} << bits)) {
                v.push_back(prover_name(i) + " turn " + std::to_string(t + 1) + " needs 1 or " +
                            std::to_string(std::size_t{1} << bits) + " coin-indexed circuits");
            }
            for (const auto& c : options) {
                check_gates(c, v);
                if (!subset(c.registers(), allowed)) {
                    push_unique(v, prover_name(i) + " acts outside (" + join(allowed) + ")");
                }
            }
        }
    }
    const auto shared_layout = spec.shared_layout();
    if (!(instance.shared.layout() == shared_layout)) {
        v.push_back("shared state layout does not match the shared registers");
    } else if (std::abs(instance.shared.norm() - 1.0) > linalg::default_tolerances().load_normalization) {
        v.push_back("shared state is not normalized");
    }
    return v;
}

} // namespace qmip::protocol
