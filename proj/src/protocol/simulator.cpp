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

#include "qmip/protocol/simulator.hpp"

#include <algorithm>
#include <map>

#include "qmip/errors.hpp"

namespace qmip::protocol {

namespace {

struct CoinInfo {
    std::string reg;
    int bits = 0;
    int shift = 0;  // position of the coin's least significant bit in the branch value
};

std::vector<CoinInfo> coins_of(const VerifierSpec& spec) {
    std::vector<CoinInfo> coins;
    for (const auto& t : spec.turns) {
        if (const auto* v = std::get_if<VerifierTurn>(&t); v && v->coin) {
            coins.push_back({v->coin->reg, spec.reg(v->coin->reg).qubits, 0});
        }
    }
    int shift = 0;
    for (auto it = coins.rbegin(); it != coins.rend(); ++it) {
        it->shift = shift;
        shift += it->bits;
    }
    return coins;
}

Index coin_value(const CoinInfo& c, Index branch) {
    return (branch >> c.shift) & ((Index{1} << c.bits) - 1);
}

} // namespace

std::vector<Branch> enumerate_branches(const VerifierSpec& spec) {
    const auto coins = coins_of(spec);
    int total = 0;
    for (const auto& c : coins) {
        total += c.bits;
    }
    if (total > kMaxCoinBits) {
        throw BudgetError("protocol uses " + std::to_string(total) + " coin bits; the limit is " +
                          std::to_string(kMaxCoinBits));
    }
    const auto access = analyze(spec);
    std::map<std::string, const CoinInfo*> by_reg;
    for (const auto& c : coins) {
        by_reg[c.reg] = &c;
    }

    const Index count = Index{1} << total;
    std::vector<Branch> out;
    out.reserve(count);
    for (Index b = 0; b < count; ++b) {
        Branch br;
        br.value = b;
        br.weight = 1.0 / static_cast<double>(count);
        int pt = 0;
        for (int p = 0; p < spec.m(); ++p) {
            const auto& turn = spec.turns[static_cast<std::size_t>(p)];
            if (const auto* v = std::get_if<VerifierTurn>(&turn)) {
                Step s;
                s.kind = Step::Kind::Verifier;
                s.position = p;
                if (v->coin) {
                    const auto& c = *by_reg.at(v->coin->reg);
                    const Index val = coin_value(c, b);
                    for (int q = 0; q < c.bits; ++q) {
                        if ((val >> q) & 1U) {
                            s.circuit.add(gates::x({c.reg, q}));
                        }
                    }
                }
                s.circuit.append(v->circuit);
                br.steps.push_back(std::move(s));
            } else {
                for (int i = 0; i < spec.k; ++i) {
                    Step s;
                    s.kind = Step::Kind::Prover;
                    s.position = p;
                    s.prover = i;
                    s.prover_turn = pt;
                    Index h = 0;
                    for (const auto& r : access.visible_coins[static_cast<std::size_t>(pt)][static_cast<std::size_t>(i)]) {
                        const auto& c = *by_reg.at(r);
                        h = (h << c.bits) | coin_value(c, b);
                    }
                    s.history = h;
                    br.steps.push_back(std::move(s));
                }
                ++pt;
            }
        }
        Step f;
        f.kind = Step::Kind::Final;
        f.circuit = spec.final_circuit;
        br.steps.push_back(std::move(f));
        out.push_back(std::move(br));
    }
    return out;
}

linalg::StateVector initial_state(const VerifierSpec& spec, const SharedState& shared) {
    const auto sl = spec.shared_layout();
    const auto& given = shared.layout();
    if (given.slots().size() != sl.slots().size()) {
        throw ValidationError("shared state layout does not match the shared registers");
    }
    for (std::size_t i = 0; i < sl.slots().size(); ++i) {
        if (!(sl.slots()[i] == given.slots()[i])) {
            throw ValidationError("shared state register " + given.slots()[i].name + " does not match the protocol");
        }
    }
    const auto layout = spec.layout();
    const auto map = shared_embedding(spec);
    linalg::Vector amps = linalg::Vector::Zero(static_cast<Eigen::Index>(layout.dimension()));
    for (Index i = 0; i < shared.size(); ++i) {
        amps[static_cast<Eigen::Index>(map[i])] = shared[i];
    }
    return linalg::StateVector(layout, std::move(amps), true);
}

ProverLookup lookup_for(const std::vector<ProverStrategy>& provers) {
    return [&provers](int prover, int turn, Index history) -> const Circuit* {
        if (prover < 0 || static_cast<std::size_t>(prover) >= provers.size()) {
            return nullptr;
        }
        return provers[static_cast<std::size_t>(prover)].circuit(turn, history);
    };
}

void run_steps(linalg::StateVector& state, const Branch& branch, std::size_t begin, std::size_t end,
               const ProverLookup& lookup) {
    for (std::size_t i = begin; i < end && i < branch.steps.size(); ++i) {
        const auto& s = branch.steps[i];
        if (s.kind == Step::Kind::Prover) {
            if (const Circuit* c = lookup(s.prover, s.prover_turn, s.history)) {
                apply(state, *c);
            }
        } else {
            apply(state, s.circuit);
        }
    }
}

void run_steps_adjoint(linalg::StateVector& state, const Branch& branch, std::size_t begin, std::size_t end,
                       const ProverLookup& lookup) {
    end = std::min(end, branch.steps.size());
    for (std::size_t i = end; i-- > begin;) {
        const auto& s = branch.steps[i];
        if (s.kind == Step::Kind::Prover) {
            if (const Circuit* c = lookup(s.prover, s.prover_turn, s.history)) {
                apply(state, c->adjoint());
            }
        } else {
            apply(state, s.circuit.adjoint());
        }
    }
}

std::vector<Index> shared_embedding(const VerifierSpec& spec) {
    const auto layout = spec.layout();
    const auto sl = spec.shared_layout();
    std::vector<std::pair<int, int>> bit_map;
    for (const auto& slot : sl.slots()) {
        for (int q = 0; q < slot.qubits; ++q) {
            bit_map.emplace_back(sl.offset(slot.name) + q, layout.offset(slot.name) + q);
        }
    }
    std::vector<Index> out(sl.dimension());
    for (Index i = 0; i < out.size(); ++i) {
        Index full = 0;
        for (const auto& [from, to] : bit_map) {
            full |= ((i >> from) & 1U) << to;
        }
        out[i] = full;
    }
    return out;
}

double probability_one(const linalg::StateVector& state, const QubitRef& q) {
    const Index mask = Index{1} << state.layout().global(q);
    double p = 0.0;
    for (Index i = 0; i < state.size(); ++i) {
        if (i & mask) {
            p += std::norm(state[i]);
        }
    }
    return p;
}

std::string step_label(const Step& s) {
    switch (s.kind) {
    case Step::Kind::Verifier:
        return "turn " + std::to_string(s.position + 1) + " verifier";
    case Step::Kind::Prover:
        return "turn " + std::to_string(s.position + 1) + " " + prover_name(s.prover);
    case Step::Kind::Final:
        break;
    }
    return "final";
}

SimResult simulate(const ProtocolInstance& instance, const SimOptions& options) {
    const auto& spec = instance.verifier;
    const auto init = initial_state(spec, instance.shared);
    const auto lookup = lookup_for(instance.provers);
    SimResult r;
    for (const auto& br : enumerate_branches(spec)) {
        auto state = init;
        if (options.snapshots) {
            for (std::size_t i = 0; i < br.steps.size(); ++i) {
                run_steps(state, br, i, i + 1, lookup);
                r.snapshots.push_back({br.value, i, step_label(br.steps[i]), state});
            }
        } else {
            run_steps(state, br, 0, br.steps.size(), lookup);
        }
        const double p = probability_one(state, spec.output);
        r.branch_p.push_back(p);
        r.p_acc += br.weight * p;
    }
    return r;
}

double acceptance_probability(const ProtocolInstance& instance) { return simulate(instance).p_acc; }

} // namespace qmip::protocol
