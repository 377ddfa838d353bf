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

#include "qmip/protocol/coins.hpp"

#include <algorithm>

namespace qmip::protocol {

std::string coin_copy_name(const std::string& coin, int prover) {
    return coin + "_c" + std::to_string(prover + 1);
}

bool has_coins(const VerifierSpec& spec) {
    return std::any_of(spec.turns.begin(), spec.turns.end(), [](const Turn& t) {
        const auto* v = std::get_if<VerifierTurn>(&t);
        return v && v->coin;
    });
}

VerifierSpec purify_coins(const VerifierSpec& spec) {
    VerifierSpec out = spec;
    std::vector<std::vector<std::string>> copies(static_cast<std::size_t>(spec.k));
    for (auto& t : out.turns) {
        if (auto* v = std::get_if<VerifierTurn>(&t)) {
            if (!v->coin) {
                continue;
            }
            const auto coin = *v->coin;
            const int bits = spec.reg(coin.reg).qubits;
            Circuit prep;
            for (int q = 0; q < bits; ++q) {
                prep.add(gates::h({coin.reg, q}));
            }
            for (int i : coin.recipients) {
                const auto name = coin_copy_name(coin.reg, i);
                out.registers.push_back({name, bits, Role::Verifier, kVerifier, true});
                for (int q = 0; q < bits; ++q) {
                    prep.add(gates::cnot({coin.reg, q}, {name, q}));
                }
                copies[static_cast<std::size_t>(i)].push_back(name);
            }
            prep.append(v->circuit);
            v->circuit = std::move(prep);
            v->coin.reset();
        } else {
            auto& pt = std::get<ProverTurn>(t);
            for (int i = 0; i < spec.k && static_cast<std::size_t>(i) < pt.held.size(); ++i) {
                auto& held = pt.held[static_cast<std::size_t>(i)];
                for (const auto& c : copies[static_cast<std::size_t>(i)]) {
                    held.push_back(c);
                }
            }
        }
    }
    return out;
}

ProtocolInstance purify_coins(const ProtocolInstance& instance) {
    const auto& spec = instance.verifier;
    ProtocolInstance out{purify_coins(spec), instance.provers, instance.shared};
    const auto access = analyze(spec);
    for (int i = 0; i < spec.k && static_cast<std::size_t>(i) < out.provers.size(); ++i) {
        auto& strategy = out.provers[static_cast<std::size_t>(i)];
        for (std::size_t t = 0; t < strategy.turns.size(); ++t) {
            auto& options = strategy.turns[t];
            if (options.size() <= 1) {
                continue;
            }
            // Bits of the history index, least significant first.
            std::vector<QubitRef> bits;
            const auto& visible = access.visible_coins[t][static_cast<std::size_t>(i)];
            for (auto it = visible.rbegin(); it != visible.rend(); ++it) {
                for (int q = 0; q < spec.reg(*it).qubits; ++q) {
                    bits.push_back({coin_copy_name(*it, i), q});
                }
            }
            Circuit merged;
            for (Index h = 0; h < options.size(); ++h) {
                Circuit c = options[h];
                for (std::size_t b = 0; b < bits.size(); ++b) {
                    c = c.controlled(bits[b], static_cast<int>((h >> b) & 1U));
                }
                merged.append(c);
            }
            options = {merged};
        }
    }
    return out;
}

} // namespace qmip::protocol
