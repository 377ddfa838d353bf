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

#include <cmath>

#include "common.hpp"
#include "qmip/errors.hpp"
#include "qmip/protocol/coins.hpp"

namespace qmip::transforms {

using namespace detail;
namespace g = protocol::gates;

namespace {

constexpr int kMaxTurns = 256;

using Rename = std::map<std::string, std::string>;

Rename copy_names(const VerifierSpec& s, int copy) {
    Rename out;
    for (const auto& r : s.registers) {
        const auto name = r.name + "_r" + std::to_string(copy + 1);
        if (s.has_reg(name)) {
            throw ValidationError("repetition: register name " + name + " already exists");
        }
        out[r.name] = name;
    }
    return out;
}

std::vector<std::string> renamed(const std::vector<std::string>& regs, const Rename& map) {
    std::vector<std::string> out;
    for (const auto& r : regs) {
        out.push_back(map.at(r));
    }
    return out;
}

protocol::Turn renamed(const protocol::Turn& t, const Rename& map, int prover_offset, int k_out) {
    if (const auto* v = std::get_if<VerifierTurn>(&t)) {
        VerifierTurn out{v->circuit.renamed(map), {}};
        if (v->coin) {
            out.coin = protocol::Coin{map.at(v->coin->reg), {}};
            for (int i : v->coin->recipients) {
                out.coin->recipients.push_back(i + prover_offset);
            }
        }
        return out;
    }
    const auto& p = std::get<ProverTurn>(t);
    ProverTurn out;
    out.held.resize(static_cast<std::size_t>(k_out));
    for (std::size_t i = 0; i < p.held.size(); ++i) {
        out.held[i + static_cast<std::size_t>(prover_offset)] = renamed(p.held[i], map);
    }
    return out;
}

/// Registers of every copy in copy order; provers of copy j shifted by
/// j * shift.
std::vector<Register> copied_registers(const VerifierSpec& s, const std::vector<Rename>& maps, int shift) {
    std::vector<Register> out;
    for (std::size_t j = 0; j < maps.size(); ++j) {
        for (auto r : s.registers) {
            r.name = maps[j].at(r.name);
            if (r.owner != kVerifier) {
                r.owner += static_cast<int>(j) * shift;
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

void finish(VerifierSpec& w, const VerifierSpec& s, const std::vector<Rename>& maps) {
    std::vector<QubitRef> outs;
    for (const auto& map : maps) {
        w.final_circuit.append(s.final_circuit.renamed(map));
        outs.push_back({map.at(s.output.reg), s.output.index});
    }
    const auto acc = fresh_name(w, "rep_acc");
    w.registers.push_back(verifier_zero(acc));
    w.final_circuit.add(g::mcx(outs, std::vector<int>(outs.size(), 1), {acc, 0}));
    w.output = {acc, 0};
}

SharedState product(const VerifierSpec& w, const SharedState& one, int n) {
    linalg::Vector amps = one.amplitudes();
    for (int j = 1; j < n; ++j) {
        linalg::Vector next(amps.size() * one.amplitudes().size());
        for (Eigen::Index hi = 0; hi < one.amplitudes().size(); ++hi) {
            next.segment(hi * amps.size(), amps.size()) = one.amplitudes()[hi] * amps;
        }
        amps = std::move(next);
    }
    return SharedState(w.shared_layout(), std::move(amps), true);
}

Circuit renamed_option(const std::vector<Circuit>& options, Index history, const Rename& map) {
    if (options.empty()) {
        return {};
    }
    return (options.size() == 1 ? options.front() : options[history]).renamed(map);
}

struct SeqBuilt {
    VerifierSpec spec;
    std::vector<Rename> maps;
};

void check_n(int n, const std::string& pass) {
    if (n < 1) {
        throw PreconditionError(pass + ": repetition count must be at least 1");
    }
}

SeqBuilt build_sequential(const VerifierSpec& s, int n) {
    SeqBuilt out{s, {}};
    for (int j = 0; j < n; ++j) {
        out.maps.push_back(copy_names(s, j));
    }
    auto& w = out.spec;
    w.registers = copied_registers(s, out.maps, 0);
    w.turns.clear();
    w.final_circuit = Circuit{};
    for (int j = 0; j < n; ++j) {
        if (j > 0 && std::holds_alternative<ProverTurn>(s.turns.front())) {
            w.turns.push_back(VerifierTurn{});
        }
        for (const auto& t : s.turns) {
            w.turns.push_back(renamed(t, out.maps[static_cast<std::size_t>(j)], 0, s.k));
        }
    }
    if (w.m() > kMaxTurns) {
        throw BudgetError("seq-rep: " + std::to_string(w.m()) + " turns exceed the limit of " +
                          std::to_string(kMaxTurns));
    }
    finish(w, s, out.maps);
    return out;
}

TransformReport repetition_report(const std::string& pass, const VerifierSpec& in, const VerifierSpec& out, int n,
                                  const Bounds& bounds) {
    TransformReport r;
    r.pass = pass;
    fill_in(r, in, out);
    r.values["n"] = n;
    if (bounds.c) {
        r.claims.push_back({"c'", "c^n", std::pow(*bounds.c, n)});
    }
    if (bounds.s) {
        r.notes.push_back("no soundness formula is claimed; s^n = " + std::to_string(std::pow(*bounds.s, n)) +
                          " is an audit target only");
    }
    return r;
}

} // namespace

SpecResult sequential_repetition(const VerifierSpec& in, int n, const Bounds& bounds) {
    ensure_valid(in, "seq-rep");
    check_n(n, "seq-rep");
    if (n == 1) {
        return {in, repetition_report("seq-rep", in, in, n, bounds)};
    }
    auto w = build_sequential(in, n).spec;
    ensure_valid(w, "seq-rep");
    return {w, repetition_report("seq-rep", in, w, n, bounds)};
}

Result sequential_repetition(const ProtocolInstance& in, int n, const Bounds& bounds) {
    ensure_valid(in, "seq-rep");
    check_n(n, "seq-rep");
    if (n == 1) {
        Result r{in, repetition_report("seq-rep", in.verifier, in.verifier, n, bounds)};
        measure(r.report, in, r.instance);
        return r;
    }
    const auto& s = in.verifier;
    auto built = build_sequential(s, n);
    const auto& w = built.spec;
    const auto access_in = analyze(s);
    const auto access_out = analyze(w);
    const int per_copy = s.prover_turn_count();

    ProtocolInstance out{w, {}, product(w, in.shared, n)};
    for (int i = 0; i < s.k; ++i) {
        const auto& orig = i < static_cast<int>(in.provers.size()) ? in.provers[static_cast<std::size_t>(i)]
                                                                   : ProverStrategy{};
        auto bits_of = [&](const TurnAccess& a, const VerifierSpec& spec, int turn) {
            int bits = 0;
            for (const auto& c : a.visible_coins[static_cast<std::size_t>(turn)][static_cast<std::size_t>(i)]) {
                bits += spec.reg(c).qubits;
            }
            return bits;
        };
        ProverStrategy p;
        for (int j = 0; j < n; ++j) {
            for (int t = 0; t < per_copy; ++t) {
                const auto& options = static_cast<std::size_t>(t) < orig.turns.size()
                                          ? orig.turns[static_cast<std::size_t>(t)]
                                          : std::vector<Circuit>{};
                const int own = bits_of(access_in, s, t);
                const int all = bits_of(access_out, w, j * per_copy + t);
                std::vector<Circuit> row;
                if (!options.empty()) {
                    const Index count = Index{1} << all;
                    for (Index h = 0; h < (options.size() == 1 ? 1 : count); ++h) {
                        row.push_back(renamed_option(options, h & ((Index{1} << own) - 1),
                                                     built.maps[static_cast<std::size_t>(j)]));
                    }
                }
                p.turns.push_back(std::move(row));
            }
        }
        out.provers.push_back(std::move(p));
    }
    ensure_valid(out, "seq-rep");
    Result r{std::move(out), repetition_report("seq-rep", s, w, n, bounds)};
    measure(r.report, in, r.instance);
    return r;
}

namespace {

struct ParBuilt {
    VerifierSpec spec;
    std::vector<Rename> maps;
};

ParBuilt build_parallel(const VerifierSpec& s, int n) {
    ParBuilt out{s, {}};
    for (int j = 0; j < n; ++j) {
        out.maps.push_back(copy_names(s, j));
    }
    auto& w = out.spec;
    w.k = n * s.k;
    w.registers = copied_registers(s, out.maps, s.k);
    w.final_circuit = Circuit{};
    for (std::size_t p = 0; p < s.turns.size(); ++p) {
        if (const auto* v = std::get_if<VerifierTurn>(&s.turns[p])) {
            Circuit c;
            for (const auto& map : out.maps) {
                c.append(v->circuit.renamed(map));
            }
            w.turns[p] = VerifierTurn{c, {}};
        } else {
            ProverTurn merged;
            merged.held.resize(static_cast<std::size_t>(w.k));
            for (int j = 0; j < n; ++j) {
                const auto part = std::get<ProverTurn>(renamed(s.turns[p], out.maps[static_cast<std::size_t>(j)],
                                                               j * s.k, w.k));
                for (int i = 0; i < s.k; ++i) {
                    merged.held[static_cast<std::size_t>(j * s.k + i)] = part.held[static_cast<std::size_t>(j * s.k + i)];
                }
            }
            w.turns[p] = merged;
        }
    }
    finish(w, s, out.maps);
    return out;
}

} // namespace

SpecResult parallel_repetition_fresh_provers(const VerifierSpec& in, int n, const Bounds& bounds) {
    ensure_valid(in, "par-rep");
    check_n(n, "par-rep");
    if (n == 1) {
        return {in, repetition_report("par-rep", in, in, n, bounds)};
    }
    auto w = build_parallel(purify_coins(in), n).spec;
    ensure_valid(w, "par-rep");
    return {w, repetition_report("par-rep", in, w, n, bounds)};
}

Result parallel_repetition_fresh_provers(const ProtocolInstance& in, int n, const Bounds& bounds) {
    ensure_valid(in, "par-rep");
    check_n(n, "par-rep");
    if (n == 1) {
        Result r{in, repetition_report("par-rep", in.verifier, in.verifier, n, bounds)};
        measure(r.report, in, r.instance);
        return r;
    }
    const auto pure = purify_coins(in);
    auto built = build_parallel(pure.verifier, n);
    ProtocolInstance out{built.spec, {}, product(built.spec, pure.shared, n)};
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < in.verifier.k; ++i) {
            ProverStrategy p;
            const int turns = pure.verifier.prover_turn_count();
            for (int t = 0; t < turns; ++t) {
                const auto c = honest_circuit(pure, i, t).renamed(built.maps[static_cast<std::size_t>(j)]);
                p.turns.push_back(c.empty() ? std::vector<Circuit>{} : std::vector<Circuit>{c});
            }
            out.provers.push_back(std::move(p));
        }
    }
    ensure_valid(out, "par-rep");
    Result r{std::move(out), repetition_report("par-rep", in.verifier, built.spec, n, bounds)};
    measure(r.report, in, r.instance);
    return r;
}

} // namespace qmip::transforms
