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

void require_three(const VerifierSpec& s, const std::string& pass) {
    if (s.m() != 3) {
        throw PreconditionError(pass + ": input has " + std::to_string(s.m()) + " turns, 3 are required");
    }
}

struct Split {
    VerifierSpec spec;
    std::string b;
};

/// The coinless 3-turn input `s` rebuilt around a snapshot after its verifier
/// turn. With `two_turn` the workspace travels in the coin turn's answer
/// (from prover `carrier`), otherwise in an opening turn.
Split build(const VerifierSpec& s, int carrier, bool two_turn) {
    const auto vs = verifier_circuits(s);
    const auto held = held_sets(s);
    const auto& third = held[1];

    Split out{s, {}};
    auto& w = out.spec;
    w.k = std::max(s.k, carrier + 1);
    w.turns.clear();
    std::vector<std::string> workspace;
    for (auto& r : w.registers) {
        r.zero_init = false;
        if (r.role == Role::Private) {
            continue;
        }
        bool later = false;
        for (int i = 0; i < s.k; ++i) {
            if (contains(third[static_cast<std::size_t>(i)], r.name)) {
                r.owner = i;
                later = true;
            }
        }
        bool sent_first = false;
        for (const auto& h : held[0]) {
            sent_first = sent_first || contains(h, r.name);
        }
        if (!later && (r.owner == kVerifier || sent_first)) {
            r.owner = carrier;
            workspace.push_back(r.name);
        }
    }
    out.b = fresh_name(w, "pc_b");
    w.registers.push_back(verifier_zero(out.b));
    const auto x = fresh_name(w, "pc_x");
    w.registers.push_back(verifier_zero(x));
    const QubitRef bq{out.b, 0};
    const QubitRef xq{x, 0};

    std::vector<int> askees;
    for (int i = 0; i < s.k; ++i) {
        askees.push_back(i);
    }
    std::vector<std::vector<std::string>> answers = third;
    answers.resize(static_cast<std::size_t>(w.k));
    if (two_turn) {
        answers[static_cast<std::size_t>(carrier)] = workspace;
        w.turns.push_back(VerifierTurn{{}, protocol::Coin{out.b, askees}});
        w.turns.push_back(ProverTurn{answers});
    } else {
        std::vector<std::vector<std::string>> opening(static_cast<std::size_t>(w.k));
        opening[static_cast<std::size_t>(carrier)] = workspace;
        w.turns.push_back(ProverTurn{opening});
        w.turns.push_back(VerifierTurn{{}, protocol::Coin{out.b, askees}});
        w.turns.push_back(ProverTurn{answers});
    }

    std::vector<QubitRef> check{bq};
    std::vector<int> values{1};
    for (const auto& r : s.initial_verifier_registers()) {
        bool handed = false;
        for (const auto& h : held[0]) {
            handed = handed || contains(h, r);
        }
        if (!handed) {
            for (const auto& q : qubits_of(s, {r})) {
                check.push_back(q);
                values.push_back(0);
            }
        }
    }
    w.final_circuit = s.final_circuit.controlled(bq, 0);
    w.final_circuit.append(vs.front().adjoint().controlled(bq, 1));
    w.final_circuit.add(g::mcx({bq, s.output}, {0, 1}, xq));
    w.final_circuit.add(g::mcx(check, values, xq));
    w.output = xq;
    return out;
}

ProtocolInstance honest(const ProtocolInstance& pure, const VerifierSpec& w) {
    const auto snapshot = state_after(pure, 1);
    ProtocolInstance out{w, {}, SharedState(w.shared_layout(), snapshot.amplitudes(), true)};
    for (int i = 0; i < w.k; ++i) {
        ProverStrategy p;
        if (w.m() == 3) {
            p.turns.emplace_back();
        }
        if (i < pure.verifier.k) {
            p.turns.push_back({honest_circuit(pure, i, 1), Circuit{}});
        }
        out.provers.push_back(std::move(p));
    }
    return out;
}

TransformReport halving_report(const std::string& pass, const VerifierSpec& in, const VerifierSpec& out,
                               const Bounds& bounds) {
    TransformReport r;
    r.pass = pass;
    fill_in(r, in, out);
    if (bounds.c) {
        r.claims.push_back({"c'", "(1 + c) / 2", (1.0 + *bounds.c) / 2.0});
    }
    if (bounds.s) {
        r.claims.push_back({"s'", "(1 + sqrt(s)) / 2", (1.0 + std::sqrt(*bounds.s)) / 2.0});
    }
    if (bounds.c && bounds.s && !(*bounds.c * *bounds.c > *bounds.s)) {
        r.notes.push_back("c^2 > s does not hold; the soundness claim carries no gap");
    }
    r.values["coin_bits"] = out.total_coin_bits();
    return r;
}

} // namespace

SpecResult to_public_coin_3turn(const VerifierSpec& in, const Bounds& bounds) {
    ensure_valid(in, "public-coin");
    require_three(in, "public-coin");
    auto w = build(purify_coins(in), 0, false).spec;
    ensure_valid(w, "public-coin");
    auto report = halving_report("public-coin", in, w, bounds);
    return {std::move(w), std::move(report)};
}

Result to_public_coin_3turn(const ProtocolInstance& in, const Bounds& bounds) {
    ensure_valid(in, "public-coin");
    require_three(in.verifier, "public-coin");
    const auto pure = purify_coins(in);
    Result r{honest(pure, build(pure.verifier, 0, false).spec), {}};
    ensure_valid(r.instance, "public-coin");
    r.report = halving_report("public-coin", in.verifier, r.instance.verifier, bounds);
    measure(r.report, in, r.instance);
    return r;
}

SpecResult direct_two_turn(const VerifierSpec& in, const Bounds& bounds) {
    ensure_valid(in, "direct-one-round");
    require_three(in, "direct-one-round");
    auto w = build(purify_coins(in), in.k, true).spec;
    ensure_valid(w, "direct-one-round");
    auto report = halving_report("direct-one-round", in, w, bounds);
    return {std::move(w), std::move(report)};
}

Result direct_two_turn(const ProtocolInstance& in, const Bounds& bounds) {
    ensure_valid(in, "direct-one-round");
    require_three(in.verifier, "direct-one-round");
    const auto pure = purify_coins(in);
    Result r{honest(pure, build(pure.verifier, in.verifier.k, true).spec), {}};
    ensure_valid(r.instance, "direct-one-round");
    r.report = halving_report("direct-one-round", in.verifier, r.instance.verifier, bounds);
    measure(r.report, in, r.instance);
    return r;
}

namespace {

void require_public_three(const VerifierSpec& s) {
    require_three(s, "one-round");
    if (!s.is_public_coin()) {
        throw PreconditionError("one-round: input is not a public-coin protocol");
    }
}

VerifierSpec one_round(const VerifierSpec& s) {
    const auto held = held_sets(s);
    VerifierSpec w = s;
    w.k = s.k + 1;
    std::vector<std::string> opening;
    for (const auto& h : held[0]) {
        opening = merge(opening, h);
    }
    for (auto& r : w.registers) {
        if (r.role == Role::Private) {
            continue;
        }
        if (contains(opening, r.name)) {
            r.owner = s.k;
            r.zero_init = false;
        } else if (r.owner != kVerifier) {
            r.zero_init = false;
        }
    }
    auto answers = held[1];
    answers.push_back(opening);
    w.turns = {std::get<VerifierTurn>(s.turns[1]), ProverTurn{answers}};
    return w;
}

TransformReport one_round_report(const VerifierSpec& in, const VerifierSpec& out, const Bounds& bounds) {
    TransformReport r;
    r.pass = "one-round";
    fill_in(r, in, out);
    if (bounds.c) {
        r.claims.push_back({"c'", "c", *bounds.c});
    }
    if (bounds.s) {
        r.claims.push_back({"s'", "s", *bounds.s});
    }
    return r;
}

} // namespace

SpecResult public_coin_to_one_round(const VerifierSpec& in, const Bounds& bounds) {
    ensure_valid(in, "one-round");
    require_public_three(in);
    auto w = one_round(in);
    ensure_valid(w, "one-round");
    auto report = one_round_report(in, w, bounds);
    return {std::move(w), std::move(report)};
}

Result public_coin_to_one_round(const ProtocolInstance& in, const Bounds& bounds) {
    ensure_valid(in, "one-round");
    require_public_three(in.verifier);
    auto w = one_round(in.verifier);
    const auto snapshot = restrict_to(state_after(in, 0), w.shared_layout());
    ProtocolInstance out{w, {}, snapshot};
    for (int i = 0; i < in.verifier.k; ++i) {
        ProverStrategy p;
        const auto& turns = i < static_cast<int>(in.provers.size())
                                ? in.provers[static_cast<std::size_t>(i)].turns
                                : std::vector<std::vector<Circuit>>{};
        p.turns.push_back(turns.size() > 1 ? turns[1] : std::vector<Circuit>{});
        out.provers.push_back(std::move(p));
    }
    out.provers.emplace_back();
    ensure_valid(out, "one-round");
    Result r{std::move(out), one_round_report(in.verifier, w, bounds)};
    measure(r.report, in, r.instance);
    return r;
}

} // namespace qmip::transforms
