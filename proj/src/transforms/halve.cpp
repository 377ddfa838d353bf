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

struct Built {
    VerifierSpec spec;
    int m0 = 0;
};

int half_of(const VerifierSpec& s) {
    if (s.m() < 5 || s.m() % 4 != 1) {
        throw PreconditionError("halve: turn count " + std::to_string(s.m()) + " is not of the form 4m+1 with m >= 1");
    }
    return (s.m() - 1) / 4;
}

/// Expects a coinless spec with 4 m0 + 1 turns.
Built build(const VerifierSpec& s) {
    const int m0 = half_of(s);
    const auto vs = verifier_circuits(s);
    const auto held = held_sets(s);
    const auto reach_sets = reach(s);

    // Where every register sits right after prover turn m0 + 1.
    std::vector<std::string> sent;
    for (int t = 0; t <= m0; ++t) {
        for (const auto& h : held[static_cast<std::size_t>(t)]) {
            sent = merge(sent, h);
        }
    }
    const auto& pivot = held[static_cast<std::size_t>(m0)];

    Built out{s, m0};
    auto& w = out.spec;
    w.turns.clear();
    std::vector<std::vector<std::string>> first(static_cast<std::size_t>(s.k));
    for (auto& r : w.registers) {
        const bool at_verifier = r.role != Role::Private && (r.owner == kVerifier || contains(sent, r.name));
        r.zero_init = false;
        if (!at_verifier) {
            continue;
        }
        r.owner = 0;
        for (int i = 0; i < s.k; ++i) {
            if (contains(pivot[static_cast<std::size_t>(i)], r.name)) {
                r.owner = i;
            }
        }
        first[static_cast<std::size_t>(r.owner)].push_back(r.name);
    }
    const auto b = fresh_name(w, "hv_b");
    w.registers.push_back(verifier_zero(b));
    const auto x = fresh_name(w, "hv_x");
    w.registers.push_back(verifier_zero(x));
    const QubitRef bq{b, 0};
    const QubitRef xq{x, 0};

    std::vector<int> everyone;
    for (int i = 0; i < s.k; ++i) {
        everyone.push_back(i);
    }
    w.turns.push_back(ProverTurn{first});
    for (int t = 1; t <= m0; ++t) {
        VerifierTurn v;
        v.circuit = vs[static_cast<std::size_t>(m0 + t - 1)].controlled(bq, 0);
        if (t == 1) {
            v.coin = protocol::Coin{b, everyone};
        } else {
            v.circuit.append(vs[static_cast<std::size_t>(m0 - t + 1)].adjoint().controlled(bq, 1));
        }
        w.turns.push_back(std::move(v));
        ProverTurn p;
        for (int i = 0; i < s.k; ++i) {
            const auto& fwd = reach_sets[static_cast<std::size_t>(m0 + t)][static_cast<std::size_t>(i)];
            const auto& bwd = reach_sets[static_cast<std::size_t>(m0 - t + 1)][static_cast<std::size_t>(i)];
            p.held.push_back(merge(fwd, bwd));
        }
        w.turns.push_back(std::move(p));
    }

    std::vector<QubitRef> check{bq};
    std::vector<int> values{1};
    for (const auto& r : s.initial_verifier_registers()) {
        bool handed = false;
        for (const auto& h : held.front()) {
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

TransformReport base_report(const std::string& pass, const VerifierSpec& in, const VerifierSpec& out,
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
    return r;
}

Result halve_instance(const ProtocolInstance& in) {
    const auto pure = purify_coins(in);
    auto built = build(pure.verifier);
    const int m0 = built.m0;
    const auto snapshot = state_after(pure, 2 * m0);
    ProtocolInstance out{built.spec, {}, SharedState(built.spec.shared_layout(), snapshot.amplitudes(), true)};
    for (int i = 0; i < in.verifier.k; ++i) {
        ProverStrategy p;
        p.turns.emplace_back();
        for (int t = 1; t <= m0; ++t) {
            p.turns.push_back({honest_circuit(pure, i, m0 + t), honest_circuit(pure, i, m0 - t + 1).adjoint()});
        }
        out.provers.push_back(std::move(p));
    }
    return {std::move(out), {}};
}

} // namespace

SpecResult halve_turns(const VerifierSpec& in, const Bounds& bounds) {
    ensure_valid(in, "halve");
    half_of(in);
    auto built = build(purify_coins(in));
    ensure_valid(built.spec, "halve");
    auto report = base_report("halve", in, built.spec, bounds);
    return {std::move(built.spec), std::move(report)};
}

Result halve_turns(const ProtocolInstance& in, const Bounds& bounds) {
    ensure_valid(in, "halve");
    half_of(in.verifier);
    auto r = halve_instance(in);
    ensure_valid(r.instance, "halve");
    r.report = base_report("halve", in.verifier, r.instance.verifier, bounds);
    measure(r.report, in, r.instance);
    return r;
}

namespace {

/// Identity turns in front: one prover turn when the schedule opens with the
/// verifier, then (prover, verifier) pairs up to 2^(l+1) + 1 turns.
struct Padding {
    int prover_turns = 0;
    int halvings = 0;
};

Padding padding_for(const VerifierSpec& s) {
    Padding p;
    int m = s.m();
    if (std::holds_alternative<VerifierTurn>(s.turns.front())) {
        p.prover_turns = 1;
        ++m;
    }
    if (m <= 3) {
        p.prover_turns += (3 - m) / 2;
        return p;
    }
    int target = 5;
    p.halvings = 1;
    while (target < m) {
        target = 2 * target - 1;
        ++p.halvings;
    }
    p.prover_turns += (target - m) / 2;
    return p;
}

VerifierSpec pad(VerifierSpec s, const Padding& p) {
    const std::vector<std::vector<std::string>> nothing(static_cast<std::size_t>(s.k));
    std::vector<protocol::Turn> front;
    const bool opens_with_verifier = std::holds_alternative<VerifierTurn>(s.turns.front());
    for (int j = 0; j < p.prover_turns; ++j) {
        front.push_back(ProverTurn{nothing});
        if (j + 1 < p.prover_turns || !opens_with_verifier) {
            front.push_back(VerifierTurn{});
        }
    }
    s.turns.insert(s.turns.begin(), front.begin(), front.end());
    return s;
}

TransformReport three_report(const VerifierSpec& in, const VerifierSpec& out, const Bounds& bounds, int halvings) {
    TransformReport r;
    r.pass = "three-turn";
    fill_in(r, in, out);
    r.values["halvings"] = halvings;
    const double m1 = in.m() - 1;
    if (bounds.c) {
        const double eps = 1.0 - *bounds.c;
        r.claims.push_back({"c'", "1 - 2 eps / (m - 1)", 1.0 - 2.0 * eps / m1});
        double c = *bounds.c;
        for (int j = 0; j < halvings; ++j) {
            c = (1.0 + c) / 2.0;
        }
        r.values["c_iterated"] = c;
    }
    if (bounds.s) {
        const double delta = 1.0 - *bounds.s;
        r.claims.push_back({"s'", "1 - delta / (m - 1)^2", 1.0 - delta / (m1 * m1)});
        double s = *bounds.s;
        for (int j = 0; j < halvings; ++j) {
            s = (1.0 + std::sqrt(s)) / 2.0;
        }
        r.values["s_iterated"] = s;
        if (bounds.c && !(delta > 2.0 * m1 * (1.0 - *bounds.c))) {
            r.notes.push_back("gap condition delta > 2 (m - 1) eps fails");
        }
    }
    if (in.m() < 4) {
        r.notes.push_back("input has fewer than 4 turns");
    }
    return r;
}

} // namespace

SpecResult parallelize_to_three(const VerifierSpec& in, const Bounds& bounds) {
    ensure_valid(in, "three-turn");
    const auto p = padding_for(in);
    auto s = pad(in, p);
    for (int j = 0; j < p.halvings; ++j) {
        s = build(purify_coins(s)).spec;
    }
    ensure_valid(s, "three-turn");
    auto report = three_report(in, s, bounds, p.halvings);
    return {std::move(s), std::move(report)};
}

Result parallelize_to_three(const ProtocolInstance& in, const Bounds& bounds) {
    ensure_valid(in, "three-turn");
    const auto p = padding_for(in.verifier);
    ProtocolInstance cur = in;
    cur.verifier = pad(in.verifier, p);
    for (auto& strategy : cur.provers) {
        if (!strategy.turns.empty()) {
            strategy.turns.insert(strategy.turns.begin(), static_cast<std::size_t>(p.prover_turns),
                                  std::vector<Circuit>{});
        }
    }
    for (int j = 0; j < p.halvings; ++j) {
        cur = halve_instance(cur).instance;
    }
    ensure_valid(cur, "three-turn");
    Result r{cur, three_report(in.verifier, cur.verifier, bounds, p.halvings)};
    measure(r.report, in, r.instance);
    return r;
}

} // namespace qmip::transforms
