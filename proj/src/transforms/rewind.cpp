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
#include <sstream>

#include "common.hpp"
#include "qmip/adversary/adversary.hpp"
#include "qmip/errors.hpp"
#include "qmip/protocol/coins.hpp"

namespace qmip::transforms {

using namespace detail;
namespace g = protocol::gates;

namespace {

/// Even turn count and unitary verifier. Prover-supplied registers first sent
/// at the first prover turn start at the verifier instead, which changes
/// nothing since no prover could have touched them.
VerifierSpec normalize(VerifierSpec s) {
    if (s.m() % 2 == 1) {
        s.turns.insert(s.turns.begin(), VerifierTurn{});
    }
    for (const auto& t : s.turns) {
        if (const auto* p = std::get_if<ProverTurn>(&t)) {
            for (std::size_t i = 0; i < p->held.size(); ++i) {
                for (const auto& name : p->held[i]) {
                    auto& r = s.reg(name);
                    if (r.role != Role::Private && r.owner == static_cast<int>(i) && r.zero_init) {
                        r.owner = kVerifier;
                    }
                }
            }
            break;
        }
    }
    return s;
}

/// Source of each prover turn of the rewound protocol: original ordinal and
/// whether the inverse is applied.
struct Source {
    int turn = 0;
    bool inverse = false;
};

struct Built {
    VerifierSpec spec;
    std::vector<Source> sources;
};

Built build(const VerifierSpec& s) {
    const int half = s.m() / 2;
    const auto vs = verifier_circuits(s);
    const auto& vf = s.final_circuit;
    const auto reach_sets = reach(s);
    const auto zero_regs = s.initial_verifier_registers();
    auto zero_qubits = qubits_of(s, zero_regs);

    Built out{s, {}};
    auto& w = out.spec;
    const auto b = fresh_name(w, "rw_b");
    w.registers.push_back(verifier_zero(b));
    const auto f = fresh_name(w, "rw_f");
    w.registers.push_back(verifier_zero(f));
    const auto x = fresh_name(w, "rw_x");
    w.registers.push_back(verifier_zero(x));
    const QubitRef bq{b, 0};
    const QubitRef fq{f, 0};
    const QubitRef xq{x, 0};

    for (int t = 0; t < half; ++t) {
        out.sources.push_back({t, false});
    }
    auto prover_turn = [&](int source, bool inverse) {
        w.turns.push_back(ProverTurn{reach_sets[static_cast<std::size_t>(source)]});
        out.sources.push_back({source, inverse});
    };

    // First check of the rewinding test, or the start of the invertibility test.
    Circuit split{g::h(bq)};
    split.append(vf.controlled(bq, 0));
    split.add(g::mcx({bq, s.output}, {0, 1}, fq));
    split.append(vf.adjoint().controlled(bq, 0));
    w.turns.push_back(VerifierTurn{split, {}});
    prover_turn(half - 1, true);
    for (int j = half; j >= 2; --j) {
        w.turns.push_back(VerifierTurn{vs[static_cast<std::size_t>(j - 1)].adjoint(), {}});
        prover_turn(j - 2, true);
    }

    Circuit pivot = vs[0].adjoint();
    auto with_b = zero_qubits;
    with_b.push_back(bq);
    std::vector<int> values(zero_qubits.size(), 0);
    values.push_back(1);
    pivot.add(g::mcx(with_b, values, fq));
    pivot.add(g::zero_phase_flip(zero_qubits).with_control(bq, 0));
    pivot.append(vs[0].controlled(bq, 0));
    w.turns.push_back(VerifierTurn{pivot, {}});
    prover_turn(0, false);
    for (int j = 2; j <= half; ++j) {
        w.turns.push_back(VerifierTurn{vs[static_cast<std::size_t>(j - 1)].controlled(bq, 0), {}});
        prover_turn(j - 1, false);
    }

    w.final_circuit = vf.controlled(bq, 0);
    w.final_circuit.add(g::cnot(fq, xq));
    w.final_circuit.add(g::mcx({fq, bq, s.output}, {0, 0, 1}, xq));
    w.output = xq;
    return out;
}

TransformReport base_report(const VerifierSpec& in, const VerifierSpec& out, const Bounds& bounds) {
    TransformReport r;
    r.pass = "rewind";
    fill_in(r, in, out);
    r.claims.push_back({"c'", "1", 1.0});
    if (bounds.s) {
        const double s = *bounds.s;
        r.claims.push_back({"s'", "1/2 + 2 sqrt(s) + 5 s / 2", 0.5 + 2.0 * std::sqrt(s) + 2.5 * s});
        if (!(s < 1.0 / 25.0)) {
            r.notes.push_back("soundness bound is only meaningful for s < 1/25");
        }
    }
    if (in.m() % 2 == 1) {
        r.notes.push_back("odd turn count padded with an identity verifier turn");
    }
    return r;
}

} // namespace

SpecResult rewind_to_perfect_completeness(const VerifierSpec& in, const Bounds& bounds) {
    ensure_valid(in, "rewind");
    auto built = build(normalize(purify_coins(in)));
    ensure_valid(built.spec, "rewind");
    auto report = base_report(in, built.spec, bounds);
    return {std::move(built.spec), std::move(report)};
}

Result rewind_to_perfect_completeness(const ProtocolInstance& in, const Bounds& bounds) {
    ensure_valid(in, "rewind");
    const double honest = acceptance_probability(in);
    const auto opt = adversary::optimal_shared_state(in.verifier, in.provers);
    if (std::abs(opt.p_max - 0.5) > 1e-9 || std::abs(honest - 0.5) > 1e-9) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "rewind: input is not perfectly rewindable (optimum over shared states " << opt.p_max
            << ", honest value " << honest << ", both must be 1/2)";
        throw PreconditionError(msg.str());
    }

    auto pure = purify_coins(in);
    pure.verifier = normalize(std::move(pure.verifier));
    auto built = build(pure.verifier);

    ProtocolInstance out{built.spec, {}, in.shared};
    for (int i = 0; i < in.verifier.k; ++i) {
        ProverStrategy p;
        for (const auto& src : built.sources) {
            auto c = honest_circuit(pure, i, src.turn);
            if (src.inverse) {
                c = c.adjoint();
            }
            p.turns.push_back(c.empty() ? std::vector<Circuit>{} : std::vector<Circuit>{c});
        }
        out.provers.push_back(std::move(p));
    }
    ensure_valid(out, "rewind");

    Result r{std::move(out), base_report(in.verifier, built.spec, bounds)};
    measure(r.report, in, r.instance);
    const auto paths = rewind_paths(r.instance);
    r.report.values["p1"] = paths.p1;
    r.report.values["p2"] = paths.p2;
    r.report.values["p3"] = paths.p3;
    return r;
}

RewindPaths rewind_paths(const ProtocolInstance& rewound) {
    const auto& spec = rewound.verifier;
    auto last_with = [&](const std::string& prefix) {
        std::string found;
        for (const auto& r : spec.registers) {
            if (r.name.rfind(prefix, 0) == 0) {
                found = r.name;
            }
        }
        if (found.empty()) {
            throw ValidationError("protocol has no register named " + prefix + "*; it was not produced by rewind");
        }
        return found;
    };
    const QubitRef b{last_with("rw_b"), 0};
    const QubitRef f{last_with("rw_f"), 0};
    const QubitRef x{last_with("rw_x"), 0};

    double b0 = 0.0;
    double f1b0 = 0.0;
    double f0x1b0 = 0.0;
    double f1b1 = 0.0;
    const auto lookup = lookup_for(rewound.provers);
    for (const auto& br : enumerate_branches(spec)) {
        auto state = initial_state(spec, rewound.shared);
        run_steps(state, br, 0, br.steps.size(), lookup);
        const auto& layout = state.layout();
        const Index mb = Index{1} << layout.global(b);
        const Index mf = Index{1} << layout.global(f);
        const Index mx = Index{1} << layout.global(x);
        for (Index i = 0; i < state.size(); ++i) {
            const double p = br.weight * std::norm(state[i]);
            if (i & mb) {
                if (i & mf) {
                    f1b1 += p;
                }
            } else {
                b0 += p;
                if (i & mf) {
                    f1b0 += p;
                } else if (i & mx) {
                    f0x1b0 += p;
                }
            }
        }
    }
    const double b1 = 1.0 - b0;
    RewindPaths out;
    out.p1 = b0 > 0.0 ? f1b0 / b0 : 0.0;
    out.p2 = b0 > 0.0 ? f0x1b0 / b0 : 0.0;
    out.p3 = b1 > 0.0 ? f1b1 / b1 : 0.0;
    return out;
}

} // namespace qmip::transforms
