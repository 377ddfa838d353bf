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

#include "qmip/io/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "qmip/adversary/adversary.hpp"
#include "qmip/protocol/simulator.hpp"
#include "qmip/transforms/transforms.hpp"

namespace qmip::io::fixtures {

using namespace protocol;
namespace g = protocol::gates;

namespace {

/// Ry angle whose |1> population is p.
double angle_for(double p) { return 2.0 * std::asin(std::sqrt(p)); }

Register verifier_reg(std::string name, int qubits = 1) {
    return {std::move(name), qubits, Role::Verifier, kVerifier, true};
}

Register message(std::string name, int owner = kVerifier) { return {std::move(name), 1, Role::Message, owner, true}; }

Register private_reg(std::string name, int owner) { return {std::move(name), 1, Role::Private, owner, false}; }

ProtocolFile finish(VerifierSpec spec, std::vector<ProverStrategy> provers, SharedState shared, double c, double s,
                    std::string instance, std::string description) {
    ProtocolFile f;
    f.instance = {std::move(spec), std::move(provers), std::move(shared)};
    f.metadata.claimed_c = c;
    f.metadata.claimed_s = s;
    f.metadata.instance = std::move(instance);
    f.metadata.description = std::move(description);
    return f;
}

SharedState zero_shared(const VerifierSpec& spec) { return SharedState(spec.shared_layout()); }

VerifierSpec one_message_spec() {
    VerifierSpec s;
    s.registers = {verifier_reg("out"), message("M")};
    s.turns = {VerifierTurn{}, ProverTurn{{{"M"}}}};
    s.output = {"out", 0};
    return s;
}

} // namespace

ProtocolFile always() {
    auto s = one_message_spec();
    s.final_circuit = Circuit{g::x({"out", 0})};
    return finish(s, {ProverStrategy{}}, zero_shared(s), 1.0, 1.0, "yes", "accepts unconditionally");
}

ProtocolFile never() {
    auto s = one_message_spec();
    return finish(s, {ProverStrategy{}}, zero_shared(s), 0.0, 0.0, "no", "rejects unconditionally");
}

ProtocolFile guess() {
    VerifierSpec s;
    s.registers = {verifier_reg("x"), verifier_reg("out"), message("M")};
    s.turns = {VerifierTurn{Circuit{g::h({"x", 0})}, {}}, ProverTurn{{{"M"}}}};
    s.final_circuit = Circuit{g::cnot({"x", 0}, {"M", 0}), g::x({"M", 0}), g::cnot({"M", 0}, {"out", 0})};
    s.output = {"out", 0};
    return finish(s, {ProverStrategy{}}, zero_shared(s), 0.5, 0.5, "", "guess a hidden random bit");
}

namespace {

VerifierSpec chsh_spec(bool opening) {
    VerifierSpec s;
    s.k = 2;
    const int owner1 = opening ? 0 : kVerifier;
    const int owner2 = opening ? 1 : kVerifier;
    s.registers = {verifier_reg("x"),       verifier_reg("y"),       verifier_reg("out"),
                   message("M_1", owner1), message("M_2", owner2), private_reg("P_1", 0),
                   private_reg("P_2", 1)};
    if (opening) {
        s.turns.push_back(ProverTurn{{{"M_1"}, {"M_2"}}});
    }
    s.turns.push_back(VerifierTurn{Circuit{g::h({"x", 0}), g::h({"y", 0}), g::cnot({"x", 0}, {"M_1", 0}),
                                           g::cnot({"y", 0}, {"M_2", 0})},
                                   {}});
    s.turns.push_back(ProverTurn{{{"M_1"}, {"M_2"}}});
    s.final_circuit = Circuit{g::cnot({"x", 0}, {"M_1", 0}),  g::cnot({"y", 0}, {"M_2", 0}),
                              g::x({"out", 0}),               g::cnot({"M_1", 0}, {"out", 0}),
                              g::cnot({"M_2", 0}, {"out", 0}), g::toffoli({"x", 0}, {"y", 0}, {"out", 0})};
    s.output = {"out", 0};
    return s;
}

/// Measures the private qubit in the basis at angle a0 or a1 (chosen by the
/// question in M) and XORs the outcome into M.
Circuit chsh_answer(const std::string& p, const std::string& m, double a0, double a1) {
    return Circuit{g::ry(-2.0 * a0, {p, 0}).with_control({m, 0}, 0), g::ry(-2.0 * a1, {p, 0}).with_control({m, 0}, 1),
                   g::cnot({p, 0}, {m, 0})};
}

ProtocolFile chsh_file(bool opening) {
    const auto s = chsh_spec(opening);
    const double pi = std::numbers::pi;
    ProverStrategy alice;
    ProverStrategy bob;
    if (opening) {
        alice.turns.push_back({});
        bob.turns.push_back({});
    }
    alice.turns.push_back({chsh_answer("P_1", "M_1", 0.0, pi / 4)});
    bob.turns.push_back({chsh_answer("P_2", "M_2", pi / 8, -pi / 8)});
    linalg::Vector bell = linalg::Vector::Zero(4);
    bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
    const double v = std::pow(std::cos(pi / 8), 2);
    return finish(s, {alice, bob}, SharedState(s.shared_layout(), bell), v, v, "",
                  opening ? "CHSH game with an opening prover turn" : "CHSH game");
}

} // namespace

ProtocolFile chsh() { return chsh_file(false); }
ProtocolFile chsh3() { return chsh_file(true); }

ProtocolFile good() {
    VerifierSpec s;
    s.registers = {verifier_reg("out"), message("M"), private_reg("P", 0)};
    s.turns = {VerifierTurn{}, ProverTurn{{{"M"}}}};
    s.final_circuit = Circuit{g::ry(angle_for(0.75), {"out", 0}).with_control({"M", 0}, 0),
                              g::ry(angle_for(0.25), {"out", 0}).with_control({"M", 0}, 1)};
    s.output = {"out", 0};
    ProverStrategy p;
    p.turns = {{Circuit{g::swap({"P", 0}, {"M", 0})}}};
    return finish(s, {p}, zero_shared(s), 0.75, 0.01, "yes", "accepts with 3/4 on message 0 and 1/4 on message 1");
}

ProtocolFile relay(int m, double w, double c, double s_claim, std::string instance) {
    VerifierSpec s;
    const bool odd = m % 2 == 1;
    s.registers = {verifier_reg("x"), verifier_reg("out"), message("M", odd ? 0 : kVerifier)};
    ProverStrategy p;
    int u = 0;
    for (int t = 0; t < m; ++t) {
        const bool prover = (t % 2 == 1) != odd;
        if (prover) {
            s.turns.push_back(ProverTurn{{{"M"}}});
            p.turns.push_back(u >= 2 ? std::vector<Circuit>{Circuit{g::sdg({"M", 0}), g::h({"M", 0})}}
                                     : std::vector<Circuit>{});
        } else {
            Circuit c = u == 0 ? Circuit{g::h({"x", 0}), g::cnot({"x", 0}, {"M", 0})}
                               : Circuit{g::h({"M", 0}), g::s({"M", 0})};
            s.turns.push_back(VerifierTurn{c, {}});
            ++u;
        }
    }
    s.final_circuit = Circuit{g::cnot({"x", 0}, {"M", 0}), g::x({"M", 0}),
                              g::ry(angle_for(w), {"out", 0}).with_control({"M", 0}, 1)};
    s.output = {"out", 0};
    return finish(s, {p}, zero_shared(s), c, s_claim, std::move(instance), std::to_string(m) + "-turn relay");
}

ProtocolFile pc3(double w) {
    VerifierSpec s;
    s.registers = {verifier_reg("c"), verifier_reg("out"), message("M", 0), message("N", 0)};
    s.turns = {ProverTurn{{{"M"}}}, VerifierTurn{{}, Coin{"c", {0}}}, ProverTurn{{{"N"}}}};
    Circuit fin;
    for (const char* r : {"M", "N"}) {
        fin.add(g::sdg({r, 0}).with_control({"c", 0}, 1));
        fin.add(g::h({r, 0}).with_control({"c", 0}, 1));
    }
    fin.add(g::cnot({"M", 0}, {"N", 0}));
    fin.add(g::x({"N", 0}));
    fin.add(g::ry(angle_for(w), {"out", 0}).with_control({"N", 0}, 1));
    s.final_circuit = fin;
    s.output = {"out", 0};
    ProverStrategy p;
    p.turns = {{Circuit{g::h({"M", 0}), g::cnot({"M", 0}, {"N", 0})}}, {Circuit{}, Circuit{g::x({"N", 0})}}};
    return finish(s, {p}, zero_shared(s), w, w, "", "public-coin parity test in the Z or Y basis");
}

std::vector<std::pair<Entry, ProtocolFile>> base_suite() {
    const double chsh_v = std::pow(std::cos(std::numbers::pi / 8), 2);
    std::vector<std::pair<Entry, ProtocolFile>> out;
    auto add = [&](std::string name, std::string prov, double honest, double opt, ProtocolFile f, std::string note) {
        out.push_back({Entry{name, name + ".json", std::move(prov), honest, opt, std::move(note)}, std::move(f)});
    };
    add("always", "by-construction", 1.0, 1.0, always(), "");
    add("never", "by-construction", 0.0, 0.0, never(), "");
    add("guess", "analytic", 0.5, 0.5, guess(), "no strategy can beat a fair guess");
    add("chsh", "analytic", chsh_v, chsh_v, chsh(), "Tsirelson value cos^2(pi/8)");
    add("chsh3", "analytic", chsh_v, chsh_v, chsh3(), "");
    add("good", "analytic", 0.75, 0.75, good(), "");
    add("sound", "analytic", 0.01, 0.01, relay(2, 0.01, 0.75, 0.01, "no"), "no-instance paired with good");
    add("relay3", "analytic", 0.75, 0.75, relay(3, 0.75, 0.75, 0.04, "yes"), "");
    add("relay3_no", "analytic", 0.04, 0.04, relay(3, 0.04, 0.75, 0.04, "no"), "");
    add("five_turn", "analytic", 0.75, 0.75, relay(5, 0.75, 0.75, 0.04, "yes"), "");
    add("five_turn_no", "analytic", 0.04, 0.04, relay(5, 0.04, 0.75, 0.04, "no"), "");
    add("nine_turn", "analytic", 0.75, 0.75, relay(9, 0.75, 0.75, 0.04, "yes"), "");
    add("nine_turn_pc", "analytic", 1.0, 1.0, relay(9, 1.0, 1.0, 0.04, "yes"), "perfect completeness");
    add("nine_turn_no", "analytic", 0.04, 0.04, relay(9, 0.04, 1.0, 0.04, "no"), "");
    add("pc3", "analytic", 0.9, 0.9, pc3(0.9), "");
    return out;
}

Metadata derived_metadata(const Metadata& in, const std::string& pass, const std::optional<double>& c,
                          const std::optional<double>& s) {
    Metadata out = in;
    out.claimed_c = c;
    out.claimed_s = s;
    out.description = pass + " of: " + in.description;
    return out;
}

namespace {

std::optional<double> claimed(const transforms::TransformReport& r, const std::string& name) {
    if (const auto* c = r.claim(name)) {
        return c->value;
    }
    return std::nullopt;
}

ProtocolFile derived(const ProtocolFile& in, const transforms::Result& r) {
    return {r.instance, derived_metadata(in.metadata, r.report.pass, claimed(r.report, "c'"), claimed(r.report, "s'"))};
}

transforms::Bounds bounds_of(const Metadata& m) { return {m.claimed_c, m.claimed_s}; }

ProtocolFile rewindable_of(const ProtocolFile& f) {
    const double p = adversary::optimal_shared_state(f.instance.verifier, f.instance.provers).p_max;
    return derived(f, transforms::make_perfectly_rewindable(f.instance, p, bounds_of(f.metadata)));
}

} // namespace

std::vector<std::pair<Entry, ProtocolFile>> full_suite() {
    auto out = base_suite();
    auto add = [&](std::string name, double honest, ProtocolFile f, std::string note) {
        out.push_back({Entry{name, name + ".json", "numerical-oracle", honest, -1.0, std::move(note)}, std::move(f)});
    };
    const auto good_rw = rewindable_of(good());
    add("rewindable_good", 0.5, good_rw, "best shared state for the honest provers gives exactly 1/2");
    add("rewindable_always", 0.5, rewindable_of(always()), "best shared state for the honest provers gives exactly 1/2");
    const auto rewound = transforms::rewind_to_perfect_completeness(good_rw.instance, bounds_of(good_rw.metadata));
    add("rewound_good", 1.0, derived(good_rw, rewound), "perfect completeness");

    const auto sound = relay(2, 0.01, 0.75, 0.01, "no");
    const auto rw = transforms::make_perfectly_rewindable(sound.instance.verifier, bounds_of(sound.metadata));
    const auto rs = transforms::rewind_to_perfect_completeness(rw.verifier, {rw.report.claim("c'")->value,
                                                                             rw.report.claim("s'")->value});
    ProtocolFile f;
    f.instance = {rs.verifier, std::vector<ProverStrategy>(static_cast<std::size_t>(rs.verifier.k)),
                  SharedState(rs.verifier.shared_layout())};
    f.metadata = derived_metadata(sound.metadata, "rewind", claimed(rs.report, "c'"), claimed(rs.report, "s'"));
    add("rewound_sound", acceptance_probability(f.instance), f, "verifier only; bundled provers do nothing");
    return out;
}

} // namespace qmip::io::fixtures
