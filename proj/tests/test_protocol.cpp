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

#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qmip/errors.hpp"
#include "qmip/protocol/coins.hpp"
#include "qmip/protocol/model.hpp"
#include "qmip/protocol/simulator.hpp"

using namespace qmip::protocol;
using qmip::linalg::Layout;
using qmip::linalg::StateVector;

namespace {

bool mentions(const std::vector<std::string>& errs, const std::string& needle) {
    for (const auto& e : errs) {
        if (e.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

// Verifier flips a hidden coin into x, asks the prover for a bit and accepts
// when the bit matches x.
VerifierSpec guess_spec() {
    VerifierSpec s;
    s.k = 1;
    s.registers = {{"x", 1, Role::Verifier, kVerifier, true},
                   {"out", 1, Role::Verifier, kVerifier, true},
                   {"M", 1, Role::Message, kVerifier, true}};
    s.turns = {VerifierTurn{Circuit{gates::h({"x", 0})}, {}}, ProverTurn{{{"M"}}}};
    s.final_circuit = Circuit{gates::cnot({"x", 0}, {"M", 0}), gates::x({"M", 0}), gates::cnot({"M", 0}, {"out", 0})};
    s.output = {"out", 0};
    return s;
}

// Four turns with one public coin c sent to the prover, then a message round
// in which the verifier mixes the message with a fixed rotation.
VerifierSpec coin_spec() {
    VerifierSpec s;
    s.k = 1;
    s.registers = {{"c", 1, Role::Verifier, kVerifier, true},
                   {"out", 1, Role::Verifier, kVerifier, true},
                   {"M", 1, Role::Message, kVerifier, true},
                   {"P", 1, Role::Private, 0, true}};
    s.turns = {VerifierTurn{{}, Coin{"c", {0}}}, ProverTurn{{{"M"}}},
               VerifierTurn{Circuit{gates::ry(0.7, {"M", 0}).with_control({"c", 0}, 1)}, {}}, ProverTurn{{{"M"}}}};
    s.final_circuit = Circuit{gates::cnot({"M", 0}, {"out", 0}), gates::cnot({"c", 0}, {"out", 0})};
    s.output = {"out", 0};
    return s;
}

ProtocolInstance with_provers(VerifierSpec spec, std::vector<ProverStrategy> provers) {
    const auto layout = spec.shared_layout();
    return {std::move(spec), std::move(provers), StateVector(layout)};
}

} // namespace

TEST(Gates, MatchDenseOracle) {
    const Layout l({{"q", 3}});
    const auto dense = [&](const Circuit& c) { return c.to_matrix({{"q", 0}, {"q", 1}, {"q", 2}}); };
    EXPECT_LT((dense(Circuit{gates::h({"q", 1})}) - oracle::embed(oracle::hadamard(), {1}, 3)).norm(), 1e-14);
    EXPECT_LT((dense(Circuit{gates::cnot({"q", 2}, {"q", 0})}) - oracle::embed(oracle::pauli_x(), {0}, 3, {2}, {1}))
                  .norm(),
              1e-14);
    EXPECT_LT((dense(Circuit{gates::mcx({{"q", 0}, {"q", 1}}, {0, 1}, {"q", 2})}) -
               oracle::embed(oracle::pauli_x(), {2}, 3, {0, 1}, {0, 1}))
                  .norm(),
              1e-14);
    EXPECT_LT((dense(Circuit{gates::ry(0.3, {"q", 2})}) - oracle::embed(oracle::ry(0.3), {2}, 3)).norm(), 1e-14);
}

TEST(Gates, ZeroPhaseFlipNegatesOnlyAllZero) {
    const auto m = Circuit{gates::zero_phase_flip({{"q", 0}, {"q", 1}})}.to_matrix({{"q", 0}, {"q", 1}});
    EXPECT_NEAR(m(0, 0).real(), -1.0, 1e-15);
    for (int i = 1; i < 4; ++i) {
        EXPECT_NEAR(m(i, i).real(), 1.0, 1e-15);
    }
}

TEST(Circuit, AdjointInvertsRandomCircuit) {
    std::mt19937_64 rng(4);
    Circuit c;
    for (int i = 0; i < 20; ++i) {
        const int a = static_cast<int>(rng() % 3);
        const int b = (a + 1 + static_cast<int>(rng() % 2)) % 3;
        c.add(gates::unitary(qmip::linalg::haar_unitary(2, rng), {{"q", a}}).with_control({"q", b}, 1));
        c.add(gates::h({"q", b}));
    }
    const std::vector<QubitRef> qs{{"q", 0}, {"q", 1}, {"q", 2}};
    const Matrix id = (c.adjoint().to_matrix(qs) * c.to_matrix(qs));
    EXPECT_LT((id - Matrix::Identity(8, 8)).norm(), 1e-12);
}

TEST(Model, ValidSpecHasNoViolations) {
    EXPECT_TRUE(validate(guess_spec()).empty());
    EXPECT_TRUE(validate(coin_spec()).empty());
    EXPECT_FALSE(guess_spec().is_public_coin());
}

TEST(Model, RejectsUnequalMessageSizes) {
    auto s = guess_spec();
    s.k = 2;
    s.registers.push_back({"M2", 2, Role::Message, kVerifier, true});
    s.turns[1] = ProverTurn{{{"M"}, {"M2"}}};
    EXPECT_TRUE(mentions(validate(s), "unequal message register sizes"));
}

TEST(Model, RejectsNonAlternatingAndVerifierLast) {
    auto s = guess_spec();
    s.turns.push_back(VerifierTurn{});
    EXPECT_TRUE(mentions(validate(s), "last turn"));
    auto t = guess_spec();
    t.turns.insert(t.turns.begin(), VerifierTurn{});
    EXPECT_TRUE(mentions(validate(t), "do not alternate"));
}

TEST(Model, VerifierCannotTouchPrivateRegisters) {
    auto s = coin_spec();
    s.final_circuit.add(gates::x({"P", 0}));
    EXPECT_TRUE(mentions(validate(s), "final circuit acts on register P"));
}

TEST(Model, ProverLocalityViolationNamesAllowedRegisters) {
    auto s = guess_spec();
    s.k = 2;
    s.registers.push_back({"M_2", 1, Role::Message, kVerifier, true});
    s.registers.push_back({"P_2", 1, Role::Private, 1, true});
    s.turns[1] = ProverTurn{{{"M"}, {"M_2"}}};
    ProverStrategy bad;
    bad.turns = {{Circuit{gates::cnot({"P_2", 0}, {"M", 0})}}};
    auto inst = with_provers(s, {ProverStrategy{}, bad});
    EXPECT_TRUE(mentions(validate(inst), "prover 2 acts outside (P_2, M_2)"));
}

TEST(Model, NonUnitaryGateIsReported) {
    auto s = guess_spec();
    Matrix m = Matrix::Identity(2, 2);
    m(0, 0) = 1.5;
    s.final_circuit.add(gates::unitary(m, {{"x", 0}}));
    EXPECT_TRUE(mentions(validate(s), "not unitary"));
}

TEST(Model, CoinRegisterMustBeFresh) {
    auto s = coin_spec();
    s.turns.insert(s.turns.begin(), ProverTurn{{{}}});
    s.turns.insert(s.turns.begin(), VerifierTurn{Circuit{gates::x({"c", 0})}, {}});
    EXPECT_TRUE(mentions(validate(s), "used before its coin turn"));
}

TEST(Model, HeldRegistersReturnToVerifier) {
    const auto acc = analyze(coin_spec());
    ASSERT_EQ(acc.prover_access.size(), 2u);
    EXPECT_EQ(acc.prover_access[0][0], (std::vector<std::string>{"P", "M"}));
    EXPECT_EQ(acc.visible_coins[1][0], (std::vector<std::string>{"c"}));
    EXPECT_NE(std::find(acc.final_access.begin(), acc.final_access.end(), "M"), acc.final_access.end());
}

TEST(Simulator, GuessGameHonestAndCheating) {
    // Identity prover answers 0: accepted exactly when x = 0.
    EXPECT_NEAR(acceptance_probability(with_provers(guess_spec(), {ProverStrategy{}})), 0.5, 1e-12);
    ProverStrategy h;
    h.turns = {{Circuit{gates::h({"M", 0})}}};
    EXPECT_NEAR(acceptance_probability(with_provers(guess_spec(), {h})), 0.5, 1e-12);
}

TEST(Simulator, BranchesSeeTheirCoin) {
    // Prover copies the coin into M at turn 2 (via X when it saw c = 1); the
    // final check accepts M xor c = 1, so the honest move is to disagree.
    ProverStrategy p;
    p.turns = {{}, {Circuit{gates::x({"M", 0})}, Circuit{}}};
    const auto r = simulate(with_provers(coin_spec(), {p}));
    ASSERT_EQ(r.branch_p.size(), 2u);
    EXPECT_NEAR(r.branch_p[0], 1.0, 1e-12);
    const double c = std::cos(0.35);
    EXPECT_NEAR(r.branch_p[1], c * c, 1e-12);
    EXPECT_NEAR(r.p_acc, 0.5 * (1.0 + c * c), 1e-12);
}

TEST(Simulator, SnapshotsCoverEveryStep) {
    SimOptions o;
    o.snapshots = true;
    const auto r = simulate(with_provers(coin_spec(), {ProverStrategy{}}), o);
    const auto branches = enumerate_branches(coin_spec());
    EXPECT_EQ(r.snapshots.size(), 2 * branches.front().steps.size());
    EXPECT_EQ(r.snapshots.back().label, "final");
}

TEST(Simulator, SharedStateIsEmbedded) {
    VerifierSpec s;
    s.registers = {{"out", 1, Role::Verifier, kVerifier, true}, {"M", 1, Role::Message, 0, false}};
    s.turns = {VerifierTurn{}, ProverTurn{{{"M"}}}};
    s.final_circuit = Circuit{gates::cnot({"M", 0}, {"out", 0})};
    s.output = {"out", 0};
    qmip::linalg::Vector amps(2);
    amps << std::sqrt(0.3), std::sqrt(0.7);
    ProtocolInstance inst{s, {ProverStrategy{}}, StateVector(s.shared_layout(), amps)};
    ASSERT_TRUE(validate(inst).empty());
    EXPECT_NEAR(acceptance_probability(inst), 0.7, 1e-12);
}

TEST(Coins, PurificationPreservesAcceptanceForRandomStrategies) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        ProverStrategy p;
        p.turns.push_back({Circuit{gates::unitary(qmip::linalg::haar_unitary(4, rng), {{"M", 0}, {"P", 0}})}});
        p.turns.push_back({Circuit{gates::unitary(qmip::linalg::haar_unitary(4, rng), {{"M", 0}, {"P", 0}})},
                           Circuit{gates::unitary(qmip::linalg::haar_unitary(4, rng), {{"P", 0}, {"M", 0}})}});
        const auto inst = with_provers(coin_spec(), {p});
        const auto pure = purify_coins(inst);
        ASSERT_TRUE(validate(pure).empty()) << validate(pure).front();
        EXPECT_FALSE(has_coins(pure.verifier));
        EXPECT_NEAR(acceptance_probability(pure), acceptance_probability(inst), 1e-10);
    }
}

TEST(Coins, BudgetIsEnforced) {
    auto s = coin_spec();
    s.reg("c").qubits = qmip::protocol::kMaxCoinBits + 1;
    EXPECT_THROW((void)enumerate_branches(s), qmip::BudgetError);
}
