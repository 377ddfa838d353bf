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
#include <numbers>

#include "qmip/adversary/adversary.hpp"
#include "qmip/errors.hpp"

namespace qmip::adversary {

using linalg::Matrix;
using protocol::Circuit;
using protocol::Role;
namespace gates = protocol::gates;

namespace {

struct Family {
    int params = 0;
    bool fix_first = false;  // the first angle is pinned to 0
};

Matrix build(const VerifierSpec& spec, const Slot& s, const double* theta) {
    if (s.qubits.size() == 1) {
        return Circuit{gates::ry(theta[0], s.qubits[0])}.to_matrix(s.qubits);
    }
    const auto& p = s.qubits[0];
    const auto& o = s.qubits[1];
    (void)spec;
    Circuit c{gates::ry(theta[0], p).with_control(o, 0), gates::ry(theta[1], p).with_control(o, 1), gates::cnot(p, o)};
    return c.to_matrix(s.qubits);
}

} // namespace

double brute_force_value(const VerifierSpec& verifier, double resolution, std::size_t max_points) {
    if (!(resolution > 0.0)) {
        throw ValidationError("grid resolution must be positive");
    }
    const auto view = adversary_view(verifier);
    const auto slots = prover_slots(view);
    std::vector<Family> fam;
    std::vector<int> first_turn(static_cast<std::size_t>(view.k), -1);
    for (const auto& s : slots) {
        auto& f = first_turn[static_cast<std::size_t>(s.prover)];
        if (f < 0) {
            f = s.turn;
        }
    }
    const auto acc = protocol::analyze(view);
    for (const auto& s : slots) {
        if (s.qubits.size() == 1) {
            fam.push_back({1, false});
        } else if (s.qubits.size() == 2 && view.reg(s.qubits[0].reg).role == Role::Private &&
                   view.reg(s.qubits[1].reg).role != Role::Private) {
            // Before its first message a prover's rotation on its own qubit is
            // part of the shared state; only coin-free first turns qualify.
            const bool coinless =
                acc.visible_coins[static_cast<std::size_t>(s.turn)][static_cast<std::size_t>(s.prover)].empty();
            fam.push_back({2, coinless && s.turn == first_turn[static_cast<std::size_t>(s.prover)]});
        } else {
            throw PreconditionError(protocol::prover_name(s.prover) + " turn " + std::to_string(s.turn + 1) +
                                    " is outside the brute-force family");
        }
    }
    const auto steps = static_cast<std::size_t>(std::ceil(4.0 * std::numbers::pi / resolution - 1e-9));
    std::vector<std::size_t> radix;
    for (const auto& f : fam) {
        for (int p = 0; p < f.params; ++p) {
            radix.push_back(p == 0 && f.fix_first ? 1 : steps);
        }
    }
    double points = 1.0;
    for (auto r : radix) {
        points *= static_cast<double>(r);
    }
    if (points > static_cast<double>(max_points)) {
        throw BudgetError("brute-force grid of " + std::to_string(static_cast<long double>(points)) +
                          " points exceeds the limit " + std::to_string(max_points));
    }

    std::vector<std::size_t> digit(radix.size(), 0);
    std::vector<double> theta(radix.size(), 0.0);
    double best = 0.0;
    while (true) {
        for (std::size_t d = 0; d < digit.size(); ++d) {
            theta[d] = resolution * static_cast<double>(digit[d]);
        }
        std::vector<Matrix> us;
        std::size_t at = 0;
        for (std::size_t j = 0; j < slots.size(); ++j) {
            us.push_back(build(view, slots[j], theta.data() + at));
            at += static_cast<std::size_t>(fam[j].params);
        }
        best = std::max(best, optimal_shared_state(view, strategies_from(view, slots, us)).p_max);
        std::size_t d = 0;
        while (d < digit.size() && ++digit[d] == radix[d]) {
            digit[d++] = 0;
        }
        if (d == digit.size()) {
            break;
        }
    }
    return best;
}

} // namespace qmip::adversary
