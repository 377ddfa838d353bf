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

#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qmip/linalg/operators.hpp"
#include "qmip/linalg/state_vector.hpp"

namespace qmip::protocol {

using linalg::Complex;
using linalg::Index;
using linalg::Matrix;
using linalg::QubitRef;

/// A (possibly multi-controlled) gate. `matrix` acts on `targets` (index bit
/// j <-> targets[j]) on the subspace where every control qubit holds its
/// listed control value.
struct Gate {
    std::string name;  // H, X, Y, Z, S, SDG, SWAP or U
    Matrix matrix;
    std::vector<QubitRef> targets;
    std::vector<QubitRef> controls;
    std::vector<int> control_values;

    Gate adjoint() const;
    Gate with_control(const QubitRef& q, int value) const;
};

namespace gates {

Gate h(QubitRef q);
Gate x(QubitRef q);
Gate y(QubitRef q);
Gate z(QubitRef q);
Gate s(QubitRef q);
Gate sdg(QubitRef q);
Gate cnot(QubitRef control, QubitRef target);
Gate toffoli(QubitRef c0, QubitRef c1, QubitRef target);
Gate swap(QubitRef a, QubitRef b);
/// X on `target` when every control matches its value.
Gate mcx(std::vector<QubitRef> controls, std::vector<int> values, QubitRef target);
/// Phase -1 on the basis state where all listed qubits are 1.
Gate cphase(std::vector<QubitRef> qubits);
/// Phase -1 on the basis state where all listed qubits are 0.
Gate zero_phase_flip(std::vector<QubitRef> qubits);
/// Real rotation exp(-i theta Y / 2).
Gate ry(double theta, QubitRef q);
/// Arbitrary dense unitary.
Gate unitary(Matrix m, std::vector<QubitRef> targets);

} // namespace gates

/// Ordered gate list over named registers. Circuits are exactly invertible:
/// adjoint() reverses the order and conjugate-transposes every gate.
class Circuit {
  public:
    Circuit() = default;
    Circuit(std::initializer_list<Gate> g) : gates_(g) {}
    explicit Circuit(std::vector<Gate> g) : gates_(std::move(g)) {}

    const std::vector<Gate>& gates() const { return gates_; }
    bool empty() const { return gates_.empty(); }
    std::size_t size() const { return gates_.size(); }

    Circuit& add(Gate g) {
        gates_.push_back(std::move(g));
        return *this;
    }
    Circuit& append(const Circuit& other);

    Circuit adjoint() const;
    /// Every gate additionally controlled on `q == value`.
    Circuit controlled(const QubitRef& q, int value) const;
    /// Register names the circuit touches (targets and controls).
    std::set<std::string> registers() const;
    /// Replaces register names according to `rename` (missing keys kept).
    Circuit renamed(const std::map<std::string, std::string>& rename) const;

    /// Dense matrix of the circuit on `qubits` (index bit j <-> qubits[j]).
    /// Every touched qubit must be listed.
    Matrix to_matrix(const std::vector<QubitRef>& qubits) const;

  private:
    std::vector<Gate> gates_;
};

/// A gate resolved against a concrete layout.
struct CompiledGate {
    Matrix matrix;
    std::vector<int> targets;
    Index control_mask = 0;
    Index control_value = 0;
};

CompiledGate compile(const Gate& g, const linalg::Layout& layout);
std::vector<CompiledGate> compile(const Circuit& c, const linalg::Layout& layout);

void apply(std::span<Complex> amps, const CompiledGate& g);
void apply(linalg::StateVector& state, const Circuit& c);

/// Largest unitarity defect over the circuit's gates; 0 for an empty circuit.
double max_unitarity_defect(const Circuit& c);

} // namespace qmip::protocol
