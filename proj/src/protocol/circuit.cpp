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

#include "qmip/protocol/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmip/errors.hpp"

namespace qmip::protocol {

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

Gate single(std::string name, Matrix m, QubitRef q) {
    Gate g;
    g.name = std::move(name);
    g.matrix = std::move(m);
    g.targets = {std::move(q)};
    return g;
}

const Complex I{0.0, 1.0};

} // namespace

Gate Gate::adjoint() const {
    Gate g = *this;
    g.matrix = matrix.adjoint();
    if (name == "S") {
        g.name = "SDG";
    } else if (name == "SDG") {
        g.name = "S";
    } else if (name != "H" && name != "X" && name != "Y" && name != "Z" && name != "SWAP") {
        g.name = "U";
    }
    return g;
}

Gate Gate::with_control(const QubitRef& q, int value) const {
    Gate g = *this;
    g.controls.push_back(q);
    g.control_values.push_back(value);
    return g;
}

namespace gates {

Gate h(QubitRef q) {
    const double r = 1.0 / std::numbers::sqrt2;
    return single("H", mat2(r, r, r, -r), std::move(q));
}
Gate x(QubitRef q) { return single("X", mat2(0, 1, 1, 0), std::move(q)); }
Gate y(QubitRef q) { return single("Y", mat2(0, -I, I, 0), std::move(q)); }
Gate z(QubitRef q) { return single("Z", mat2(1, 0, 0, -1), std::move(q)); }
Gate s(QubitRef q) { return single("S", mat2(1, 0, 0, I), std::move(q)); }
Gate sdg(QubitRef q) { return single("SDG", mat2(1, 0, 0, -I), std::move(q)); }

Gate cnot(QubitRef control, QubitRef target) { return x(std::move(target)).with_control(control, 1); }

Gate toffoli(QubitRef c0, QubitRef c1, QubitRef target) {
    return x(std::move(target)).with_control(c0, 1).with_control(c1, 1);
}

Gate swap(QubitRef a, QubitRef b) {
    Gate g;
    g.name = "SWAP";
    g.matrix = Matrix::Zero(4, 4);
    g.matrix(0, 0) = g.matrix(1, 2) = g.matrix(2, 1) = g.matrix(3, 3) = 1.0;
    g.targets = {std::move(a), std::move(b)};
    return g;
}

Gate mcx(std::vector<QubitRef> controls, std::vector<int> values, QubitRef target) {
    if (controls.size() != values.size()) {
        throw ValidationError("mcx: control/value count mismatch");
    }
    Gate g = x(std::move(target));
    g.controls = std::move(controls);
    g.control_values = std::move(values);
    return g;
}

Gate cphase(std::vector<QubitRef> qubits) {
    if (qubits.empty()) {
        throw ValidationError("cphase needs at least one qubit");
    }
    Gate g = z(qubits.back());
    qubits.pop_back();
    g.control_values.assign(qubits.size(), 1);
    g.controls = std::move(qubits);
    return g;
}

Gate zero_phase_flip(std::vector<QubitRef> qubits) {
    if (qubits.empty()) {
        throw ValidationError("zero_phase_flip needs at least one qubit");
    }
    Gate g = single("U", mat2(-1, 0, 0, 1), qubits.back());
    qubits.pop_back();
    g.control_values.assign(qubits.size(), 0);
    g.controls = std::move(qubits);
    return g;
}

Gate ry(double theta, QubitRef q) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return single("U", mat2(c, -s, s, c), std::move(q));
}

Gate unitary(Matrix m, std::vector<QubitRef> targets) {
    Gate g;
    g.name = "U";
    g.matrix = std::move(m);
    g.targets = std::move(targets);
    return g;
}

} // namespace gates

Circuit& Circuit::append(const Circuit& other) {
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit Circuit::adjoint() const {
    std::vector<Gate> out;
    out.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.push_back(it->adjoint());
    }
    return Circuit(std::move(out));
}

Circuit Circuit::controlled(const QubitRef& q, int value) const {
    std::vector<Gate> out;
    out.reserve(gates_.size());
    for (const auto& g : gates_) {
        out.push_back(g.with_control(q, value));
    }
    return Circuit(std::move(out));
}

std::set<std::string> Circuit::registers() const {
    std::set<std::string> out;
    for (const auto& g : gates_) {
        for (const auto& q : g.targets) {
            out.insert(q.reg);
        }
        for (const auto& q : g.controls) {
            out.insert(q.reg);
        }
    }
    return out;
}

Circuit Circuit::renamed(const std::map<std::string, std::string>& rename) const {
    auto fix = [&](QubitRef q) {
        if (auto it = rename.find(q.reg); it != rename.end()) {
            q.reg = it->second;
        }
        return q;
    };
    std::vector<Gate> out;
    out.reserve(gates_.size());
    for (auto g : gates_) {
        for (auto& q : g.targets) {
            q = fix(q);
        }
        for (auto& q : g.controls) {
            q = fix(q);
        }
        out.push_back(std::move(g));
    }
    return Circuit(std::move(out));
}

Matrix Circuit::to_matrix(const std::vector<QubitRef>& qubits) const {
    std::vector<linalg::RegisterSlot> slots;
    // One single-qubit register per listed qubit keeps the bit order exact.
    std::map<QubitRef, std::string> alias;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        const std::string name = "q" + std::to_string(j);
        slots.push_back({name, 1});
        alias[qubits[j]] = name;
    }
    const linalg::Layout layout(slots);
    auto remap = [&](const QubitRef& q) {
        auto it = alias.find(q);
        if (it == alias.end()) {
            throw ValidationError("to_matrix: circuit touches unlisted qubit " + q.reg + "[" +
                                  std::to_string(q.index) + "]");
        }
        return QubitRef{it->second, 0};
    };
    std::vector<Gate> mapped;
    for (auto g : gates_) {
        for (auto& q : g.targets) {
            q = remap(q);
        }
        for (auto& q : g.controls) {
            q = remap(q);
        }
        mapped.push_back(std::move(g));
    }
    const auto compiled = compile(Circuit(std::move(mapped)), layout);
    const auto dim = static_cast<Eigen::Index>(layout.dimension());
    Matrix out = Matrix::Identity(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        std::span<Complex> col(out.col(c).data(), static_cast<std::size_t>(dim));
        for (const auto& g : compiled) {
            apply(col, g);
        }
    }
    return out;
}

CompiledGate compile(const Gate& g, const linalg::Layout& layout) {
    CompiledGate out;
    out.matrix = g.matrix;
    out.targets = layout.global(g.targets);
    if (g.controls.size() != g.control_values.size()) {
        throw ValidationError("gate " + g.name + ": control/value count mismatch");
    }
    std::vector<int> seen = out.targets;
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
        const int bit = layout.global(g.controls[i]);
        seen.push_back(bit);
        out.control_mask |= Index{1} << bit;
        if (g.control_values[i] != 0) {
            out.control_value |= Index{1} << bit;
        }
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw ValidationError("gate " + g.name + " uses the same qubit twice");
    }
    return out;
}

std::vector<CompiledGate> compile(const Circuit& c, const linalg::Layout& layout) {
    std::vector<CompiledGate> out;
    out.reserve(c.size());
    for (const auto& g : c.gates()) {
        out.push_back(compile(g, layout));
    }
    return out;
}

void apply(std::span<Complex> amps, const CompiledGate& g) {
    linalg::apply_matrix(amps, g.matrix, g.targets, g.control_mask, g.control_value);
}

void apply(linalg::StateVector& state, const Circuit& c) {
    auto& a = state.amplitudes();
    std::span<Complex> amps(a.data(), static_cast<std::size_t>(a.size()));
    for (const auto& g : compile(c, state.layout())) {
        apply(amps, g);
    }
}

double max_unitarity_defect(const Circuit& c) {
    double worst = 0.0;
    for (const auto& g : c.gates()) {
        worst = std::max(worst, linalg::unitarity_defect(g.matrix));
    }
    return worst;
}

} // namespace qmip::protocol
