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

#include <span>
#include <string>
#include <vector>

#include "qmip/linalg/types.hpp"

namespace qmip::linalg {

/// A named block of qubits inside a state vector.
struct RegisterSlot {
    std::string name;
    int qubits = 0;

    bool operator==(const RegisterSlot&) const = default;
};

/// Addresses one qubit of a named register.
struct QubitRef {
    std::string reg;
    int index = 0;

    bool operator==(const QubitRef&) const = default;
    auto operator<=>(const QubitRef&) const = default;
};

/// Ordered register layout. Register r occupies the consecutive bits
/// [offset(r), offset(r) + qubits) of a basis index, and qubit 0 of every
/// register is its least significant bit.
class Layout {
  public:
    Layout() = default;
    explicit Layout(std::vector<RegisterSlot> slots);

    const std::vector<RegisterSlot>& slots() const { return slots_; }
    int total_qubits() const { return total_; }
    Index dimension() const { return Index{1} << total_; }

    bool contains(const std::string& name) const;
    int offset(const std::string& name) const;
    int qubits(const std::string& name) const;

    /// Global bit position of a qubit. Throws ValidationError on unknown
    /// register or out-of-range index.
    int global(const QubitRef& q) const;
    std::vector<int> global(std::span<const QubitRef> qs) const;

    /// All global bits of the listed registers, register order preserved.
    std::vector<int> bits_of(std::span<const std::string> regs) const;

    bool operator==(const Layout&) const = default;

  private:
    std::vector<RegisterSlot> slots_;
    std::vector<int> offsets_;
    int total_ = 0;
};

/// Complex amplitude vector over a register layout.
class StateVector {
  public:
    StateVector() = default;
    /// Basis state |index>.
    StateVector(Layout layout, Index index = 0);
    /// Takes ownership of the amplitudes. Unless `allow_unnormalized` is set
    /// the norm must be 1 within the normalization tolerance.
    StateVector(Layout layout, Vector amplitudes, bool allow_unnormalized = false);

    const Layout& layout() const { return layout_; }
    const Vector& amplitudes() const { return amps_; }
    Vector& amplitudes() { return amps_; }
    Index size() const { return static_cast<Index>(amps_.size()); }
    Complex operator[](Index i) const { return amps_[static_cast<Eigen::Index>(i)]; }

    double norm() const { return amps_.norm(); }
    bool normalized() const { return normalized_; }
    void mark_unnormalized() { normalized_ = false; }

    /// Inner product <this|other>.
    Complex inner(const StateVector& other) const;

  private:
    Layout layout_;
    Vector amps_;
    bool normalized_ = true;
};

/// Applies `m` (2^t x 2^t, matrix index bit j <-> targets[j]) to the listed
/// global bits, restricted to basis states whose `control_mask` bits equal
/// `control_value`. Operates in place.
void apply_matrix(std::span<Complex> amps, const Matrix& m, std::span<const int> targets,
                  Index control_mask = 0, Index control_value = 0);

} // namespace qmip::linalg
