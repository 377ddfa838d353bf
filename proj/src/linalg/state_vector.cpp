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

#include "qmip/linalg/state_vector.hpp"

#include <algorithm>
#include <cmath>

#include "qmip/errors.hpp"

namespace qmip::linalg {

Layout::Layout(std::vector<RegisterSlot> slots) : slots_(std::move(slots)) {
    offsets_.reserve(slots_.size());
    for (const auto& s : slots_) {
        if (s.qubits < 0) {
            throw ValidationError("register " + s.name + " has negative size");
        }
        if (std::count_if(slots_.begin(), slots_.end(),
                          [&](const RegisterSlot& o) { return o.name == s.name; }) > 1) {
            throw ValidationError("duplicate register name " + s.name);
        }
        offsets_.push_back(total_);
        total_ += s.qubits;
    }
    if (total_ > 30) {
        throw BudgetError("layout of " + std::to_string(total_) + " qubits exceeds 30");
    }
}

bool Layout::contains(const std::string& name) const {
    return std::any_of(slots_.begin(), slots_.end(),
                       [&](const RegisterSlot& s) { return s.name == name; });
}

int Layout::offset(const std::string& name) const {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        if (slots_[i].name == name) {
            return offsets_[i];
        }
    }
    throw ValidationError("unknown register " + name);
}

int Layout::qubits(const std::string& name) const {
    for (const auto& s : slots_) {
        if (s.name == name) {
            return s.qubits;
        }
    }
    throw ValidationError("unknown register " + name);
}

int Layout::global(const QubitRef& q) const {
    const int n = qubits(q.reg);
    if (q.index < 0 || q.index >= n) {
        throw ValidationError("qubit index " + std::to_string(q.index) + " out of range for register " +
                              q.reg + " (" + std::to_string(n) + " qubits)");
    }
    return offset(q.reg) + q.index;
}

std::vector<int> Layout::global(std::span<const QubitRef> qs) const {
    std::vector<int> out;
    out.reserve(qs.size());
    for (const auto& q : qs) {
        out.push_back(global(q));
    }
    return out;
}

std::vector<int> Layout::bits_of(std::span<const std::string> regs) const {
    std::vector<int> out;
    for (const auto& r : regs) {
        const int off = offset(r);
        for (int i = 0; i < qubits(r); ++i) {
            out.push_back(off + i);
        }
    }
    return out;
}

StateVector::StateVector(Layout layout, Index index) : layout_(std::move(layout)) {
    amps_ = Vector::Zero(static_cast<Eigen::Index>(layout_.dimension()));
    if (index >= layout_.dimension()) {
        throw ValidationError("basis index out of range");
    }
    amps_[static_cast<Eigen::Index>(index)] = 1.0;
}

StateVector::StateVector(Layout layout, Vector amplitudes, bool allow_unnormalized)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (static_cast<Index>(amps_.size()) != layout_.dimension()) {
        throw ValidationError("amplitude count " + std::to_string(amps_.size()) +
                              " does not match layout dimension " +
                              std::to_string(layout_.dimension()));
    }
    normalized_ = std::abs(amps_.norm() - 1.0) <= default_tolerances().normalization;
    if (!normalized_ && !allow_unnormalized) {
        throw ValidationError("state not normalized (norm = " + std::to_string(amps_.norm()) + ")");
    }
}

Complex StateVector::inner(const StateVector& other) const {
    if (!(layout_ == other.layout_)) {
        throw ValidationError("inner product of states with different layouts");
    }
    return amps_.dot(other.amps_);
}

namespace {

// Scatters the bits of `local` into the positions listed in `targets`.
inline Index spread(Index local, std::span<const int> targets) {
    Index out = 0;
    for (std::size_t j = 0; j < targets.size(); ++j) {
        out |= ((local >> j) & 1U) << targets[j];
    }
    return out;
}

} // namespace

void apply_matrix(std::span<Complex> amps, const Matrix& m, std::span<const int> targets,
                  Index control_mask, Index control_value) {
    const std::size_t t = targets.size();
    const Index block = Index{1} << t;
    if (static_cast<Index>(m.rows()) != block || static_cast<Index>(m.cols()) != block) {
        throw ValidationError("gate matrix dimension does not match target count");
    }
    Index target_mask = 0;
    for (int b : targets) {
        target_mask |= Index{1} << b;
    }
    if ((target_mask & control_mask) != 0) {
        throw ValidationError("gate control overlaps a target");
    }

    std::vector<Index> offsets(block);
    for (Index l = 0; l < block; ++l) {
        offsets[l] = spread(l, targets);
    }

    const Index dim = amps.size();
    std::vector<Complex> in(block);
    std::vector<Complex> out(block);

    if (t == 1) {
        const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
        const Index stride = offsets[1];
        for (Index i = 0; i < dim; ++i) {
            if ((i & target_mask) != 0 || (i & control_mask) != control_value) {
                continue;
            }
            const Complex a0 = amps[i];
            const Complex a1 = amps[i | stride];
            amps[i] = m00 * a0 + m01 * a1;
            amps[i | stride] = m10 * a0 + m11 * a1;
        }
        return;
    }

    for (Index i = 0; i < dim; ++i) {
        if ((i & target_mask) != 0 || (i & control_mask) != control_value) {
            continue;
        }
        for (Index l = 0; l < block; ++l) {
            in[l] = amps[i | offsets[l]];
        }
        for (Index r = 0; r < block; ++r) {
            Complex acc = 0.0;
            for (Index c = 0; c < block; ++c) {
                acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
            out[r] = acc;
        }
        for (Index l = 0; l < block; ++l) {
            amps[i | offsets[l]] = out[l];
        }
    }
}

} // namespace qmip::linalg
