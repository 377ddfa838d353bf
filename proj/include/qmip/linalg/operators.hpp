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

#include <memory>
#include <random>
#include <vector>

#include "qmip/linalg/state_vector.hpp"
#include "qmip/linalg/types.hpp"

namespace qmip::linalg {

/// Dense unitary on an ordered list of qubits. Matrix index bit j corresponds
/// to targets[j].
struct UnitaryOp {
    Matrix matrix;
    std::vector<QubitRef> targets;

    UnitaryOp adjoint() const { return {matrix.adjoint(), targets}; }
};

/// Orthogonal projector described structurally rather than as a matrix.
class ProjectorOp {
  public:
    enum class Kind { QubitIsOne, AllZero, Complement };

    static ProjectorOp qubit_is_one(QubitRef q);
    static ProjectorOp all_zero(std::vector<QubitRef> qubits);
    static ProjectorOp complement(ProjectorOp p);

    Kind kind() const { return kind_; }
    const std::vector<QubitRef>& qubits() const { return qubits_; }
    const ProjectorOp& inner() const { return *inner_; }

    /// True when basis state `index` lies in the projector's range.
    bool accepts(const Layout& layout, Index index) const;

    /// Compiles to a (mask, value, negate) test on basis indices.
    struct Test {
        Index mask = 0;
        Index value = 0;
        bool negate = false;
        bool operator()(Index i) const { return ((i & mask) == value) != negate; }
    };
    Test compile(const Layout& layout) const;

  private:
    Kind kind_ = Kind::AllZero;
    std::vector<QubitRef> qubits_;
    std::shared_ptr<const ProjectorOp> inner_;
};

bool is_unitary(const Matrix& m, double tol = default_tolerances().unitarity);
double unitarity_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = default_tolerances().hermiticity);

/// U|psi> with the layout unchanged.
StateVector apply(const StateVector& state, const UnitaryOp& op);

/// ||P|psi>||^2.
double project_norm_sq(const StateVector& state, const ProjectorOp& p);

/// Zeroes every amplitude outside the range of `p`.
void project_in_place(StateVector& state, const ProjectorOp& p);

/// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)). Rank-one inputs take
/// the overlap path.
double fidelity(const Matrix& rho, const Matrix& sigma, const Tolerances& tol = default_tolerances());

struct EigenPair {
    double value = 0.0;
    Vector vector;
};

/// Largest eigenvalue of a Hermitian matrix with a unit eigenvector.
EigenPair max_eigenpair(const Matrix& h, const Tolerances& tol = default_tolerances());

/// Unitary maximizing Re tr(U^dag a): U = V W^dag for a = V S W^dag.
Matrix polar_unitary(const Matrix& a);

/// Haar-random unitary via QR of a complex Ginibre matrix with the phases of
/// R's diagonal divided out.
Matrix haar_unitary(Eigen::Index dim, std::mt19937_64& rng);

/// Uniformly random unit vector.
Vector random_unit_vector(Eigen::Index dim, std::mt19937_64& rng);

/// Random density matrix of the given rank (rank 0 means full rank).
Matrix random_density(Eigen::Index dim, Eigen::Index rank, std::mt19937_64& rng);

} // namespace qmip::linalg
