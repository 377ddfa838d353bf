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

#include "qmip/linalg/operators.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <cmath>
#include <sstream>

#include "qmip/errors.hpp"

namespace qmip::linalg {

ProjectorOp ProjectorOp::qubit_is_one(QubitRef q) {
    ProjectorOp p;
    p.kind_ = Kind::QubitIsOne;
    p.qubits_ = {std::move(q)};
    return p;
}

ProjectorOp ProjectorOp::all_zero(std::vector<QubitRef> qubits) {
    ProjectorOp p;
    p.kind_ = Kind::AllZero;
    p.qubits_ = std::move(qubits);
    return p;
}

ProjectorOp ProjectorOp::complement(ProjectorOp inner) {
    ProjectorOp p;
    p.kind_ = Kind::Complement;
    p.inner_ = std::make_shared<const ProjectorOp>(std::move(inner));
    return p;
}

ProjectorOp::Test ProjectorOp::compile(const Layout& layout) const {
    Test t;
    switch (kind_) {
    case Kind::QubitIsOne: {
        const Index bit = Index{1} << layout.global(qubits_.front());
        t.mask = bit;
        t.value = bit;
        break;
    }
    case Kind::AllZero:
        for (const auto& q : qubits_) {
            t.mask |= Index{1} << layout.global(q);
        }
        break;
    case Kind::Complement:
        t = inner_->compile(layout);
        t.negate = !t.negate;
        break;
    }
    return t;
}

bool ProjectorOp::accepts(const Layout& layout, Index index) const { return compile(layout)(index); }

double unitarity_defect(const Matrix& m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix& m, double tol) { return unitarity_defect(m) <= tol; }

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

StateVector apply(const StateVector& state, const UnitaryOp& op) {
    const auto targets = state.layout().global(op.targets);
    std::vector<int> sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("unitary targets the same qubit twice");
    }
    StateVector out = state;
    auto& a = out.amplitudes();
    apply_matrix(std::span<Complex>(a.data(), static_cast<std::size_t>(a.size())), op.matrix, targets);
    return out;
}

double project_norm_sq(const StateVector& state, const ProjectorOp& p) {
    const auto test = p.compile(state.layout());
    double acc = 0.0;
    const auto& a = state.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (test(static_cast<Index>(i))) {
            acc += std::norm(a[i]);
        }
    }
    return std::clamp(acc, 0.0, 1.0);
}

void project_in_place(StateVector& state, const ProjectorOp& p) {
    const auto test = p.compile(state.layout());
    auto& a = state.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (!test(static_cast<Index>(i))) {
            a[i] = 0.0;
        }
    }
    state.mark_unnormalized();
}

namespace {

void check_density(const Matrix& rho, const char* name, const Tolerances& tol) {
    if (!is_hermitian(rho, tol.psd)) {
        throw ValidationError(std::string(name) + " is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > tol.trace) {
        throw ValidationError(std::string(name) + " does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.psd) {
        throw ValidationError(std::string(name) + " is not positive semidefinite");
    }
}

// Returns the unit vector when rho is (numerically) rank one.
std::optional<Vector> pure_part(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const auto n = rho.rows();
    if (es.eigenvalues()(n - 1) >= 1.0 - 1e-12) {
        return es.eigenvectors().col(n - 1);
    }
    return std::nullopt;
}

Matrix psd_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

double fidelity(const Matrix& rho, const Matrix& sigma, const Tolerances& tol) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw ValidationError("fidelity: dimension mismatch");
    }
    check_density(rho, "rho", tol);
    check_density(sigma, "sigma", tol);

    const auto pr = pure_part(rho);
    const auto ps = pure_part(sigma);
    double f = 0.0;
    if (pr && ps) {
        f = std::abs(pr->dot(*ps));
    } else if (pr) {
        f = std::sqrt(std::max(0.0, pr->dot(sigma * *pr).real()));
    } else if (ps) {
        f = std::sqrt(std::max(0.0, ps->dot(rho * *ps).real()));
    } else {
        const Matrix s = psd_sqrt(rho);
        const Matrix inner = s * sigma * s;
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
        f = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    }
    return std::clamp(f, 0.0, 1.0);
}

EigenPair max_eigenpair(const Matrix& h, const Tolerances& tol) {
    if (!is_hermitian(h, tol.hermiticity)) {
        throw ValidationError("max_eigenpair: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    const auto n = h.rows();
    EigenPair out;
    out.value = es.eigenvalues()(n - 1);
    out.vector = es.eigenvectors().col(n - 1).normalized();
    return out;
}

Matrix polar_unitary(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw ValidationError("polar_unitary: matrix is not square");
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix haar_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) {
            q.col(j) *= r(j, j) / mag;
        }
    }
    return q;
}

Vector random_unit_vector(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = Complex(normal(rng), normal(rng));
    }
    return v.normalized();
}

Matrix random_density(Eigen::Index dim, Eigen::Index rank, std::mt19937_64& rng) {
    if (rank <= 0 || rank > dim) {
        rank = dim;
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(dim, rank);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < rank; ++j) {
            g(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

} // namespace qmip::linalg
