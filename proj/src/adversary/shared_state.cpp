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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "qmip/adversary/adversary.hpp"
#include "qmip/errors.hpp"
#include "qmip/linalg/operators.hpp"
#include "qmip/protocol/simulator.hpp"

namespace qmip::adversary {

using linalg::Matrix;
using linalg::Vector;
using protocol::Index;

namespace {

/// v -> A v where <v|A|v> is the acceptance probability with shared state v.
class AcceptanceOperator {
  public:
    AcceptanceOperator(const VerifierSpec& spec, const std::vector<ProverStrategy>& provers)
        : spec_(spec),
          layout_(spec.layout()),
          branches_(protocol::enumerate_branches(spec)),
          lookup_(protocol::lookup_for(provers)),
          map_(protocol::shared_embedding(spec)),
          out_mask_(Index{1} << layout_.global(spec.output)) {}

    Index dimension() const { return map_.size(); }

    Vector operator()(const Vector& v) const {
        Vector out = Vector::Zero(v.size());
        for (const auto& br : branches_) {
            linalg::StateVector s(layout_, Vector::Zero(static_cast<Eigen::Index>(layout_.dimension())), true);
            for (Index i = 0; i < map_.size(); ++i) {
                s.amplitudes()[static_cast<Eigen::Index>(map_[i])] = v[static_cast<Eigen::Index>(i)];
            }
            protocol::run_steps(s, br, 0, br.steps.size(), lookup_);
            auto& a = s.amplitudes();
            for (Index i = 0; i < s.size(); ++i) {
                if (!(i & out_mask_)) {
                    a[static_cast<Eigen::Index>(i)] = 0.0;
                }
            }
            protocol::run_steps_adjoint(s, br, 0, br.steps.size(), lookup_);
            for (Index i = 0; i < map_.size(); ++i) {
                out[static_cast<Eigen::Index>(i)] += br.weight * a[static_cast<Eigen::Index>(map_[i])];
            }
        }
        return out;
    }

    Matrix dense() const {
        const auto d = static_cast<Eigen::Index>(dimension());
        Matrix a(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            a.col(j) = (*this)(Vector::Unit(d, j));
        }
        return (a + a.adjoint()) / 2.0;
    }

  private:
    const VerifierSpec& spec_;
    linalg::Layout layout_;
    std::vector<protocol::Branch> branches_;
    protocol::ProverLookup lookup_;
    std::vector<Index> map_;
    Index out_mask_;
};

/// Top Ritz pair of the tridiagonal matrix with diagonal `alpha` and
/// off-diagonal `beta`.
std::pair<double, Eigen::VectorXd> ritz_top(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const auto n = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    return {es.eigenvalues()[n - 1], es.eigenvectors().col(n - 1)};
}

template <typename Op>
linalg::EigenPair lanczos_top(const Op& op, Eigen::Index dim, Vector start, int restarts, int krylov) {
    constexpr double kResidual = 1e-8;
    const Eigen::Index steps = std::min<Eigen::Index>(dim, std::max(2, krylov));
    linalg::EigenPair best{-1.0, start};
    for (int restart = 0; restart < std::max(1, restarts); ++restart) {
        std::vector<Vector> basis{start};
        std::vector<double> alpha;
        std::vector<double> beta;
        for (Eigen::Index j = 0; j < steps; ++j) {
            Vector w = op(basis[static_cast<std::size_t>(j)]);
            alpha.push_back(basis[static_cast<std::size_t>(j)].dot(w).real());
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& b : basis) {
                    w -= b * b.dot(w);
                }
            }
            const double nb = w.norm();
            if (nb < 1e-13 || j + 1 == steps) {
                break;
            }
            // Residual of the current Ritz vector is beta_j |y_j|.
            if (j >= 1 && nb * std::abs(ritz_top(alpha, beta).second[j]) < kResidual / 10.0) {
                break;
            }
            beta.push_back(nb);
            basis.push_back(w / nb);
        }
        const Eigen::VectorXd y = ritz_top(alpha, beta).second;
        Vector x = Vector::Zero(dim);
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            x += y[i] * basis[static_cast<std::size_t>(i)];
        }
        x.normalize();
        const Vector ax = op(x);
        const double theta = x.dot(ax).real();
        best = {theta, x};
        if ((ax - theta * x).norm() < kResidual) {
            break;
        }
        start = x;
    }
    return best;
}

/// Bit positions (within the shared layout) of each product group.
std::vector<std::vector<int>> group_bits(const linalg::Layout& sl, const std::vector<std::vector<std::string>>& groups) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(static_cast<std::size_t>(sl.total_qubits()), false);
    for (const auto& g : groups) {
        std::vector<std::string> names;
        for (const auto& n : g) {
            if (sl.contains(n)) {
                names.push_back(n);
            }
        }
        auto bits = sl.bits_of(names);
        for (int b : bits) {
            if (seen[static_cast<std::size_t>(b)]) {
                throw ValidationError("product groups overlap");
            }
            seen[static_cast<std::size_t>(b)] = true;
        }
        out.push_back(std::move(bits));
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw ValidationError("product groups do not cover the shared registers");
    }
    return out;
}

Index extract(Index i, const std::vector<int>& bits) {
    Index out = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        out |= ((i >> bits[j]) & 1U) << j;
    }
    return out;
}

Vector product_vector(const std::vector<Vector>& factors, const std::vector<std::vector<int>>& bits, Index dim) {
    Vector v(static_cast<Eigen::Index>(dim));
    for (Index i = 0; i < dim; ++i) {
        linalg::Complex a = 1.0;
        for (std::size_t g = 0; g < factors.size(); ++g) {
            a *= factors[g][static_cast<Eigen::Index>(extract(i, bits[g]))];
        }
        v[static_cast<Eigen::Index>(i)] = a;
    }
    return v;
}

Vector product_optimum(const AcceptanceOperator& op, const linalg::Layout& sl,
                       const std::vector<std::vector<std::string>>& groups) {
    const auto bits = group_bits(sl, groups);
    const Index dim = op.dimension();
    std::vector<Vector> factors;
    for (const auto& b : bits) {
        factors.push_back(Vector::Unit(Eigen::Index{1} << b.size(), 0));
    }
    double value = -1.0;
    for (int iter = 0; iter < 200; ++iter) {
        double now = 0.0;
        for (std::size_t g = 0; g < factors.size(); ++g) {
            const auto dg = static_cast<Eigen::Index>(factors[g].size());
            Matrix ag(dg, dg);
            for (Eigen::Index j = 0; j < dg; ++j) {
                auto trial = factors;
                trial[g] = Vector::Unit(dg, j);
                const Vector w = op(product_vector(trial, bits, dim));
                // Contract with the other factors.
                Vector col = Vector::Zero(dg);
                for (Index i = 0; i < dim; ++i) {
                    linalg::Complex c = 1.0;
                    for (std::size_t h = 0; h < factors.size(); ++h) {
                        if (h != g) {
                            c *= std::conj(factors[h][static_cast<Eigen::Index>(extract(i, bits[h]))]);
                        }
                    }
                    col[static_cast<Eigen::Index>(extract(i, bits[g]))] += c * w[static_cast<Eigen::Index>(i)];
                }
                ag.col(j) = col;
            }
            const auto ep = linalg::max_eigenpair((ag + ag.adjoint()) / 2.0);
            factors[g] = ep.vector;
            now = ep.value;
        }
        if (now - value < 1e-13) {
            break;
        }
        value = now;
    }
    return product_vector(factors, bits, dim);
}

} // namespace

SharedOptimum optimal_shared_state(const VerifierSpec& verifier, const std::vector<ProverStrategy>& provers,
                                   const SharedStateOptions& options) {
    const auto sl = verifier.shared_layout();
    if (sl.dimension() > options.max_dimension) {
        throw BudgetError("shared-state dimension " + std::to_string(sl.dimension()) + " exceeds the limit " +
                          std::to_string(options.max_dimension));
    }
    const AcceptanceOperator op(verifier, provers);
    const auto dim = static_cast<Eigen::Index>(op.dimension());
    Vector best;
    if (!options.product_groups.empty()) {
        best = product_optimum(op, sl, options.product_groups);
    } else if (op.dimension() <= options.dense_limit) {
        best = linalg::max_eigenpair(op.dense()).vector;
    } else {
        Vector start = options.start;
        if (start.size() != dim || start.norm() < 1e-12) {
            std::mt19937_64 rng(0x5eed);
            start = linalg::random_unit_vector(dim, rng);
        } else {
            start.normalize();
        }
        best = lanczos_top(op, dim, std::move(start), options.lanczos_restarts,
                           options.krylov_steps).vector;
    }
    best.normalize();
    SharedOptimum out;
    out.state = SharedState(sl, best);
    out.p_max = protocol::acceptance_probability({verifier, provers, out.state});
    return out;
}

} // namespace qmip::adversary
