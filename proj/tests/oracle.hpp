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

// Reference computations written independently of the library: dense
// Kronecker-style matrices, explicit partial traces and plain loops.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Full 2^n x 2^n matrix of `u` acting on `targets` (bit j of u's index is
/// targets[j]), applied only where every control bit equals its value.
inline Mat embed(const Mat& u, const std::vector<int>& targets, int n, const std::vector<int>& controls = {},
                 const std::vector<int>& values = {}) {
    const long dim = 1L << n;
    Mat full = Mat::Zero(dim, dim);
    auto sub = [&](long i) {
        long s = 0;
        for (std::size_t j = 0; j < targets.size(); ++j) {
            s |= ((i >> targets[j]) & 1L) << j;
        }
        return s;
    };
    long tmask = 0;
    for (int t : targets) {
        tmask |= 1L << t;
    }
    for (long r = 0; r < dim; ++r) {
        bool active = true;
        for (std::size_t c = 0; c < controls.size(); ++c) {
            if (((r >> controls[c]) & 1L) != values[c]) {
                active = false;
            }
        }
        for (long c = 0; c < dim; ++c) {
            if (!active) {
                full(r, c) = (r == c) ? 1.0 : 0.0;
            } else if ((r & ~tmask) == (c & ~tmask)) {
                full(r, c) = u(sub(r), sub(c));
            }
        }
    }
    return full;
}

inline Mat hadamard() {
    Mat h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

inline Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Mat ry(double theta) {
    Mat m(2, 2);
    m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
    return m;
}

} // namespace oracle
