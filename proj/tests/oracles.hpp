// Copyright 2026 The feasmass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference implementations used only by the tests. They are written
// independently of the library code: dense matrices, brute-force sums and
// a Taylor matrix exponential.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace feasmass::oracle {

using cd = std::complex<double>;

/// exp(A) by scaling and squaring with a 30-term Taylor series.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd &a) {
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm > 0.25) {
        norm /= 2;
        squarings++;
    }
    Eigen::MatrixXcd scaled = a / std::pow(2.0, squarings);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 30; k++) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < squarings; k++) {
        sum = sum * sum;
    }
    return sum;
}

/// The N-fold Kronecker power of the 2x2 rotation exp(-i beta X). Qubit q is bit q.
inline Eigen::MatrixXcd x_mixer_matrix(int num_bits, double beta) {
    Eigen::Matrix2cd r;
    r << std::cos(beta), cd(0, -std::sin(beta)), cd(0, -std::sin(beta)), std::cos(beta);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < num_bits; q++) {
        // New qubit becomes the most significant bit.
        Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
        for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
                next.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = r(a, b) * m;
            }
        }
        m = next;
    }
    return m;
}

/// Feasibility from the character form of the matrix, one cell at a time.
inline bool permutation_feasible_by_sums(std::uint64_t x, int n) {
    for (int i = 0; i < n; i++) {
        int row = 0;
        int col = 0;
        for (int j = 0; j < n; j++) {
            row += (x >> (i * n + j)) & 1;
            col += (x >> (j * n + i)) & 1;
        }
        if (row != 1 || col != 1) {
            return false;
        }
    }
    return true;
}

/// f^(S) = 2^{-N} sum_x f(x) (-1)^{|S & x|}, O(4^N).
inline std::vector<cd> walsh_direct(const std::vector<cd> &f) {
    std::size_t dim = f.size();
    std::vector<cd> out(dim);
    for (std::size_t s = 0; s < dim; s++) {
        for (std::size_t x = 0; x < dim; x++) {
            out[s] += (std::popcount(s & x) % 2 ? -1.0 : 1.0) * f[x];
        }
        out[s] /= static_cast<double>(dim);
    }
    return out;
}

inline std::vector<cd> dyadic_convolution_direct(const std::vector<cd> &f, const std::vector<cd> &g) {
    std::vector<cd> out(f.size());
    for (std::size_t s = 0; s < f.size(); s++) {
        for (std::size_t t = 0; t < f.size(); t++) {
            out[s] += f[t] * g[s ^ t];
        }
    }
    return out;
}

/// Exact binomial in 64-bit arithmetic for small arguments.
inline std::int64_t choose(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    std::int64_t r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace feasmass::oracle
