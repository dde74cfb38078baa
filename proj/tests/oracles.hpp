// Copyright 2026 The qitefactor Authors.
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

// Reference implementations used only by tests. Each one takes a different
// route from the library code it checks: brute-force truth tables instead of
// symbolic expansion, dense matrices instead of gate kernels, finite
// differences instead of shifted circuits, Gaussian elimination instead of
// Cholesky.

#pragma once

#include "qitefactor/encoder.hpp"
#include "qitefactor/simulator.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace qitefactor::testing {

/// (N - p q)^2 for basis index z, computed from integers.
inline std::int64_t cost_of(std::uint64_t N, const BitAllocation &a, std::uint64_t z) {
    std::uint64_t p = 1;
    std::uint64_t q = 1;
    for (int k = 1; k < a.m; ++k) {
        p |= ((z >> a.p_var(k)) & 1U) << k;
    }
    for (int k = 1; k < a.l; ++k) {
        q |= ((z >> a.q_var(k)) & 1U) << k;
    }
    const auto d = static_cast<std::int64_t>(N) - static_cast<std::int64_t>(p * q);
    return d * d;
}

/// Multilinear 0/1 coefficients from a truth table by Moebius inversion.
inline std::map<VarMask, std::int64_t> moebius_coefficients(const std::vector<std::int64_t> &table) {
    std::vector<std::int64_t> c = table;
    for (std::size_t bit = 1; bit < c.size(); bit <<= 1) {
        for (std::size_t z = 0; z < c.size(); ++z) {
            if ((z & bit) != 0) {
                c[z] -= c[z ^ bit];
            }
        }
    }
    std::map<VarMask, std::int64_t> out;
    for (std::size_t z = 0; z < c.size(); ++z) {
        if (c[z] != 0) {
            out[static_cast<VarMask>(z)] = c[z];
        }
    }
    return out;
}

/// Spin coefficient c_S = 2^-n sum_s f(s) prod_{i in S} s_i, with s_i = +1
/// when bit i is 1.
inline std::map<VarMask, Dyadic> spin_coefficients(const std::vector<std::int64_t> &table, int n) {
    std::map<VarMask, Dyadic> out;
    for (std::size_t S = 0; S < table.size(); ++S) {
        std::int64_t sum = 0;
        for (std::size_t z = 0; z < table.size(); ++z) {
            // prod s_i over S: -1 for every member of S whose bit is 0.
            const int zeros = std::popcount(S & ~z);
            sum += (zeros % 2 == 0 ? 1 : -1) * table[z];
        }
        if (sum != 0) {
            out[static_cast<VarMask>(S)] = Dyadic::normalized(sum, n);
        }
    }
    return out;
}

/// Dense 2^Q x 2^Q operator for a one-qubit gate g on `qubit` (bit `qubit` of the index).
inline Eigen::MatrixXcd embed_1q(int n_qubits, int qubit, const Eigen::Matrix2cd &g) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const int b = static_cast<int>((col >> qubit) & 1);
        for (int r = 0; r < 2; ++r) {
            const Eigen::Index row = (col & ~(Eigen::Index{1} << qubit)) | (Eigen::Index{r} << qubit);
            u(row, col) += g(r, b);
        }
    }
    return u;
}

inline Eigen::MatrixXcd cnot_matrix(int n_qubits, int control, int target) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Eigen::Index row = ((col >> control) & 1) != 0 ? col ^ (Eigen::Index{1} << target) : col;
        u(row, col) = 1.0;
    }
    return u;
}

inline Eigen::Matrix2cd ry_matrix(double t) {
    Eigen::Matrix2cd g;
    g << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return g;
}

inline Eigen::Matrix2cd rx_matrix(double t) {
    const std::complex<double> mi{0.0, -std::sin(t / 2)};
    Eigen::Matrix2cd g;
    g << std::cos(t / 2), mi, mi, std::cos(t / 2);
    return g;
}

/// The ansatz state built from dense matrices.
inline Eigen::VectorXcd dense_state(const Ansatz &a, const std::vector<double> &th) {
    const Eigen::Index dim = Eigen::Index{1} << a.n_qubits;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(0) = 1.0;
    for (int k = 0; k < a.n_qubits; ++k) {
        psi = embed_1q(a.n_qubits, k, ry_matrix(th[a.param_index(0, k, GateKind::ry)])) * psi;
    }
    for (int layer = 1; layer <= a.depth; ++layer) {
        for (const auto &[c, t] : a.entangler) {
            psi = cnot_matrix(a.n_qubits, c, t) * psi;
        }
        for (int k = 0; k < a.n_qubits; ++k) {
            psi = embed_1q(a.n_qubits, k, ry_matrix(th[a.param_index(layer, k, GateKind::ry)])) * psi;
        }
        if (a.family == AnsatzFamily::ry_rx) {
            for (int k = 0; k < a.n_qubits; ++k) {
                psi = embed_1q(a.n_qubits, k, rx_matrix(th[a.param_index(layer, k, GateKind::rx)])) * psi;
            }
        }
    }
    return psi;
}

/// Gaussian elimination with partial pivoting.
inline Eigen::VectorXd gauss_solve(Eigen::MatrixXd A, Eigen::VectorXd b) {
    const Eigen::Index n = A.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        for (Eigen::Index r = k + 1; r < n; ++r) {
            if (std::abs(A(r, k)) > std::abs(A(piv, k))) {
                piv = r;
            }
        }
        A.row(k).swap(A.row(piv));
        std::swap(b(k), b(piv));
        for (Eigen::Index r = k + 1; r < n; ++r) {
            const double f = A(r, k) / A(k, k);
            A.row(r) -= f * A.row(k);
            b(r) -= f * b(k);
        }
    }
    Eigen::VectorXd x(n);
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        double s = b(k);
        for (Eigen::Index j = k + 1; j < n; ++j) {
            s -= A(k, j) * x(j);
        }
        x(k) = s / A(k, k);
    }
    return x;
}

inline std::vector<double> random_angles(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * 3.141592653589793);
    std::vector<double> th(n);
    for (double &t : th) {
        t = u(rng);
    }
    return th;
}

inline DiagonalOperator random_diagonal(int n_qubits, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<double> d(std::size_t{1} << n_qubits);
    for (double &x : d) {
        x = u(rng);
    }
    return {n_qubits, d};
}

} // namespace qitefactor::testing
