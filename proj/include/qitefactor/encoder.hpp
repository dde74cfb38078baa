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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace qitefactor {

/// Bitmask over binary (or spin) variables; bit i selects variable x_i.
using VarMask = std::uint32_t;

/// Largest supported value of m + l. Keeps (N - p*q)^2 and every expanded
/// coefficient inside int64 with room for the spin-form denominators.
inline constexpr int kMaxProductBits = 28;

/// Default cap on qubit count for dense diagonal evaluation.
inline constexpr int kDefaultMaxQubits = 24;

/**
 * Register sizes for the two factors. The least significant bit of each
 * factor is fixed to 1, so only m-1 + l-1 bits are free.
 */
struct BitAllocation {
    int n_bits_N = 0;
    int m = 0; ///< bit-length of p
    int l = 0; ///< bit-length of q
    bool fixed_lsb = true;

    [[nodiscard]] int n_qubits() const { return (m - 1) + (l - 1); }
    /// Variable index of p's bit k (k >= 1).
    [[nodiscard]] int p_var(int k) const { return k - 1; }
    /// Variable index of q's bit k (k >= 1).
    [[nodiscard]] int q_var(int k) const { return (m - 1) + (k - 1); }
};

enum class AllocationPolicy { heuristic, oracle_assisted };

/// Number of bits in the binary representation of n (0 for n == 0).
int bit_length(std::uint64_t n);

/**
 * Chooses register sizes for N.
 *
 * With an override the pair is validated and returned. Otherwise the
 * heuristic m = ceil(bits(N)/2), l = bits(N) - 1 is used.
 *
 * Throws std::invalid_argument for even N, N < 9, m < 2, l < 2 or sizes that
 * exceed kMaxProductBits.
 */
BitAllocation allocate_bits(std::uint64_t N, std::optional<std::pair<int, int>> override = std::nullopt);

/**
 * Oracle-assisted allocation: registers sized to the exact bit-lengths of the
 * smallest nontrivial factor of N and its cofactor (found by trial division).
 * Throws std::invalid_argument if N is prime.
 */
BitAllocation allocate_bits_oracle(std::uint64_t N);

/// Multilinear polynomial over binary variables with exact integer coefficients.
class MultilinearPoly {
  public:
    explicit MultilinearPoly(int n_vars = 0) : n_vars_(n_vars) {}

    static MultilinearPoly constant(int n_vars, std::int64_t c);
    static MultilinearPoly variable(int n_vars, int index);

    [[nodiscard]] int n_vars() const { return n_vars_; }
    [[nodiscard]] const std::map<VarMask, std::int64_t> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] std::int64_t coeff(VarMask mask) const;
    [[nodiscard]] int max_degree() const;

    /// Adds c * x_mask. Terms that cancel to zero are erased.
    void add_term(VarMask mask, std::int64_t c);

    MultilinearPoly &operator+=(const MultilinearPoly &rhs);
    MultilinearPoly &operator-=(const MultilinearPoly &rhs);
    MultilinearPoly &operator*=(std::int64_t s);

    /// Product with x_i^2 = x_i applied (monomial masks are OR-ed).
    friend MultilinearPoly operator*(const MultilinearPoly &a, const MultilinearPoly &b);
    friend MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly &b) { return a += b; }
    friend MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly &b) { return a -= b; }
    friend bool operator==(const MultilinearPoly &, const MultilinearPoly &) = default;

    /// Value at the assignment whose bit i is x_i.
    [[nodiscard]] std::int64_t evaluate(std::uint64_t assignment) const;

  private:
    int n_vars_;
    std::map<VarMask, std::int64_t> terms_;
};

/// Exact value num * 2^(-denom_pow2), kept in lowest terms.
struct Dyadic {
    std::int64_t num = 0;
    int denom_pow2 = 0;

    static Dyadic normalized(std::int64_t num, int denom_pow2);
    [[nodiscard]] double to_double() const;
    friend bool operator==(const Dyadic &, const Dyadic &) = default;
};

struct SpinTerm {
    VarMask mask = 0;
    Dyadic coeff;
    friend bool operator==(const SpinTerm &, const SpinTerm &) = default;
};

/**
 * Diagonal Hamiltonian sum_T c_T prod_{i in T} s_i in spin variables, where
 * s_i = +1 when bit i of the basis index is 1 and -1 otherwise. As an
 * operator s_i is -Z_i under Z|0> = +|0>. Terms are kept in ascending mask
 * order with no zero coefficients; the empty mask is the constant.
 */
struct SpinHamiltonian {
    int n_qubits = 0;
    std::vector<SpinTerm> terms;

    [[nodiscard]] Dyadic coeff(VarMask mask) const;
    /// Exact energy of basis state z as a dyadic rational.
    [[nodiscard]] Dyadic evaluate_exact(std::uint64_t z) const;
    [[nodiscard]] double evaluate(std::uint64_t z) const { return evaluate_exact(z).to_double(); }
    /// Coefficient of the Pauli-Z string for the same mask, c_T * (-1)^|T|.
    [[nodiscard]] static Dyadic z_string_coeff(const SpinTerm &t);
    friend bool operator==(const SpinHamiltonian &, const SpinHamiltonian &) = default;
};

/// p and q decoded from a basis index under the allocation.
struct FactorPair {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
};
FactorPair decode(const BitAllocation &alloc, std::uint64_t z);

/// (N - p(x) q(x))^2 expanded and reduced, with p_0 = q_0 = 1 substituted.
MultilinearPoly build_cost_poly(std::uint64_t N, const BitAllocation &alloc);

/// Substitutes x_i = (s_i + 1)/2 and collects exact spin coefficients.
SpinHamiltonian binary_to_spin(const MultilinearPoly &poly);

/// diag(H)[z] for every basis state. Throws std::length_error if
/// n_qubits > max_qubits.
std::vector<double> diag_energies(const SpinHamiltonian &h, int max_qubits = kDefaultMaxQubits);

struct GroundSolution {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::uint64_t index = 0;
    friend bool operator==(const GroundSolution &, const GroundSolution &) = default;
};

/// Basis states of exactly zero energy decoded to factor pairs. An empty
/// result means the allocation cannot represent a factorization.
std::vector<GroundSolution> ground_solutions(const SpinHamiltonian &h, const BitAllocation &alloc,
                                             int max_qubits = kDefaultMaxQubits);

/// [n(n+1)/2]^2 + 1.
std::int64_t term_count_bound(int n);

/**
 * Number of distinct monomials in (N - p q)^2 for n-bit p and q with every
 * bit free and N symbolic: the union of supports of 1, p q and (p q)^2.
 */
std::size_t free_bit_term_count(int n);

} // namespace qitefactor
