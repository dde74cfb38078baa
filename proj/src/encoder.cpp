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

#include "qitefactor/encoder.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace qitefactor {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("coefficient overflow in polynomial product");
    }
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("coefficient overflow in polynomial sum");
    }
    return r;
}

// Numerators of diag(H) over the common denominator 2^denom_pow2.
struct ExactDiagonal {
    std::vector<std::int64_t> numerators;
    int denom_pow2 = 0;
};

void check_qubits(int n_qubits, int max_qubits) {
    if (n_qubits < 0 || n_qubits > max_qubits) {
        throw std::length_error("Hamiltonian has " + std::to_string(n_qubits) +
                                " qubits; the configured maximum is " + std::to_string(max_qubits));
    }
}

ExactDiagonal exact_diagonal(const SpinHamiltonian &h, int max_qubits) {
    check_qubits(h.n_qubits, max_qubits);
    ExactDiagonal out;
    for (const auto &t : h.terms) {
        out.denom_pow2 = std::max(out.denom_pow2, t.coeff.denom_pow2);
    }
    const std::size_t dim = std::size_t{1} << h.n_qubits;
    // f[T] holds the scaled coefficient of s_T. diag[z] = sum_T f[T] (-1)^|T & ~z|,
    // which is the Walsh-Hadamard transform of f read at the complement of z.
    std::vector<std::int64_t> f(dim, 0);
    for (const auto &t : h.terms) {
        f[t.mask] = checked_mul(t.coeff.num, std::int64_t{1} << (out.denom_pow2 - t.coeff.denom_pow2));
    }
    for (std::size_t half = 1; half < dim; half <<= 1) {
        for (std::size_t base = 0; base < dim; base += 2 * half) {
            for (std::size_t k = base; k < base + half; ++k) {
                const std::int64_t a = f[k];
                const std::int64_t b = f[k + half];
                f[k] = checked_add(a, b);
                f[k + half] = a - b;
            }
        }
    }
    const std::size_t full = dim - 1;
    out.numerators.resize(dim);
    for (std::size_t z = 0; z < dim; ++z) {
        out.numerators[z] = f[z ^ full];
    }
    return out;
}

} // namespace

int bit_length(std::uint64_t n) { return static_cast<int>(std::bit_width(n)); }

BitAllocation allocate_bits(std::uint64_t N, std::optional<std::pair<int, int>> override) {
    if (N % 2 == 0) {
        throw std::invalid_argument("N must be odd");
    }
    if (N < 9) {
        throw std::invalid_argument("N must be at least 9");
    }
    BitAllocation a;
    a.n_bits_N = bit_length(N);
    if (a.n_bits_N > kMaxProductBits) {
        throw std::invalid_argument("N exceeds " + std::to_string(kMaxProductBits) + " bits");
    }
    if (override) {
        a.m = override->first;
        a.l = override->second;
    } else {
        a.m = (a.n_bits_N + 1) / 2;
        a.l = a.n_bits_N - 1;
    }
    if (a.m < 2 || a.l < 2) {
        throw std::invalid_argument("each factor needs at least 2 bits (m >= 2, l >= 2)");
    }
    if (a.m + a.l > kMaxProductBits) {
        throw std::invalid_argument("allocation m + l exceeds " + std::to_string(kMaxProductBits) + " bits");
    }
    return a;
}

BitAllocation allocate_bits_oracle(std::uint64_t N) {
    if (N % 2 == 0 || N < 9) {
        return allocate_bits(N); // throws with the matching message
    }
    for (std::uint64_t f = 3; f * f <= N; f += 2) {
        if (N % f == 0) {
            return allocate_bits(N, std::pair{bit_length(f), bit_length(N / f)});
        }
    }
    throw std::invalid_argument("N = " + std::to_string(N) + " is prime");
}

// --- MultilinearPoly --------------------------------------------------------

MultilinearPoly MultilinearPoly::constant(int n_vars, std::int64_t c) {
    MultilinearPoly p(n_vars);
    p.add_term(0, c);
    return p;
}

MultilinearPoly MultilinearPoly::variable(int n_vars, int index) {
    if (index < 0 || index >= n_vars) {
        throw std::out_of_range("variable index out of range");
    }
    MultilinearPoly p(n_vars);
    p.add_term(VarMask{1} << index, 1);
    return p;
}

std::int64_t MultilinearPoly::coeff(VarMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? 0 : it->second;
}

int MultilinearPoly::max_degree() const {
    int d = 0;
    for (const auto &[mask, c] : terms_) {
        d = std::max(d, std::popcount(mask));
    }
    return d;
}

void MultilinearPoly::add_term(VarMask mask, std::int64_t c) {
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(mask, c);
    if (!inserted) {
        it->second = checked_add(it->second, c);
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

MultilinearPoly &MultilinearPoly::operator+=(const MultilinearPoly &rhs) {
    n_vars_ = std::max(n_vars_, rhs.n_vars_);
    for (const auto &[mask, c] : rhs.terms_) {
        add_term(mask, c);
    }
    return *this;
}

MultilinearPoly &MultilinearPoly::operator-=(const MultilinearPoly &rhs) {
    n_vars_ = std::max(n_vars_, rhs.n_vars_);
    for (const auto &[mask, c] : rhs.terms_) {
        add_term(mask, checked_mul(c, -1));
    }
    return *this;
}

MultilinearPoly &MultilinearPoly::operator*=(std::int64_t s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[mask, c] : terms_) {
        c = checked_mul(c, s);
    }
    return *this;
}

MultilinearPoly operator*(const MultilinearPoly &a, const MultilinearPoly &b) {
    MultilinearPoly out(std::max(a.n_vars_, b.n_vars_));
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            out.add_term(ma | mb, checked_mul(ca, cb));
        }
    }
    return out;
}

std::int64_t MultilinearPoly::evaluate(std::uint64_t assignment) const {
    std::int64_t v = 0;
    for (const auto &[mask, c] : terms_) {
        if ((assignment & mask) == mask) {
            v = checked_add(v, c);
        }
    }
    return v;
}

// --- Dyadic / SpinHamiltonian ------------------------------------------------

Dyadic Dyadic::normalized(std::int64_t num, int denom_pow2) {
    if (num == 0) {
        return {0, 0};
    }
    while (denom_pow2 > 0 && num % 2 == 0) {
        num /= 2;
        --denom_pow2;
    }
    return {num, denom_pow2};
}

double Dyadic::to_double() const { return static_cast<double>(num) / static_cast<double>(std::int64_t{1} << denom_pow2); }

Dyadic SpinHamiltonian::coeff(VarMask mask) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), mask,
                               [](const SpinTerm &t, VarMask m) { return t.mask < m; });
    return (it != terms.end() && it->mask == mask) ? it->coeff : Dyadic{};
}

Dyadic SpinHamiltonian::evaluate_exact(std::uint64_t z) const {
    int k = 0;
    for (const auto &t : terms) {
        k = std::max(k, t.coeff.denom_pow2);
    }
    std::int64_t acc = 0;
    for (const auto &t : terms) {
        std::int64_t v = checked_mul(t.coeff.num, std::int64_t{1} << (k - t.coeff.denom_pow2));
        // s_i = -1 for each bit of the mask that is 0 in z.
        if (std::popcount(static_cast<std::uint64_t>(t.mask) & ~z) % 2 == 1) {
            v = -v;
        }
        acc = checked_add(acc, v);
    }
    return Dyadic::normalized(acc, k);
}

Dyadic SpinHamiltonian::z_string_coeff(const SpinTerm &t) {
    return std::popcount(t.mask) % 2 == 0 ? t.coeff : Dyadic{-t.coeff.num, t.coeff.denom_pow2};
}

FactorPair decode(const BitAllocation &alloc, std::uint64_t z) {
    FactorPair f{1, 1};
    for (int k = 1; k < alloc.m; ++k) {
        f.p |= ((z >> alloc.p_var(k)) & 1ULL) << k;
    }
    for (int k = 1; k < alloc.l; ++k) {
        f.q |= ((z >> alloc.q_var(k)) & 1ULL) << k;
    }
    return f;
}

MultilinearPoly build_cost_poly(std::uint64_t N, const BitAllocation &alloc) {
    const BitAllocation a = allocate_bits(N, std::pair{alloc.m, alloc.l});
    const int n = a.n_qubits();
    MultilinearPoly p = MultilinearPoly::constant(n, 1);
    for (int k = 1; k < a.m; ++k) {
        p.add_term(VarMask{1} << a.p_var(k), std::int64_t{1} << k);
    }
    MultilinearPoly q = MultilinearPoly::constant(n, 1);
    for (int k = 1; k < a.l; ++k) {
        q.add_term(VarMask{1} << a.q_var(k), std::int64_t{1} << k);
    }
    MultilinearPoly residual = MultilinearPoly::constant(n, static_cast<std::int64_t>(N)) - p * q;
    return residual * residual;
}

SpinHamiltonian binary_to_spin(const MultilinearPoly &poly) {
    const int k = poly.max_degree();
    // prod_{i in S} (1 + s_i)/2 = 2^-|S| sum_{T subset S} s_T
    std::map<VarMask, std::int64_t> numerators;
    for (const auto &[mask, c] : poly.terms()) {
        const std::int64_t scaled = checked_mul(c, std::int64_t{1} << (k - std::popcount(mask)));
        VarMask sub = mask;
        while (true) {
            numerators[sub] = checked_add(numerators[sub], scaled);
            if (sub == 0) {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    SpinHamiltonian h;
    h.n_qubits = poly.n_vars();
    for (const auto &[mask, num] : numerators) {
        if (num != 0) {
            h.terms.push_back({mask, Dyadic::normalized(num, k)});
        }
    }
    return h;
}

std::vector<double> diag_energies(const SpinHamiltonian &h, int max_qubits) {
    const ExactDiagonal d = exact_diagonal(h, max_qubits);
    const double scale = 1.0 / static_cast<double>(std::int64_t{1} << d.denom_pow2);
    std::vector<double> out(d.numerators.size());
    std::transform(d.numerators.begin(), d.numerators.end(), out.begin(),
                   [scale](std::int64_t v) { return static_cast<double>(v) * scale; });
    return out;
}

std::vector<GroundSolution> ground_solutions(const SpinHamiltonian &h, const BitAllocation &alloc, int max_qubits) {
    if (h.n_qubits != alloc.n_qubits()) {
        throw std::invalid_argument("Hamiltonian and allocation disagree on the qubit count");
    }
    const ExactDiagonal d = exact_diagonal(h, max_qubits);
    std::vector<GroundSolution> out;
    for (std::size_t z = 0; z < d.numerators.size(); ++z) {
        if (d.numerators[z] == 0) {
            const FactorPair f = decode(alloc, z);
            out.push_back({f.p, f.q, z});
        }
    }
    return out;
}

std::int64_t term_count_bound(int n) {
    if (n < 1) {
        throw std::invalid_argument("bit length must be at least 1");
    }
    const std::int64_t t = std::int64_t{n} * (n + 1) / 2;
    return t * t + 1;
}

std::size_t free_bit_term_count(int n) {
    if (n < 1 || 2 * n > 32) {
        throw std::invalid_argument("bit length out of range");
    }
    MultilinearPoly p(2 * n);
    MultilinearPoly q(2 * n);
    for (int k = 0; k < n; ++k) {
        p.add_term(VarMask{1} << k, std::int64_t{1} << k);
        q.add_term(VarMask{1} << (n + k), std::int64_t{1} << k);
    }
    const MultilinearPoly pq = p * q;
    const MultilinearPoly pq2 = pq * pq;
    // Every coefficient of pq and (pq)^2 is positive, so for symbolic N no
    // monomial of N^2 - 2N pq + (pq)^2 cancels.
    std::vector<VarMask> support{0};
    for (const auto &[mask, c] : pq.terms()) {
        support.push_back(mask);
    }
    for (const auto &[mask, c] : pq2.terms()) {
        support.push_back(mask);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return support.size();
}

} // namespace qitefactor
