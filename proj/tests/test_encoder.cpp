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

#include "oracles.hpp"

#include "qitefactor/encoder.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace qitefactor;
using qitefactor::testing::cost_of;

namespace {

std::vector<std::int64_t> truth_table(std::uint64_t N, const BitAllocation &a) {
    std::vector<std::int64_t> t(std::size_t{1} << a.n_qubits());
    for (std::size_t z = 0; z < t.size(); ++z) {
        t[z] = cost_of(N, a, z);
    }
    return t;
}

} // namespace

TEST_CASE("allocation errors and policies", "[encoder]") {
    CHECK_THROWS_WITH(allocate_bits(16), "N must be odd");
    CHECK_THROWS_WITH(allocate_bits(7), Catch::Matchers::ContainsSubstring("at least 9"));
    CHECK_THROWS_AS(allocate_bits(15, std::pair{1, 4}), std::invalid_argument);
    CHECK_THROWS_AS(allocate_bits_oracle(97), std::invalid_argument);

    const auto h = allocate_bits(15);
    CHECK(h.m == 2);
    CHECK(h.l == 3);
    const auto o = allocate_bits_oracle(91);
    CHECK(o.m == 3);
    CHECK(o.l == 4);
    CHECK(o.n_qubits() == 5);
    const auto w = allocate_bits(15, std::pair{3, 2});
    CHECK(w.n_qubits() == 3);
    CHECK(w.q_var(1) == 2);
}

TEST_CASE("N = 15 binary coefficients", "[encoder][golden]") {
    const auto poly = build_cost_poly(15, allocate_bits(15, std::pair{3, 2}));
    // x0, x1 are p's bits 1 and 2; x2 is q's bit 1.
    const std::map<VarMask, std::int64_t> expected{{0b000, 196}, {0b100, -52}, {0b001, -52}, {0b101, -56},
                                                   {0b010, -96}, {0b110, -48}, {0b011, 16},  {0b111, 128}};
    CHECK(poly.terms() == expected);
}

TEST_CASE("N = 15 spin coefficients", "[encoder][golden]") {
    const auto h = binary_to_spin(build_cost_poly(15, allocate_bits(15, std::pair{3, 2})));
    const std::map<VarMask, std::int64_t> expected{{0b000, 90}, {0b100, -36}, {0b010, -40}, {0b001, -20},
                                                   {0b101, 2},  {0b110, 4},   {0b011, 20},  {0b111, 16}};
    REQUIRE(h.terms.size() == expected.size());
    for (const auto &t : h.terms) {
        INFO("mask " << t.mask);
        CHECK(t.coeff == Dyadic{expected.at(t.mask), 0});
    }
    // Pauli-Z form flips odd-weight terms.
    CHECK(SpinHamiltonian::z_string_coeff({0b110, {4, 0}}) == Dyadic{4, 0});
    CHECK(SpinHamiltonian::z_string_coeff({0b111, {16, 0}}) == Dyadic{-16, 0});
}

TEST_CASE("symbolic expansion matches truth-table inversion", "[encoder][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 4);
        const int l = 2 + static_cast<int>(rng() % 4);
        const std::uint64_t N = 9 + 2 * (rng() % ((std::uint64_t{1} << (m + l - 1)) / 2));
        const auto a = allocate_bits(N, std::pair{m, l});
        INFO("N " << N << " (" << m << "," << l << ")");
        const auto table = truth_table(N, a);
        const auto poly = build_cost_poly(N, a);
        CHECK(poly.terms() == testing::moebius_coefficients(table));
        const auto h = binary_to_spin(poly);
        const auto spin = testing::spin_coefficients(table, a.n_qubits());
        REQUIRE(h.terms.size() == spin.size());
        for (const auto &t : h.terms) {
            CHECK(t.coeff == spin.at(t.mask));
        }
    }
}

TEST_CASE("diagonal equals the integer cost on every basis state", "[encoder][property]") {
    for (std::uint64_t N : {15, 21, 35, 55, 91, 143, 247, 1007}) {
        for (const auto &a : {allocate_bits(N), allocate_bits_oracle(N)}) {
            if (a.n_qubits() > 12) {
                continue;
            }
            const auto h = binary_to_spin(build_cost_poly(N, a));
            const auto diag = diag_energies(h);
            REQUIRE(diag.size() == std::size_t{1} << a.n_qubits());
            for (std::size_t z = 0; z < diag.size(); ++z) {
                REQUIRE(diag[z] == static_cast<double>(cost_of(N, a, z)));
                REQUIRE(h.evaluate_exact(z) == Dyadic{cost_of(N, a, z), 0});
            }
        }
    }
    const auto h15 = binary_to_spin(build_cost_poly(15, allocate_bits(15, std::pair{3, 2})));
    const auto d = diag_energies(h15);
    CHECK(d[3] == 64.0);
    CHECK(d[6] == 0.0);
    CHECK_THROWS_AS(diag_energies(h15, 2), std::length_error);
}

TEST_CASE("ground solutions decode to factor pairs", "[encoder]") {
    const auto a15 = allocate_bits(15, std::pair{3, 2});
    const auto g = ground_solutions(binary_to_spin(build_cost_poly(15, a15)), a15);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == GroundSolution{5, 3, 6});

    const auto a91 = allocate_bits_oracle(91);
    const auto g91 = ground_solutions(binary_to_spin(build_cost_poly(91, a91)), a91);
    REQUIRE(g91.size() == 1);
    CHECK(g91[0].p * g91[0].q == 91);

    // 91 = 7 x 13 has no 2-bit factor.
    const auto bad = allocate_bits(91, std::pair{2, 6});
    CHECK(ground_solutions(binary_to_spin(build_cost_poly(91, bad)), bad).empty());

    // Symmetric allocation admits both orderings.
    const auto sym = allocate_bits(35, std::pair{3, 3});
    CHECK(ground_solutions(binary_to_spin(build_cost_poly(35, sym)), sym).size() == 2);
}

TEST_CASE("decode inverts the variable layout", "[encoder]") {
    const auto a = allocate_bits(143, std::pair{4, 4});
    for (std::uint64_t z = 0; z < 64; ++z) {
        const auto f = decode(a, z);
        CHECK(f.p % 2 == 1);
        CHECK(f.q % 2 == 1);
        CHECK(static_cast<std::int64_t>((143 - static_cast<std::int64_t>(f.p * f.q)) * (143 - static_cast<std::int64_t>(f.p * f.q))) ==
              cost_of(143, a, z));
    }
}

TEST_CASE("free-bit term count against the closed form", "[encoder]") {
    for (int n = 1; n <= 5; ++n) {
        const auto count = static_cast<std::int64_t>(free_bit_term_count(n));
        const std::int64_t t = n * (n + 1) / 2;
        CHECK(term_count_bound(n) == t * t + 1);
        CHECK(count <= term_count_bound(n));
        // Independent count: Moebius support of (N - p q)^2 with generic N.
        std::vector<std::int64_t> table(std::size_t{1} << (2 * n));
        for (std::size_t z = 0; z < table.size(); ++z) {
            const auto p = static_cast<std::int64_t>(z & ((1U << n) - 1));
            const auto q = static_cast<std::int64_t>(z >> n);
            const std::int64_t d = 1000003 - p * q;
            table[z] = d * d;
        }
        CHECK(static_cast<std::int64_t>(testing::moebius_coefficients(table).size()) == count);
    }
    CHECK(free_bit_term_count(2) == 10);
    CHECK(free_bit_term_count(3) == 37);
}

TEST_CASE("polynomial arithmetic", "[encoder]") {
    const auto x0 = MultilinearPoly::variable(2, 0);
    const auto x1 = MultilinearPoly::variable(2, 1);
    const auto p = (x0 + x1) * (x0 + x1); // x0 + x1 + 2 x0 x1 after x^2 = x
    CHECK(p.coeff(0b01) == 1);
    CHECK(p.coeff(0b10) == 1);
    CHECK(p.coeff(0b11) == 2);
    CHECK((p - p).size() == 0);
    CHECK(p.evaluate(0b11) == 4);
    CHECK_THROWS_AS(MultilinearPoly::variable(2, 2), std::out_of_range);

    auto big = MultilinearPoly::constant(1, std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * big, std::overflow_error);
    CHECK(Dyadic::normalized(12, 3) == Dyadic{3, 1});
    CHECK(Dyadic::normalized(0, 5) == Dyadic{0, 0});
}
