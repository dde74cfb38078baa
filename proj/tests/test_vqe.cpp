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

#include "qitefactor/vqe.hpp"

#include <catch_amalgamated.hpp>

using namespace qitefactor;

TEST_CASE("identity-metric QITE step equals a VQE step", "[vqe][property]") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 5;
        const auto h = testing::random_diagonal(n, rng);
        const auto a = Ansatz::linear_chain(n, 1 + trial % 2);
        QiteConfig q;
        q.metric = MetricMode::identity;
        q.ridge_lambda = 0.0;
        q.dtau = 0.02 + 0.01 * trial;
        q.max_iters = 1;
        q.amp_threshold = 1.0;
        q.init_mode = InitMode::random;
        q.rng_seed = static_cast<std::uint64_t>(trial);
        VqeConfig v;
        v.eta = q.dtau / 2;
        v.max_iters = 1;
        v.amp_threshold = 1.0;
        v.init_mode = InitMode::random;
        v.rng_seed = q.rng_seed;
        const auto tq = run_qite(h, a, q);
        const auto tv = run_vqe(h, a, v);
        REQUIRE(tq.final_params.size() == tv.final_params.size());
        for (std::size_t i = 0; i < tq.final_params.size(); ++i) {
            CHECK(std::abs(tq.final_params[i] - tv.final_params[i]) <= 1e-12);
        }
    }
}

TEST_CASE("VQE descends on the N = 15 Hamiltonian", "[vqe]") {
    const DiagonalOperator h(binary_to_spin(build_cost_poly(15, allocate_bits(15, std::pair{3, 2}))));
    VqeConfig v;
    v.track_targets = {6};
    for (auto family : {AnsatzFamily::ry_only, AnsatzFamily::ry_rx}) {
        const auto t = run_vqe(h, Ansatz::linear_chain(3, 3, family), v);
        CHECK(t.method == "vqe");
        CHECK(t.energy_non_increasing(1e-6));
        CHECK(t.records.back().energy < t.records.front().energy);
    }
    VqeConfig bad;
    bad.eta = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("comparison report", "[vqe]") {
    const DiagonalOperator h(binary_to_spin(build_cost_poly(15, allocate_bits(15, std::pair{3, 2}))));
    QiteConfig q;
    q.track_targets = {6};
    VqeConfig v;
    v.track_targets = {6};
    v.max_iters = 200;
    const auto r = compare_runs(h, q, v, 3, 10);
    REQUIRE(r.rows.size() == 6);
    REQUIRE(r.summaries.size() == 2);
    CHECK(r.summaries[0].method == "qite");
    CHECK(r.summaries[1].method == "vqe");
    CHECK(r.rows[0].seed == 10);
    CHECK(r.rows[5].seed == 12);
    CHECK(r.summaries[0].success_rate == 1.0);
    const auto same = compare_runs(h, q, v, std::vector<std::uint64_t>{10, 11, 12});
    CHECK(same.rows.size() == r.rows.size());
    CHECK(same.rows[3].final_energy == r.rows[3].final_energy);
    CHECK_THROWS_AS(compare_runs(h, q, v, -1), std::invalid_argument);
}
