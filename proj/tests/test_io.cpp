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

#include "qitefactor/io.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>

using namespace qitefactor;

namespace {

std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("qitefactor_io_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("Hamiltonian JSON round trip", "[io]") {
    for (std::uint64_t N : {15, 91, 247}) {
        const auto h = binary_to_spin(build_cost_poly(N, allocate_bits_oracle(N)));
        const Json j = hamiltonian_to_json(h);
        CHECK(hamiltonian_from_json(Json::parse(j.dump())) == h);
    }
    const Json half = {{"n_qubits", 2}, {"terms", {{{"mask", 0}, {"num", 6}, {"denom_pow2", 2}}}}};
    CHECK(hamiltonian_from_json(half).terms[0].coeff == Dyadic{3, 1});
}

TEST_CASE("Hamiltonian JSON schema errors", "[io]") {
    const auto bad = [](const char *text) { return hamiltonian_from_json(Json::parse(text)); };
    CHECK_THROWS_AS(bad("[]"), SchemaError);
    CHECK_THROWS_AS(bad(R"({"terms": []})"), SchemaError);
    CHECK_THROWS_AS(bad(R"({"n_qubits": 2})"), SchemaError);
    CHECK_THROWS_AS(bad(R"({"n_qubits": 2, "terms": [{"mask": 0, "num": 1}]})"), SchemaError);
    CHECK_THROWS_AS(bad(R"({"n_qubits": 2, "terms": [{"mask": 4, "num": 1, "denom_pow2": 0}]})"), SchemaError);
    CHECK_THROWS_AS(bad(R"({"n_qubits": 2, "terms": [{"mask": 1, "num": 1.5, "denom_pow2": 0}]})"), SchemaError);
    CHECK_THROWS_AS(bad(R"({"n_qubits": 2, "terms": [{"mask": 2, "num": 1, "denom_pow2": 0},
                                                     {"mask": 1, "num": 1, "denom_pow2": 0}]})"),
                    SchemaError);
    CHECK_THROWS_AS(bad(R"({"n_qubits": 2, "terms": [{"mask": 1, "num": 1, "denom_pow2": -1}]})"), SchemaError);
    CHECK_THROWS_AS(bad(R"({"n_qubits": "two", "terms": []})"), SchemaError);
}

TEST_CASE("ansatz JSON round trip", "[io]") {
    auto a = Ansatz::linear_chain(4, 2, AnsatzFamily::ry_rx);
    a.entangler.emplace_back(3, 0);
    CHECK(ansatz_from_json(ansatz_to_json(a)) == a);
    CHECK_THROWS_AS(ansatz_from_json(Json::parse(R"({"n_qubits": 2, "depth": 1, "family": "ry_only", "entangler": [[0]]})")),
                    SchemaError);
    CHECK_THROWS_AS(ansatz_from_json(Json::parse(R"({"n_qubits": 2, "depth": 1, "family": "zz", "entangler": []})")), SchemaError);
}

TEST_CASE("statevector binary dump", "[io]") {
    const auto dir = scratch_dir("sv");
    std::mt19937_64 rng(5);
    const auto a = Ansatz::linear_chain(4, 1);
    const auto s = prepare<double>(a, testing::random_angles(a.parameter_count(), rng));
    write_statevector(dir / "real", s);
    CHECK(std::filesystem::file_size(dir / "real.bin") == 16 * sizeof(double));
    const auto back = read_real_statevector(dir / "real");
    for (std::size_t z = 0; z < s.size(); ++z) {
        CHECK(back[z] == s[z]);
    }
    std::ifstream meta(dir / "real.json");
    const Json m = Json::parse(meta);
    CHECK(m.at("n_qubits") == 4);
    CHECK(m.at("complex") == false);
    CHECK(m.at("norm").get<double>() == Catch::Approx(1.0));

    const auto c = prepare<std::complex<double>>(Ansatz::linear_chain(3, 1, AnsatzFamily::ry_rx), std::vector<double>(9, 0.3));
    write_statevector(dir / "cplx", c);
    CHECK(std::filesystem::file_size(dir / "cplx.bin") == 8 * 2 * sizeof(double));
    CHECK_THROWS_AS(read_real_statevector(dir / "cplx"), SchemaError);
}

TEST_CASE("config JSON round trip", "[io]") {
    QiteConfig q;
    q.dtau = 0.05;
    q.energy_norm.reset();
    q.track_targets = {3, 9};
    q.tracking = TrackingMode::sampled_max;
    const auto q2 = qite_config_from_json(Json::parse(qite_config_to_json(q).dump()));
    CHECK(qite_config_to_json(q2) == qite_config_to_json(q));
    CHECK_FALSE(q2.energy_norm.has_value());
    CHECK_FALSE(qite_config_from_json(Json::parse(R"({"energy_norm": "raw"})")).energy_norm.has_value());
    CHECK(qite_config_from_json(Json::object()).dtau == 0.1);
    CHECK_THROWS_AS(qite_config_from_json(Json::parse(R"({"dtau": "fast"})")), SchemaError);
    CHECK_THROWS_AS(qite_config_from_json(Json::parse(R"({"init_mode": "zeros"})")), SchemaError);

    VqeConfig v;
    v.eta = 0.02;
    v.family = AnsatzFamily::ry_only;
    CHECK(vqe_config_to_json(vqe_config_from_json(vqe_config_to_json(v))) == vqe_config_to_json(v));
}

TEST_CASE("trace CSV and summary", "[io]") {
    RunTrace t;
    t.method = "qite";
    t.targets = {6};
    t.records.push_back({0, 90.0, {0.35}, 2.5, 0.1, 3.0, 0.0, std::nullopt, 0.0});
    t.records.push_back({1, 79.5, {0.4}, 2.6, 0.2, 2.0, 0.0, std::nullopt, 0.0});
    t.status = RunStatus::threshold_reached;
    CHECK(trace_csv(t) == "iter,energy,amp_6,param_norm,residual,grad_norm\n0,90,0.35,2.5,0.1,3\n1,79.5,0.4,2.6,0.2,2\n");
    t.records[1].sampled_index = 6;
    t.records[1].sampled_amp = 0.5;
    CHECK(trace_csv(t).starts_with("iter,energy,amp_6,param_norm,residual,grad_norm,sampled_index,sampled_amp\n"));
    const Json s = trace_summary(t, {{"seed", 4}});
    CHECK(s.at("status") == "threshold_reached");
    CHECK(s.at("iterations") == 1);
    CHECK(s.at("final_amplitudes").at("6") == 0.4);
    CHECK(s.at("config").at("seed") == 4);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-300) == "1e-300");
}
