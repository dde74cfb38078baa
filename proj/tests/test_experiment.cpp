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

#include "qitefactor/experiment.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace qitefactor;

namespace {

std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("qitefactor_exp_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Json load(const std::filesystem::path &p) { return Json::parse(slurp(p)); }

} // namespace

TEST_CASE("factor writes artifacts and verifies by multiplication", "[experiment]") {
    ExperimentConfig c;
    c.N = 91;
    c.allocation = std::pair{3, 4};
    c.seeds = {7};
    c.out_dir = scratch_dir("n91");
    std::ostringstream out;
    std::ostringstream err;
    REQUIRE(cmd_factor(c, out, err) == kExitVerified);
    const Json s = load(c.out_dir / "summary.json");
    const auto p = s.at("factors").at("p").get<std::uint64_t>();
    const auto q = s.at("factors").at("q").get<std::uint64_t>();
    CHECK(p * q == 91);
    CHECK((p == 7 || p == 13));
    CHECK(s.at("verified") == true);
    CHECK(s.at("config").at("n") == 91);
    const Json h = load(c.out_dir / "hamiltonian.json");
    CHECK(h.at("config").at("seeds") == Json::array({7}));
    CHECK(hamiltonian_from_json(h).n_qubits == 5);
    CHECK(slurp(c.out_dir / "seed_7" / "trace.csv").starts_with("iter,energy,amp_"));
    CHECK(load(c.out_dir / "seed_7" / "summary.json").at("config").at("seed") == 7);
}

TEST_CASE("rerunning from the echoed config reproduces the trace", "[experiment]") {
    ExperimentConfig c;
    c.N = 77;
    c.policy = AllocationPolicy::oracle_assisted;
    c.seeds = {3, 4};
    c.qite.init_mode = InitMode::random;
    c.out_dir = scratch_dir("repro_a");
    std::ostringstream sink;
    cmd_factor(c, sink, sink);
    ExperimentConfig again = experiment_from_json(load(c.out_dir / "summary.json").at("config"));
    again.out_dir = scratch_dir("repro_b");
    cmd_factor(again, sink, sink);
    for (const char *seed : {"seed_3", "seed_4"}) {
        CHECK(slurp(c.out_dir / seed / "trace.csv") == slurp(again.out_dir / seed / "trace.csv"));
    }
}

TEST_CASE("parallel seeds match serial seeds", "[experiment]") {
    ExperimentConfig c;
    c.N = 65;
    c.policy = AllocationPolicy::oracle_assisted;
    c.seeds = {0, 1, 2, 3};
    const auto serial = run_factor(c);
    c.jobs = 3;
    const auto parallel = run_factor(c);
    REQUIRE(serial.outcomes.size() == parallel.outcomes.size());
    for (std::size_t k = 0; k < serial.outcomes.size(); ++k) {
        CHECK(serial.outcomes[k].seed == parallel.outcomes[k].seed);
        CHECK(serial.outcomes[k].trace.final_params == parallel.outcomes[k].trace.final_params);
    }
}

TEST_CASE("exit codes", "[experiment]") {
    std::ostringstream out;
    std::ostringstream err;
    ExperimentConfig c;
    c.out_dir = scratch_dir("codes");

    c.N = 16;
    CHECK(cmd_factor(c, out, err) == kExitError);
    CHECK(err.str().find("N must be odd") != std::string::npos);

    // Threshold met by a wrong state's amplitude: arithmetic check fails.
    c.N = 91;
    c.allocation = std::pair{3, 4};
    c.qite.init_mode = InitMode::uniform;
    c.qite.amp_threshold = 0.1;
    const auto r = run_factor(c);
    REQUIRE(r.outcomes.size() == 1);
    CHECK(r.outcomes[0].trace.status == RunStatus::threshold_reached);
    CHECK_FALSE(r.outcomes[0].verified);
    CHECK(r.exit_code == kExitNotReached);

    c.qite = {};
    c.qite.max_iters = 1;
    CHECK(cmd_factor(c, out, err) == kExitNotReached);

    c.qite = {};
    c.max_qubits = 4;
    CHECK(cmd_factor(c, out, err) == kExitError);
    CHECK_THROWS_AS(run_factor(c), std::length_error);

    c.max_qubits = 12;
    c.out_dir = "/proc/qitefactor_unwritable";
    CHECK(cmd_factor(c, out, err) == kExitError);
}

TEST_CASE("oracle and compare methods", "[experiment]") {
    ExperimentConfig c;
    c.N = 15;
    c.method = Method::oracle;
    c.out_dir = scratch_dir("oracle");
    std::ostringstream sink;
    CHECK(cmd_factor(c, sink, sink) == kExitVerified);
    CHECK(load(c.out_dir / "summary.json").at("p_solution").get<double>() > 0.9);

    c.method = Method::compare;
    c.seeds = {0, 1};
    c.vqe.max_iters = 50;
    c.out_dir = scratch_dir("compare");
    CHECK(cmd_factor(c, sink, sink) == kExitVerified);
    const Json cmp = load(c.out_dir / "comparison.json");
    CHECK(cmp.at("runs").size() == 4);
    CHECK(cmp.at("summary").size() == 2);
}

TEST_CASE("corpus runs record per-entry outcomes", "[experiment]") {
    ExperimentConfig c;
    c.seeds = {0, 1};
    const std::vector<CorpusEntry> entries{{91, std::pair{3, 4}}, {91, std::pair{2, 6}}, {16, std::nullopt}, {55, std::nullopt}};
    c.policy = AllocationPolicy::oracle_assisted;
    const auto rows = run_corpus(entries, c);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].status == "ok");
    CHECK(rows[0].success_rate == 1.0);
    CHECK(rows[1].status == "no_ground_state");
    CHECK(rows[1].success_rate == 0.0);
    CHECK(rows[2].status == "error");
    CHECK(rows[2].error == "N must be odd");
    CHECK(rows[3].status == "ok");
    CHECK(rows[3].n_qubits == 5);

    CHECK(run_corpus({}, c).empty());
    c.out_dir = scratch_dir("corpus");
    std::ostringstream sink;
    CHECK(cmd_corpus({}, c, sink, sink) == kExitVerified);
    CHECK(load(c.out_dir / "corpus_report.json").at("entries").empty());

    CHECK(corpus_from_json(Json::parse(R"({"entries": [{"n": 55}]})")).size() == 1);
    CHECK_THROWS_AS(corpus_from_json(Json::parse(R"({"entries": [{"p_bits": 3}]})")), SchemaError);
    CHECK_THROWS_AS(corpus_from_json(Json::parse("[]")), SchemaError);
}

TEST_CASE("experiment config JSON", "[experiment]") {
    ExperimentConfig c;
    c.N = 221;
    c.allocation = std::pair{4, 5};
    c.method = Method::vqe;
    c.seeds = {1, 2, 3};
    c.vqe.eta = 0.05;
    const auto back = experiment_from_json(Json::parse(experiment_to_json(c).dump()));
    CHECK(experiment_to_json(back) == experiment_to_json(c));
    CHECK(experiment_from_json(Json::object()).N == 15);
    CHECK_THROWS_AS(experiment_from_json(Json::parse(R"({"method": "anneal"})")), SchemaError);
    CHECK_THROWS_AS(experiment_from_json(Json::parse(R"({"n": "big"})")), SchemaError);
    CHECK(parse_policy("oracle-assisted") == AllocationPolicy::oracle_assisted);
}

TEST_CASE("qubit cap from the environment", "[experiment]") {
    ::unsetenv("QITE_FACTOR_MAX_QUBITS");
    CHECK(ExperimentConfig::max_qubits_from_env() == 12);
    ::setenv("QITE_FACTOR_MAX_QUBITS", "9", 1);
    CHECK(ExperimentConfig::max_qubits_from_env() == 9);
    ::setenv("QITE_FACTOR_MAX_QUBITS", "lots", 1);
    CHECK_THROWS_AS(ExperimentConfig::max_qubits_from_env(), std::invalid_argument);
    ::unsetenv("QITE_FACTOR_MAX_QUBITS");
}

TEST_CASE("check suite and verify subcommand", "[experiment]") {
    for (const auto &r : run_checks()) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.pass);
    }
    const auto dir = scratch_dir("verify");
    std::filesystem::create_directories(dir);
    const auto h = binary_to_spin(build_cost_poly(15, allocate_bits(15, std::pair{3, 2})));
    std::ofstream(dir / "good.json") << hamiltonian_to_json(h).dump();
    std::ofstream(dir / "bad.json") << R"({"n_qubits": 3, "terms": [{"mask": 9, "num": 1, "denom_pow2": 0}]})";
    std::ofstream(dir / "broken.json") << "{\"n_qubits\": 3,";
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_verify(dir / "good.json", out, err) == kExitVerified);
    CHECK(out.str().find("1 zero-energy states") != std::string::npos);
    CHECK(cmd_verify(dir / "bad.json", out, err) == kExitError);
    CHECK(cmd_verify(dir / "broken.json", out, err) == kExitError);
    CHECK(err.str().find("schema error") != std::string::npos);
    CHECK(cmd_verify(dir / "missing.json", out, err) == kExitError);
}
