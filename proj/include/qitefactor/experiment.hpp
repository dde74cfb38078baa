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

// Experiment driver behind the qite_factor command-line tool.

#pragma once

#include "qitefactor/io.hpp"
#include "qitefactor/oracle.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qitefactor {

inline constexpr int kExitVerified = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotReached = 2;

enum class Method { qite, vqe, oracle, compare };

std::string_view to_string(Method m);
Method parse_method(std::string_view s);
std::string_view to_string(AllocationPolicy p);
AllocationPolicy parse_policy(std::string_view s);

struct ExperimentConfig {
    std::uint64_t N = 15;
    std::optional<std::pair<int, int>> allocation;
    AllocationPolicy policy = AllocationPolicy::heuristic;
    Method method = Method::qite;
    QiteConfig qite;
    VqeConfig vqe;
    /// Final imaginary time for the oracle method (sampled every qite.dtau).
    double tau = 1.0;
    std::filesystem::path out_dir = "qite_out";
    std::vector<std::uint64_t> seeds{0};
    int jobs = 1;
    int max_qubits = 12;

    /// Reads QITE_FACTOR_MAX_QUBITS if set.
    static int max_qubits_from_env();
};

Json experiment_to_json(const ExperimentConfig &c);
/// Every field is optional; missing fields keep their defaults.
ExperimentConfig experiment_from_json(const Json &j, ExperimentConfig defaults = {});

/// Resolves the allocation for N under the config's override or policy.
BitAllocation resolve_allocation(std::uint64_t N, const std::optional<std::pair<int, int>> &override, AllocationPolicy policy);

struct SeedOutcome {
    std::uint64_t seed = 0;
    RunTrace trace;
    std::uint64_t best_index = 0; ///< highest-amplitude state at termination
    double best_amplitude = 0.0;
    FactorPair factors;
    bool verified = false; ///< threshold reached and p * q == N
};

struct FactorResult {
    BitAllocation allocation;
    SpinHamiltonian hamiltonian;
    std::vector<GroundSolution> ground;
    std::vector<SeedOutcome> outcomes;
    std::optional<ComparisonReport> comparison;
    int exit_code = kExitError;
};

/**
 * Runs the configured method. Throws std::invalid_argument for invalid N or
 * allocation and std::length_error when Q exceeds max_qubits. Writes nothing.
 */
FactorResult run_factor(const ExperimentConfig &config);

/// run_factor plus artifacts under out_dir; returns the exit code and reports
/// errors on `err` instead of throwing.
int cmd_factor(const ExperimentConfig &config, std::ostream &out, std::ostream &err);

struct CorpusEntry {
    std::uint64_t N = 0;
    std::optional<std::pair<int, int>> allocation;
};

/// {"entries": [{"n": 55, "p_bits": 3, "q_bits": 4}, ...]}
std::vector<CorpusEntry> corpus_from_json(const Json &j);

struct CorpusRow {
    std::uint64_t N = 0;
    int n_qubits = 0;
    std::string status; ///< ok, no_ground_state or error
    std::string error;
    double success_rate = 0.0;
    double median_iterations = 0.0; ///< over successful seeds; NaN if none
    std::vector<int> iterations;    ///< per seed, -1 when not reached
    bool energy_non_increasing = true;
};

/// QITE over every entry and seed; per-entry failures are recorded.
std::vector<CorpusRow> run_corpus(const std::vector<CorpusEntry> &entries, const ExperimentConfig &config);
int cmd_corpus(const std::vector<CorpusEntry> &entries, const ExperimentConfig &config, std::ostream &out, std::ostream &err);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Fast invariant suite: N = 15 goldens, gradient and QFI identities, and an
/// engine/oracle overlay (written to overlay_dir when given).
std::vector<CheckResult> run_checks(const std::optional<std::filesystem::path> &overlay_dir = std::nullopt);
int cmd_check(std::ostream &out, const std::optional<std::filesystem::path> &overlay_dir = std::nullopt);

/// Parses and sanity-checks a Hamiltonian JSON file. Schema errors exit 1.
int cmd_verify(const std::filesystem::path &hamiltonian_file, std::ostream &out, std::ostream &err);

} // namespace qitefactor
