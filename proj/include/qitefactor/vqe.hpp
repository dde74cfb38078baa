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

#include "qitefactor/engine.hpp"

#include <string>
#include <vector>

namespace qitefactor {

struct VqeConfig {
    double eta = 0.01;
    int max_iters = 2000;
    double amp_threshold = 0.85;
    InitMode init_mode = InitMode::perturbed;
    double init_epsilon = 1e-2;
    std::uint64_t rng_seed = 0;
    AnsatzFamily family = AnsatzFamily::ry_rx;
    int depth = 3;
    std::vector<std::uint64_t> track_targets;
    /// Same meaning as QiteConfig::energy_norm.
    std::optional<double> energy_norm = 30.0;
    TrackingMode tracking = TrackingMode::exact_targets;
    std::uint64_t shots = 1024;

    void validate() const;
};

/// Plain gradient descent theta <- theta - eta * dE/dtheta, with the gradient
/// taken as -2 C from the QITE assembly.
RunTrace run_vqe(const DiagonalOperator &h, const Ansatz &ansatz, const VqeConfig &config);

struct ComparisonRow {
    std::string method;
    std::uint64_t seed = 0;
    RunStatus status = RunStatus::max_iters;
    int iterations = 0;
    double final_energy = 0.0;
    /// Largest tracked amplitude at termination (0 without targets).
    double final_target_amp = 0.0;
    double mean_grad_norm = 0.0;
};

struct MethodSummary {
    std::string method;
    double success_rate = 0.0;
    double median_iterations = 0.0; ///< over successful runs; NaN if none
    double median_final_energy = 0.0;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::vector<MethodSummary> summaries;
};

ComparisonRow summarize_run(const RunTrace &trace, std::uint64_t seed);

/// Runs both methods for seeds first_seed .. first_seed + n_seeds - 1. The
/// configs' own rng_seed fields are overridden per seed.
ComparisonReport compare_runs(const DiagonalOperator &h, const QiteConfig &qite, const VqeConfig &vqe, int n_seeds,
                              std::uint64_t first_seed = 0);
ComparisonReport compare_runs(const DiagonalOperator &h, const QiteConfig &qite, const VqeConfig &vqe,
                              const std::vector<std::uint64_t> &seeds);

} // namespace qitefactor
