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

#include "qitefactor/simulator.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qitefactor {

enum class InitMode { uniform, random, perturbed };

/// Metric used on the left-hand side of the parameter update.
enum class MetricMode { mclachlan, identity };

/// How the stopping amplitude is observed.
enum class TrackingMode { exact_targets, sampled_max };

enum class RunStatus { threshold_reached, max_iters, numerical_failure, oracle };

std::string_view to_string(InitMode m);
std::string_view to_string(RunStatus s);
std::string_view to_string(TrackingMode m);
InitMode parse_init_mode(std::string_view s);
TrackingMode parse_tracking_mode(std::string_view s);

struct QiteConfig {
    double dtau = 0.1;
    int max_iters = 500;
    double amp_threshold = 0.85;
    double ridge_lambda = 1e-2;
    InitMode init_mode = InitMode::perturbed;
    double init_epsilon = 1e-2;
    std::uint64_t rng_seed = 0;
    int depth = 1;
    /// Basis indices whose amplitudes are tracked; empty means energy-only.
    std::vector<std::uint64_t> track_targets;
    /// The dynamics run on H * (energy_norm / max|diag H|). Unset keeps H as is.
    std::optional<double> energy_norm = 30.0;
    MetricMode metric = MetricMode::mclachlan;
    TrackingMode tracking = TrackingMode::exact_targets;
    std::uint64_t shots = 1024;

    void validate() const;
};

struct McLachlanSystem {
    Eigen::MatrixXd M;
    Eigen::VectorXd C;
};

struct IterationRecord {
    int iter = 0;
    double energy = 0.0;
    std::vector<double> target_amps;
    double param_norm = 0.0;
    double residual = 0.0;
    double grad_norm = 0.0;
    double wall_seconds = 0.0;
    /// Mode of the sampled histogram and its amplitude estimate (sampled_max only).
    std::optional<std::uint64_t> sampled_index;
    double sampled_amp = 0.0;
};

struct RunTrace {
    std::string method;
    std::vector<std::uint64_t> targets;
    std::vector<IterationRecord> records;
    RunStatus status = RunStatus::max_iters;
    ParamVector final_params;
    /// Multiplier applied to H for the dynamics (1 when unnormalized).
    double energy_scale = 1.0;
    /// Basis state that met the threshold, if any.
    std::optional<std::uint64_t> reached_index;

    [[nodiscard]] int iterations() const { return records.empty() ? 0 : records.back().iter; }
    [[nodiscard]] bool energy_non_increasing(double tol) const;
};

/// Multiplier that maps max|diag H| to energy_norm (1 if unset or H = 0).
double energy_scale_for(const DiagonalOperator &h, std::optional<double> energy_norm);

/**
 * Initial angles. uniform: base layer pi/2, everything else 0. random: all
 * angles uniform in [0, 2pi). perturbed: uniform plus U[-eps, eps] noise on
 * the non-base angles.
 */
ParamVector initial_params(const Ansatz &ansatz, InitMode mode, double epsilon, std::uint64_t seed);

/// M_ij = Re <d_i phi | d_j phi>.
Eigen::MatrixXd build_M(const Ansatz &ansatz, std::span<const double> params);

/// C_i = -Re <d_i phi | H | phi> = -(1/2) dE/d theta_i.
Eigen::VectorXd build_C(const Ansatz &ansatz, std::span<const double> params, const DiagonalOperator &h);

/// M and C from one set of derivative states.
McLachlanSystem build_system(const Ansatz &ansatz, std::span<const double> params, const DiagonalOperator &h);

struct StepResult {
    Eigen::VectorXd increment;
    double residual = 0.0;
    bool ok = true;
};

/**
 * Solves (M + ridge I) thetadot = C with a Cholesky factorization (LDLT if
 * that fails) and returns thetadot * dtau. The residual is ||M thetadot - C||
 * against the unregularized M. ok is false for non-finite input or output.
 */
StepResult solve_step(const Eigen::MatrixXd &M, const Eigen::VectorXd &C, double dtau, double ridge_lambda);

/// Variational imaginary-time loop. The ansatz qubit count must match h.
RunTrace run_qite(const DiagonalOperator &h, const Ansatz &ansatz, const QiteConfig &config);

/// F_ij = 4 Re(<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>). ry_only only.
Eigen::MatrixXd qfi_matrix(const Ansatz &ansatz, std::span<const double> params);

/// max |F_ij - 4 M_ij|. Throws std::invalid_argument for the ry_rx family.
double qfi_check(const Ansatz &ansatz, std::span<const double> params);

/**
 * Hardware circuit count per iteration for an n-bit number on a depth-d
 * circuit: terms * P circuits for C and P^2 for M, with terms =
 * term_count_bound(n) and P = n * max(d, 1).
 */
std::int64_t circuit_budget(int n_bits, int depth);

} // namespace qitefactor
