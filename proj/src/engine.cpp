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

#include "qitefactor/engine.hpp"

#include "descent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qitefactor {

namespace {

template <class T> McLachlanSystem assemble_impl(const Ansatz &ansatz, std::span<const double> params, const DiagonalOperator &h, bool need_metric) {
    const auto state = prepare<T>(ansatz, params);
    const auto derivs = derivative_states<T>(ansatz, params);
    const auto n = static_cast<Eigen::Index>(derivs.size());
    McLachlanSystem sys;
    sys.C.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        sys.C(i) = -transition_expectation(derivs[static_cast<std::size_t>(i)], h, state);
    }
    if (need_metric) {
        sys.M.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i; j < n; ++j) {
                const double v = overlap_re(derivs[static_cast<std::size_t>(i)], derivs[static_cast<std::size_t>(j)]);
                sys.M(i, j) = v;
                sys.M(j, i) = v;
            }
        }
    }
    return sys;
}

template <class T> struct Observation {
    double energy = 0.0;
    std::vector<double> amps;
};

template <class T> RunTrace run_descent_impl(const DiagonalOperator &h, const Ansatz &ansatz, const detail::LoopSettings &s, ParamVector params,
                                             const detail::StepFn &step) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const DiagonalOperator work = s.energy_scale == 1.0 ? h : h.scaled(s.energy_scale);

    RunTrace trace;
    trace.method = s.method;
    trace.targets = s.targets;
    trace.energy_scale = s.energy_scale;

    for (int iter = 0;; ++iter) {
        const auto state = prepare<T>(ansatz, params);
        IterationRecord rec;
        rec.iter = iter;
        rec.energy = expectation(state, h);
        for (auto z : s.targets) {
            rec.target_amps.push_back(std::abs(amplitude(state, z)));
        }
        double norm2 = 0.0;
        for (double p : params) {
            norm2 += p * p;
        }
        rec.param_norm = std::sqrt(norm2);

        const McLachlanSystem sys = assemble_impl<T>(ansatz, params, work, s.need_metric);
        // dE/dtheta = -2 C in the units of the unscaled Hamiltonian.
        rec.grad_norm = 2.0 * sys.C.norm() / s.energy_scale;
        const StepResult st = step(sys);
        rec.residual = st.residual;

        bool reached = false;
        if (s.tracking == TrackingMode::sampled_max) {
            const auto counts = sample(state, s.shots, detail::mix_seed(s.rng_seed, static_cast<std::uint64_t>(iter)));
            const auto it = std::max_element(counts.begin(), counts.end());
            rec.sampled_index = static_cast<std::uint64_t>(it - counts.begin());
            rec.sampled_amp = std::sqrt(static_cast<double>(*it) / static_cast<double>(s.shots));
            if (rec.sampled_amp >= s.amp_threshold) {
                reached = true;
                trace.reached_index = rec.sampled_index;
            }
        } else {
            for (std::size_t k = 0; k < s.targets.size(); ++k) {
                if (rec.target_amps[k] >= s.amp_threshold) {
                    reached = true;
                    trace.reached_index = s.targets[k];
                    break;
                }
            }
        }
        rec.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
        const bool finite = std::isfinite(rec.energy) && st.ok;
        trace.records.push_back(std::move(rec));

        if (!std::isfinite(trace.records.back().energy)) {
            trace.status = RunStatus::numerical_failure;
            break;
        }
        if (reached) {
            trace.status = RunStatus::threshold_reached;
            break;
        }
        if (iter >= s.max_iters) {
            trace.status = RunStatus::max_iters;
            break;
        }
        if (!finite) {
            trace.status = RunStatus::numerical_failure;
            break;
        }
        for (std::size_t i = 0; i < params.size(); ++i) {
            params[i] += st.increment(static_cast<Eigen::Index>(i));
        }
    }
    trace.final_params = std::move(params);
    return trace;
}

} // namespace

namespace detail {

McLachlanSystem assemble(const Ansatz &ansatz, std::span<const double> params, const DiagonalOperator &h, bool need_metric) {
    if (ansatz.family == AnsatzFamily::ry_only) {
        return assemble_impl<double>(ansatz, params, h, need_metric);
    }
    return assemble_impl<std::complex<double>>(ansatz, params, h, need_metric);
}

RunTrace run_descent(const DiagonalOperator &h, const Ansatz &ansatz, const LoopSettings &settings, ParamVector params, const StepFn &step) {
    if (ansatz.n_qubits != h.n_qubits()) {
        throw std::invalid_argument("ansatz has " + std::to_string(ansatz.n_qubits) + " qubits but the Hamiltonian has " +
                                    std::to_string(h.n_qubits()));
    }
    for (auto z : settings.targets) {
        if (z >= h.diag().size()) {
            throw std::out_of_range("tracked basis index out of range");
        }
    }
    if (ansatz.family == AnsatzFamily::ry_only) {
        return run_descent_impl<double>(h, ansatz, settings, std::move(params), step);
    }
    return run_descent_impl<std::complex<double>>(h, ansatz, settings, std::move(params), step);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t iter) {
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (iter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

std::string_view to_string(InitMode m) {
    switch (m) {
    case InitMode::uniform:
        return "uniform";
    case InitMode::random:
        return "random";
    case InitMode::perturbed:
        return "perturbed";
    }
    return "?";
}

std::string_view to_string(RunStatus s) {
    switch (s) {
    case RunStatus::threshold_reached:
        return "threshold_reached";
    case RunStatus::max_iters:
        return "max_iters";
    case RunStatus::numerical_failure:
        return "numerical_failure";
    case RunStatus::oracle:
        return "oracle";
    }
    return "?";
}

std::string_view to_string(TrackingMode m) { return m == TrackingMode::exact_targets ? "exact_targets" : "sampled_max"; }

InitMode parse_init_mode(std::string_view s) {
    if (s == "uniform") {
        return InitMode::uniform;
    }
    if (s == "random") {
        return InitMode::random;
    }
    if (s == "perturbed") {
        return InitMode::perturbed;
    }
    throw std::invalid_argument("unknown init mode '" + std::string(s) + "'");
}

TrackingMode parse_tracking_mode(std::string_view s) {
    if (s == "exact_targets") {
        return TrackingMode::exact_targets;
    }
    if (s == "sampled_max") {
        return TrackingMode::sampled_max;
    }
    throw std::invalid_argument("unknown tracking mode '" + std::string(s) + "'");
}

void QiteConfig::validate() const {
    if (!(dtau > 0.0)) {
        throw std::invalid_argument("dtau must be positive");
    }
    if (!(amp_threshold > 0.0 && amp_threshold <= 1.0)) {
        throw std::invalid_argument("amp_threshold must lie in (0, 1]");
    }
    if (!(ridge_lambda >= 0.0)) {
        throw std::invalid_argument("ridge_lambda must be non-negative");
    }
    if (max_iters < 0) {
        throw std::invalid_argument("max_iters must be non-negative");
    }
    if (depth < 0) {
        throw std::invalid_argument("depth must be non-negative");
    }
    if (energy_norm && !(*energy_norm > 0.0)) {
        throw std::invalid_argument("energy_norm must be positive");
    }
    if (tracking == TrackingMode::sampled_max && shots < 1) {
        throw std::invalid_argument("sampled tracking needs at least one shot");
    }
}

bool RunTrace::energy_non_increasing(double tol) const {
    for (std::size_t k = 1; k < records.size(); ++k) {
        if (records[k].energy > records[k - 1].energy + tol) {
            return false;
        }
    }
    return true;
}

double energy_scale_for(const DiagonalOperator &h, std::optional<double> energy_norm) {
    if (!energy_norm) {
        return 1.0;
    }
    const double m = h.max_abs();
    return m > 0.0 ? *energy_norm / m : 1.0;
}

ParamVector initial_params(const Ansatz &ansatz, InitMode mode, double epsilon, std::uint64_t seed) {
    ansatz.validate();
    ParamVector p(ansatz.parameter_count(), 0.0);
    std::mt19937_64 rng(seed);
    switch (mode) {
    case InitMode::random: {
        std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
        for (double &v : p) {
            v = u(rng);
        }
        break;
    }
    case InitMode::uniform:
    case InitMode::perturbed: {
        const auto base = static_cast<std::size_t>(ansatz.n_qubits);
        for (std::size_t i = 0; i < base; ++i) {
            p[i] = std::numbers::pi / 2;
        }
        if (mode == InitMode::perturbed) {
            std::uniform_real_distribution<double> u(-epsilon, epsilon);
            for (std::size_t i = base; i < p.size(); ++i) {
                p[i] = u(rng);
            }
        }
        break;
    }
    }
    return p;
}

Eigen::MatrixXd build_M(const Ansatz &ansatz, std::span<const double> params) {
    // C is not needed; a zero diagonal keeps the shared assembly path.
    const DiagonalOperator zero(ansatz.n_qubits, std::vector<double>(std::size_t{1} << ansatz.n_qubits, 0.0));
    return detail::assemble(ansatz, params, zero, true).M;
}

Eigen::VectorXd build_C(const Ansatz &ansatz, std::span<const double> params, const DiagonalOperator &h) {
    return detail::assemble(ansatz, params, h, false).C;
}

McLachlanSystem build_system(const Ansatz &ansatz, std::span<const double> params, const DiagonalOperator &h) {
    return detail::assemble(ansatz, params, h, true);
}

StepResult solve_step(const Eigen::MatrixXd &M, const Eigen::VectorXd &C, double dtau, double ridge_lambda) {
    if (M.rows() != M.cols() || M.rows() != C.size()) {
        throw std::invalid_argument("solve_step: dimension mismatch");
    }
    StepResult out;
    if (!M.allFinite() || !C.allFinite()) {
        out.ok = false;
        out.increment = Eigen::VectorXd::Zero(C.size());
        out.residual = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    Eigen::MatrixXd A = M;
    A.diagonal().array() += ridge_lambda;
    Eigen::VectorXd thetadot;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() == Eigen::Success) {
        thetadot = llt.solve(C);
    } else {
        thetadot = A.ldlt().solve(C);
    }
    out.residual = (M * thetadot - C).norm();
    out.increment = thetadot * dtau;
    out.ok = out.increment.allFinite();
    return out;
}

RunTrace run_qite(const DiagonalOperator &h, const Ansatz &ansatz, const QiteConfig &config) {
    config.validate();
    detail::LoopSettings s;
    s.method = "qite";
    s.max_iters = config.max_iters;
    s.amp_threshold = config.amp_threshold;
    s.tracking = config.tracking;
    s.shots = config.shots;
    s.rng_seed = config.rng_seed;
    s.targets = config.track_targets;
    s.energy_scale = energy_scale_for(h, config.energy_norm);
    s.need_metric = config.metric == MetricMode::mclachlan;

    const double dtau = config.dtau;
    const double ridge = config.ridge_lambda;
    detail::StepFn step;
    if (config.metric == MetricMode::mclachlan) {
        step = [dtau, ridge](const McLachlanSystem &sys) { return solve_step(sys.M, sys.C, dtau, ridge); };
    } else {
        step = [dtau, ridge](const McLachlanSystem &sys) {
            StepResult r;
            const Eigen::VectorXd thetadot = ridge == 0.0 ? Eigen::VectorXd(sys.C) : Eigen::VectorXd(sys.C / (1.0 + ridge));
            r.residual = (thetadot - sys.C).norm();
            r.increment = thetadot * dtau;
            r.ok = r.increment.allFinite();
            return r;
        };
    }
    return detail::run_descent(h, ansatz, s, initial_params(ansatz, config.init_mode, config.init_epsilon, config.rng_seed), step);
}

Eigen::MatrixXd qfi_matrix(const Ansatz &ansatz, std::span<const double> params) {
    if (ansatz.family != AnsatzFamily::ry_only) {
        throw std::invalid_argument("the QFI identity F = 4M holds only for the real-amplitude ry_only family");
    }
    const auto state = prepare<double>(ansatz, params);
    const auto derivs = derivative_states<double>(ansatz, params);
    const auto n = static_cast<Eigen::Index>(derivs.size());
    Eigen::VectorXd proj(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        proj(i) = overlap_re(derivs[static_cast<std::size_t>(i)], state);
    }
    Eigen::MatrixXd F(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            F(i, j) = 4.0 * (overlap_re(derivs[static_cast<std::size_t>(i)], derivs[static_cast<std::size_t>(j)]) - proj(i) * proj(j));
        }
    }
    return F;
}

double qfi_check(const Ansatz &ansatz, std::span<const double> params) {
    const Eigen::MatrixXd F = qfi_matrix(ansatz, params);
    const Eigen::MatrixXd M = build_M(ansatz, params);
    return (F - 4.0 * M).cwiseAbs().maxCoeff();
}

std::int64_t circuit_budget(int n_bits, int depth) {
    if (n_bits < 1 || depth < 0) {
        throw std::invalid_argument("circuit_budget needs n >= 1 and d >= 0");
    }
    const std::int64_t params = std::int64_t{n_bits} * std::max(depth, 1);
    return term_count_bound(n_bits) * params + params * params;
}

} // namespace qitefactor
