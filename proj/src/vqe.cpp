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

#include "qitefactor/vqe.hpp"

#include "descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qitefactor {

namespace {

double median(std::vector<double> v) {
    if (v.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

MethodSummary summarize(const std::string &method, const std::vector<ComparisonRow> &rows) {
    MethodSummary s;
    s.method = method;
    std::vector<double> iters;
    std::vector<double> energies;
    int total = 0;
    for (const auto &r : rows) {
        if (r.method != method) {
            continue;
        }
        ++total;
        energies.push_back(r.final_energy);
        if (r.status == RunStatus::threshold_reached) {
            iters.push_back(r.iterations);
        }
    }
    s.success_rate = total == 0 ? 0.0 : static_cast<double>(iters.size()) / total;
    s.median_iterations = median(iters);
    s.median_final_energy = median(energies);
    return s;
}

} // namespace

void VqeConfig::validate() const {
    if (!(eta > 0.0)) {
        throw std::invalid_argument("eta must be positive");
    }
    if (!(amp_threshold > 0.0 && amp_threshold <= 1.0)) {
        throw std::invalid_argument("amp_threshold must lie in (0, 1]");
    }
    if (max_iters < 0 || depth < 0) {
        throw std::invalid_argument("max_iters and depth must be non-negative");
    }
    if (energy_norm && !(*energy_norm > 0.0)) {
        throw std::invalid_argument("energy_norm must be positive");
    }
}

RunTrace run_vqe(const DiagonalOperator &h, const Ansatz &ansatz, const VqeConfig &config) {
    config.validate();
    detail::LoopSettings s;
    s.method = "vqe";
    s.max_iters = config.max_iters;
    s.amp_threshold = config.amp_threshold;
    s.tracking = config.tracking;
    s.shots = config.shots;
    s.rng_seed = config.rng_seed;
    s.targets = config.track_targets;
    s.energy_scale = energy_scale_for(h, config.energy_norm);
    s.need_metric = false;

    const double eta = config.eta;
    const detail::StepFn step = [eta](const McLachlanSystem &sys) {
        StepResult r;
        const Eigen::VectorXd grad = -2.0 * sys.C;
        r.increment = -eta * grad;
        r.residual = 0.0;
        r.ok = r.increment.allFinite();
        return r;
    };
    return detail::run_descent(h, ansatz, s, initial_params(ansatz, config.init_mode, config.init_epsilon, config.rng_seed), step);
}

ComparisonRow summarize_run(const RunTrace &trace, std::uint64_t seed) {
    ComparisonRow row;
    row.method = trace.method;
    row.seed = seed;
    row.status = trace.status;
    row.iterations = trace.iterations();
    if (!trace.records.empty()) {
        const auto &last = trace.records.back();
        row.final_energy = last.energy;
        for (double a : last.target_amps) {
            row.final_target_amp = std::max(row.final_target_amp, a);
        }
        double g = 0.0;
        for (const auto &r : trace.records) {
            g += r.grad_norm;
        }
        row.mean_grad_norm = g / static_cast<double>(trace.records.size());
    }
    return row;
}

ComparisonReport compare_runs(const DiagonalOperator &h, const QiteConfig &qite, const VqeConfig &vqe, int n_seeds, std::uint64_t first_seed) {
    if (n_seeds < 0) {
        throw std::invalid_argument("n_seeds must be non-negative");
    }
    std::vector<std::uint64_t> seeds;
    for (int k = 0; k < n_seeds; ++k) {
        seeds.push_back(first_seed + static_cast<std::uint64_t>(k));
    }
    return compare_runs(h, qite, vqe, seeds);
}

ComparisonReport compare_runs(const DiagonalOperator &h, const QiteConfig &qite, const VqeConfig &vqe,
                              const std::vector<std::uint64_t> &seeds) {
    ComparisonReport report;
    const Ansatz qite_ansatz = Ansatz::linear_chain(h.n_qubits(), qite.depth, AnsatzFamily::ry_only);
    const Ansatz vqe_ansatz = Ansatz::linear_chain(h.n_qubits(), vqe.depth, vqe.family);
    for (const auto seed : seeds) {
        QiteConfig qc = qite;
        qc.rng_seed = seed;
        report.rows.push_back(summarize_run(run_qite(h, qite_ansatz, qc), seed));
        VqeConfig vc = vqe;
        vc.rng_seed = seed;
        report.rows.push_back(summarize_run(run_vqe(h, vqe_ansatz, vc), seed));
    }
    report.summaries.push_back(summarize("qite", report.rows));
    report.summaries.push_back(summarize("vqe", report.rows));
    return report;
}

} // namespace qitefactor
