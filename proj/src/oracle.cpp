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

#include "qitefactor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qitefactor {

namespace {

void check_start(const DiagonalOperator &h, const RealStatevector &start) {
    if (start.size() != h.diag().size()) {
        throw std::invalid_argument("start state and Hamiltonian dimensions differ");
    }
}

// Probabilities |a_z|^2 e^{-2 E_z tau} / Z, shifted by the smallest energy
// in the support so the largest weight never underflows.
std::vector<double> evolved_probs(const DiagonalOperator &h, double tau, const RealStatevector &start) {
    const std::size_t dim = start.size();
    double e_min = std::numeric_limits<double>::infinity();
    for (std::size_t z = 0; z < dim; ++z) {
        if (start[z] != 0.0) {
            e_min = std::min(e_min, h[z]);
        }
    }
    std::vector<double> logw(dim, -std::numeric_limits<double>::infinity());
    double lmax = -std::numeric_limits<double>::infinity();
    for (std::size_t z = 0; z < dim; ++z) {
        if (start[z] != 0.0) {
            logw[z] = 2.0 * std::log(std::abs(start[z])) - 2.0 * (h[z] - e_min) * tau;
            lmax = std::max(lmax, logw[z]);
        }
    }
    std::vector<double> p(dim, 0.0);
    double total = 0.0;
    for (std::size_t z = 0; z < dim; ++z) {
        if (std::isfinite(logw[z])) {
            p[z] = std::exp(logw[z] - lmax);
            total += p[z];
        }
    }
    for (double &v : p) {
        v /= total;
    }
    return p;
}

double mean_energy(const DiagonalOperator &h, const std::vector<double> &p) {
    double e = 0.0;
    for (std::size_t z = 0; z < p.size(); ++z) {
        e += p[z] * h[z];
    }
    return e;
}

} // namespace

RealStatevector uniform_state(int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    return RealStatevector(n_qubits, std::vector<double>(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

RealStatevector ite_state(const DiagonalOperator &h, double tau, const RealStatevector &start) {
    check_start(h, start);
    const auto p = evolved_probs(h, tau, start);
    std::vector<double> a(p.size());
    for (std::size_t z = 0; z < p.size(); ++z) {
        a[z] = std::copysign(std::sqrt(p[z]), start[z]);
    }
    return RealStatevector(start.n_qubits(), std::move(a));
}

ItePath ite_evolve(const DiagonalOperator &h, std::span<const double> taus, const RealStatevector &start) {
    check_start(h, start);
    ItePath path;
    double prev = 0.0;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        if (taus[k] < 0.0 || (k > 0 && taus[k] < prev)) {
            throw std::invalid_argument("imaginary times must be non-negative and ascending");
        }
        prev = taus[k];
        auto p = evolved_probs(h, taus[k], start);
        path.times.push_back(taus[k]);
        path.energies.push_back(mean_energy(h, p));
        path.probabilities.push_back(std::move(p));
    }
    return path;
}

ItePath ite_evolve(const DiagonalOperator &h, std::span<const double> taus) { return ite_evolve(h, taus, uniform_state(h.n_qubits())); }

double ite_target_time(const DiagonalOperator &h, const RealStatevector &start, double target_prob, std::uint64_t target_index) {
    check_start(h, start);
    if (target_index >= start.size()) {
        throw std::out_of_range("target index out of range");
    }
    if (!(target_prob > 0.0 && target_prob <= 1.0)) {
        throw std::invalid_argument("target probability must lie in (0, 1]");
    }
    const auto prob_at = [&](double tau) { return evolved_probs(h, tau, start)[target_index]; };
    if (prob_at(0.0) >= target_prob) {
        return 0.0;
    }
    // Limit tau -> infinity: the target keeps its share of the lowest-energy
    // part of the support, or vanishes if it is not in it.
    double e_min = std::numeric_limits<double>::infinity();
    for (std::size_t z = 0; z < start.size(); ++z) {
        if (start[z] != 0.0) {
            e_min = std::min(e_min, h[z]);
        }
    }
    double limit = 0.0;
    if (start[target_index] != 0.0 && h[target_index] == e_min) {
        double ground_weight = 0.0;
        for (std::size_t z = 0; z < start.size(); ++z) {
            if (start[z] != 0.0 && h[z] == e_min) {
                ground_weight += start[z] * start[z];
            }
        }
        limit = start[target_index] * start[target_index] / ground_weight;
    }
    if (limit < target_prob || (limit == target_prob && limit < 1.0)) {
        throw UnreachableTarget("target probability " + std::to_string(target_prob) + " is unreachable (limit " +
                                std::to_string(limit) + ")");
    }
    double lo = 0.0;
    double hi = 1e-3;
    while (prob_at(hi) < target_prob) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw UnreachableTarget("target probability not reached at any finite time");
        }
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (prob_at(mid) >= target_prob) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

RunTrace to_trace(const ItePath &path, std::span<const std::uint64_t> targets) {
    RunTrace t;
    t.method = "oracle";
    t.status = RunStatus::oracle;
    t.targets.assign(targets.begin(), targets.end());
    for (std::size_t k = 0; k < path.times.size(); ++k) {
        IterationRecord r;
        r.iter = static_cast<int>(k);
        r.energy = path.energies[k];
        for (auto z : targets) {
            r.target_amps.push_back(std::sqrt(path.probabilities[k].at(z)));
        }
        t.records.push_back(std::move(r));
    }
    return t;
}

} // namespace qitefactor
