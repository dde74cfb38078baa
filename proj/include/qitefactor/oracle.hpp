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

#include <span>
#include <stdexcept>
#include <vector>

namespace qitefactor {

/// Exact imaginary-time path exp(-H tau)|psi(0)>, renormalized, at each tau.
struct ItePath {
    std::vector<double> times;
    std::vector<std::vector<double>> probabilities;
    std::vector<double> energies;
};

/// Raised when a target probability cannot be reached at any finite tau.
class UnreachableTarget : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Uniform superposition over all 2^Q basis states.
RealStatevector uniform_state(int n_qubits);

/// Renormalized exp(-H tau)|start> for diagonal H, computed in the log domain.
RealStatevector ite_state(const DiagonalOperator &h, double tau, const RealStatevector &start);

/// Throws std::invalid_argument for negative or descending taus.
ItePath ite_evolve(const DiagonalOperator &h, std::span<const double> taus, const RealStatevector &start);
ItePath ite_evolve(const DiagonalOperator &h, std::span<const double> taus);

/**
 * Smallest tau with P(target_index) >= target_prob, by bisection to 1e-9.
 * Throws UnreachableTarget when target_prob exceeds the tau -> infinity limit
 * (a target that is not a ground state of the support, or a share of a
 * degenerate ground space).
 */
double ite_target_time(const DiagonalOperator &h, const RealStatevector &start, double target_prob, std::uint64_t target_index);

/// Path as a trace (status oracle) with amplitudes sqrt(P) for the targets.
RunTrace to_trace(const ItePath &path, std::span<const std::uint64_t> targets);

} // namespace qitefactor
