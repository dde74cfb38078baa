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
#include "qitefactor/vqe.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace qitefactor {

using Json = nlohmann::ordered_json;

/// Malformed input document.
class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// {"n_qubits": Q, "terms": [{"mask", "num", "denom_pow2"}, ...]}, ascending mask.
Json hamiltonian_to_json(const SpinHamiltonian &h);
SpinHamiltonian hamiltonian_from_json(const Json &j);

// {"n_qubits", "depth", "family", "entangler": [[c, t], ...]}
Json ansatz_to_json(const Ansatz &a);
Ansatz ansatz_from_json(const Json &j);

/**
 * Writes <base>.bin (little-endian float64, index order; complex states as
 * interleaved re, im) and <base>.json ({"n_qubits", "norm", "complex"}).
 */
template <class T> void write_statevector(const std::filesystem::path &base, const BasicStatevector<T> &state);
RealStatevector read_real_statevector(const std::filesystem::path &base);

Json qite_config_to_json(const QiteConfig &c);
QiteConfig qite_config_from_json(const Json &j, QiteConfig defaults = {});
Json vqe_config_to_json(const VqeConfig &c);
VqeConfig vqe_config_from_json(const Json &j, VqeConfig defaults = {});

/// iter,energy,amp_<z>...,param_norm,residual,grad_norm[,sampled_index,sampled_amp]
void write_trace_csv(std::ostream &os, const RunTrace &trace);
std::string trace_csv(const RunTrace &trace);

/// {status, iterations, final_amplitudes, ..., config}
Json trace_summary(const RunTrace &trace, const Json &config_echo);

Json comparison_to_json(const ComparisonReport &report);

/// Shortest round-trip decimal form.
std::string format_double(double v);

} // namespace qitefactor
