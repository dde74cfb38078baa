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

#include "qitefactor/encoder.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qitefactor {

enum class AnsatzFamily { ry_only, ry_rx };
enum class GateKind { ry, rx };

std::string_view to_string(AnsatzFamily f);
AnsatzFamily parse_family(std::string_view s);

/**
 * Layered rotation circuit. Layer 0 is a bare Ry layer; each of the `depth`
 * further layers applies the entangler (CNOT pairs in order) and then Ry on
 * every qubit, followed by Rx on every qubit for the ry_rx family.
 *
 * Parameter layout: layer 0 uses indices [0, Q); layer L >= 1 starts at
 * Q + (L-1) * per_layer, Ry angles first, then Rx angles.
 */
struct Ansatz {
    int n_qubits = 0;
    int depth = 0;
    AnsatzFamily family = AnsatzFamily::ry_only;
    std::vector<std::pair<int, int>> entangler;

    /// CNOT chain i -> i+1 for i = 0..Q-2.
    static Ansatz linear_chain(int n_qubits, int depth, AnsatzFamily family = AnsatzFamily::ry_only);

    [[nodiscard]] std::size_t per_layer() const;
    [[nodiscard]] std::size_t parameter_count() const;
    [[nodiscard]] std::size_t param_index(int layer, int qubit, GateKind kind) const;
    /// Throws std::invalid_argument on out-of-range qubits or bad sizes.
    void validate() const;

    friend bool operator==(const Ansatz &, const Ansatz &) = default;
};

using ParamVector = std::vector<double>;

/// Amplitudes over 2^Q basis states; bit i of the index is qubit i.
template <class T> class BasicStatevector {
  public:
    using value_type = T;

    BasicStatevector() = default;
    /// |0...0>
    explicit BasicStatevector(int n_qubits);
    BasicStatevector(int n_qubits, std::vector<T> amplitudes);

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] std::span<const T> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<T> amplitudes() { return amps_; }
    [[nodiscard]] const T &operator[](std::size_t z) const { return amps_[z]; }
    [[nodiscard]] T &operator[](std::size_t z) { return amps_[z]; }
    [[nodiscard]] double norm() const;
    [[nodiscard]] std::vector<double> probabilities() const;

  private:
    int n_qubits_ = 0;
    std::vector<T> amps_;
};

using RealStatevector = BasicStatevector<double>;
using ComplexStatevector = BasicStatevector<std::complex<double>>;

extern template class BasicStatevector<double>;
extern template class BasicStatevector<std::complex<double>>;

/// Precomputed diagonal of a Z-string Hamiltonian.
class DiagonalOperator {
  public:
    DiagonalOperator() = default;
    explicit DiagonalOperator(const SpinHamiltonian &h, int max_qubits = kDefaultMaxQubits);
    DiagonalOperator(int n_qubits, std::vector<double> diag);

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::span<const double> diag() const { return diag_; }
    [[nodiscard]] double operator[](std::size_t z) const { return diag_[z]; }
    [[nodiscard]] double max_abs() const;
    [[nodiscard]] DiagonalOperator scaled(double s) const;

  private:
    int n_qubits_ = 0;
    std::vector<double> diag_;
};

// Gate kernels. Ry(t) = exp(-i t Y / 2), Rx(t) = exp(-i t X / 2).
void apply_ry(std::span<double> amps, int qubit, double theta);
void apply_ry(std::span<std::complex<double>> amps, int qubit, double theta);
void apply_rx(std::span<std::complex<double>> amps, int qubit, double theta);
template <class T> void apply_cnot(std::span<T> amps, int control, int target);

/// Applies layer `layer` of the ansatz (entangler then rotations).
template <class T> void apply_layer(BasicStatevector<T> &state, const Ansatz &ansatz, std::span<const double> params, int layer);
/// Exact inverse of apply_layer.
template <class T>
void apply_layer_inverse(BasicStatevector<T> &state, const Ansatz &ansatz, std::span<const double> params, int layer);

/**
 * Runs the ansatz on |0...0>. The real instantiation requires the ry_only
 * family. Throws std::invalid_argument on a parameter-count mismatch.
 */
template <class T> BasicStatevector<T> prepare(const Ansatz &ansatz, std::span<const double> params);

/// d|phi>/d theta_i = (1/2) |phi(theta + pi e_i)>. Not normalized.
template <class T> BasicStatevector<T> derivative_state(const Ansatz &ansatz, std::span<const double> params, std::size_t i);

template <class T> std::vector<BasicStatevector<T>> derivative_states(const Ansatz &ansatz, std::span<const double> params);

/// sum_z |a_z|^2 h_z.
template <class T> double expectation(const BasicStatevector<T> &state, const DiagonalOperator &h);
double expectation(const RealStatevector &state, const SpinHamiltonian &h);

/// Re sum_z conj(bra_z) h_z ket_z.
template <class T> double transition_expectation(const BasicStatevector<T> &bra, const DiagonalOperator &h, const BasicStatevector<T> &ket);

/// Re <a|b>.
template <class T> double overlap_re(const BasicStatevector<T> &a, const BasicStatevector<T> &b);

/// a_z. Throws std::out_of_range for z >= 2^Q.
template <class T> T amplitude(const BasicStatevector<T> &state, std::uint64_t z);

/// Multinomial draw of `shots` measurements; deterministic in rng_seed.
template <class T> std::vector<std::uint64_t> sample(const BasicStatevector<T> &state, std::uint64_t shots, std::uint64_t rng_seed);

} // namespace qitefactor
