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

#include "qitefactor/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace qitefactor {

namespace {

template <class T> constexpr bool is_complex_v = !std::is_same_v<T, double>;

inline double abs2(double a) { return a * a; }
inline double abs2(const std::complex<double> &a) { return std::norm(a); }
inline double conj_mul_re(double a, double b) { return a * b; }
inline double conj_mul_re(const std::complex<double> &a, const std::complex<double> &b) {
    return a.real() * b.real() + a.imag() * b.imag();
}

void check_qubit(std::size_t dim, int qubit) {
    if (qubit < 0 || (std::size_t{1} << qubit) >= dim) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range");
    }
}

template <class T> void check_params(const Ansatz &ansatz, std::span<const double> params) {
    ansatz.validate();
    if (params.size() != ansatz.parameter_count()) {
        throw std::invalid_argument("parameter count mismatch: expected " + std::to_string(ansatz.parameter_count()) +
                                    ", got " + std::to_string(params.size()));
    }
    if constexpr (!is_complex_v<T>) {
        if (ansatz.family != AnsatzFamily::ry_only) {
            throw std::invalid_argument("real statevectors require the ry_only ansatz family");
        }
    }
}

template <class T> void check_dims(const BasicStatevector<T> &a, std::size_t dim) {
    if (a.size() != dim) {
        throw std::invalid_argument("dimension mismatch");
    }
}

template <class T> void apply_rotations(BasicStatevector<T> &state, const Ansatz &ansatz, std::span<const double> params, int layer,
                                        double sign) {
    const int q_count = ansatz.n_qubits;
    auto amps = state.amplitudes();
    if (sign > 0) {
        for (int q = 0; q < q_count; ++q) {
            apply_ry(amps, q, params[ansatz.param_index(layer, q, GateKind::ry)]);
        }
    }
    if constexpr (is_complex_v<T>) {
        if (layer > 0 && ansatz.family == AnsatzFamily::ry_rx) {
            for (int q = 0; q < q_count; ++q) {
                apply_rx(amps, q, sign * params[ansatz.param_index(layer, q, GateKind::rx)]);
            }
        }
    }
    if (sign < 0) {
        for (int q = 0; q < q_count; ++q) {
            apply_ry(amps, q, -params[ansatz.param_index(layer, q, GateKind::ry)]);
        }
    }
}

} // namespace

std::string_view to_string(AnsatzFamily f) { return f == AnsatzFamily::ry_only ? "ry_only" : "ry_rx"; }

AnsatzFamily parse_family(std::string_view s) {
    if (s == "ry_only") {
        return AnsatzFamily::ry_only;
    }
    if (s == "ry_rx") {
        return AnsatzFamily::ry_rx;
    }
    throw std::invalid_argument("unknown ansatz family '" + std::string(s) + "'");
}

// --- Ansatz -----------------------------------------------------------------

Ansatz Ansatz::linear_chain(int n_qubits, int depth, AnsatzFamily family) {
    Ansatz a{n_qubits, depth, family, {}};
    for (int i = 0; i + 1 < n_qubits; ++i) {
        a.entangler.emplace_back(i, i + 1);
    }
    a.validate();
    return a;
}

std::size_t Ansatz::per_layer() const {
    return family == AnsatzFamily::ry_only ? static_cast<std::size_t>(n_qubits) : 2 * static_cast<std::size_t>(n_qubits);
}

std::size_t Ansatz::parameter_count() const { return static_cast<std::size_t>(n_qubits) + static_cast<std::size_t>(depth) * per_layer(); }

std::size_t Ansatz::param_index(int layer, int qubit, GateKind kind) const {
    if (layer == 0) {
        return static_cast<std::size_t>(qubit);
    }
    const std::size_t base = static_cast<std::size_t>(n_qubits) + static_cast<std::size_t>(layer - 1) * per_layer();
    return base + static_cast<std::size_t>(qubit) + (kind == GateKind::rx ? static_cast<std::size_t>(n_qubits) : 0);
}

void Ansatz::validate() const {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("ansatz qubit count out of range");
    }
    if (depth < 0) {
        throw std::invalid_argument("ansatz depth must be non-negative");
    }
    for (const auto &[c, t] : entangler) {
        if (c < 0 || t < 0 || c >= n_qubits || t >= n_qubits || c == t) {
            throw std::invalid_argument("invalid CNOT pair (" + std::to_string(c) + ", " + std::to_string(t) + ")");
        }
    }
}

// --- Statevector ------------------------------------------------------------

template <class T> BasicStatevector<T>::BasicStatevector(int n_qubits) : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, T{0}) {
    amps_[0] = T{1};
}

template <class T>
BasicStatevector<T>::BasicStatevector(int n_qubits, std::vector<T> amplitudes) : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude vector length must be 2^n_qubits");
    }
}

template <class T> double BasicStatevector<T>::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += abs2(a);
    }
    return std::sqrt(s);
}

template <class T> std::vector<double> BasicStatevector<T>::probabilities() const {
    std::vector<double> p(amps_.size());
    std::transform(amps_.begin(), amps_.end(), p.begin(), [](const T &a) { return abs2(a); });
    return p;
}

template class BasicStatevector<double>;
template class BasicStatevector<std::complex<double>>;

// --- DiagonalOperator ---------------------------------------------------------

DiagonalOperator::DiagonalOperator(const SpinHamiltonian &h, int max_qubits) : n_qubits_(h.n_qubits), diag_(diag_energies(h, max_qubits)) {}

DiagonalOperator::DiagonalOperator(int n_qubits, std::vector<double> diag) : n_qubits_(n_qubits), diag_(std::move(diag)) {
    if (diag_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("diagonal length must be 2^n_qubits");
    }
}

double DiagonalOperator::max_abs() const {
    double m = 0.0;
    for (double d : diag_) {
        m = std::max(m, std::abs(d));
    }
    return m;
}

DiagonalOperator DiagonalOperator::scaled(double s) const {
    std::vector<double> d(diag_);
    for (double &v : d) {
        v *= s;
    }
    return DiagonalOperator(n_qubits_, std::move(d));
}

// --- Gates ------------------------------------------------------------------

void apply_ry(std::span<double> amps, int qubit, double theta) {
    check_qubit(amps.size(), qubit);
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) {
            continue;
        }
        const double a0 = amps[i];
        const double a1 = amps[i | bit];
        amps[i] = c * a0 - s * a1;
        amps[i | bit] = s * a0 + c * a1;
    }
}

void apply_ry(std::span<std::complex<double>> amps, int qubit, double theta) {
    check_qubit(amps.size(), qubit);
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) {
            continue;
        }
        const auto a0 = amps[i];
        const auto a1 = amps[i | bit];
        amps[i] = c * a0 - s * a1;
        amps[i | bit] = s * a0 + c * a1;
    }
}

void apply_rx(std::span<std::complex<double>> amps, int qubit, double theta) {
    check_qubit(amps.size(), qubit);
    const double c = std::cos(theta / 2);
    const std::complex<double> mis{0.0, -std::sin(theta / 2)};
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) {
            continue;
        }
        const auto a0 = amps[i];
        const auto a1 = amps[i | bit];
        amps[i] = c * a0 + mis * a1;
        amps[i | bit] = mis * a0 + c * a1;
    }
}

template <class T> void apply_cnot(std::span<T> amps, int control, int target) {
    check_qubit(amps.size(), control);
    check_qubit(amps.size(), target);
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amps[i], amps[i | tbit]);
        }
    }
}

template <class T> void apply_layer(BasicStatevector<T> &state, const Ansatz &ansatz, std::span<const double> params, int layer) {
    if (layer > 0) {
        for (const auto &[c, t] : ansatz.entangler) {
            apply_cnot(state.amplitudes(), c, t);
        }
    }
    apply_rotations(state, ansatz, params, layer, +1.0);
}

template <class T>
void apply_layer_inverse(BasicStatevector<T> &state, const Ansatz &ansatz, std::span<const double> params, int layer) {
    apply_rotations(state, ansatz, params, layer, -1.0);
    if (layer > 0) {
        for (auto it = ansatz.entangler.rbegin(); it != ansatz.entangler.rend(); ++it) {
            apply_cnot(state.amplitudes(), it->first, it->second);
        }
    }
}

template <class T> BasicStatevector<T> prepare(const Ansatz &ansatz, std::span<const double> params) {
    check_params<T>(ansatz, params);
    BasicStatevector<T> state(ansatz.n_qubits);
    for (int layer = 0; layer <= ansatz.depth; ++layer) {
        apply_layer(state, ansatz, params, layer);
    }
    return state;
}

template <class T> BasicStatevector<T> derivative_state(const Ansatz &ansatz, std::span<const double> params, std::size_t i) {
    check_params<T>(ansatz, params);
    if (i >= params.size()) {
        throw std::out_of_range("parameter index " + std::to_string(i) + " out of range");
    }
    ParamVector shifted(params.begin(), params.end());
    shifted[i] += std::numbers::pi;
    BasicStatevector<T> d = prepare<T>(ansatz, shifted);
    for (auto &a : d.amplitudes()) {
        a *= 0.5;
    }
    return d;
}

template <class T> std::vector<BasicStatevector<T>> derivative_states(const Ansatz &ansatz, std::span<const double> params) {
    std::vector<BasicStatevector<T>> out;
    out.reserve(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        out.push_back(derivative_state<T>(ansatz, params, i));
    }
    return out;
}

template <class T> double expectation(const BasicStatevector<T> &state, const DiagonalOperator &h) {
    check_dims(state, h.diag().size());
    double e = 0.0;
    for (std::size_t z = 0; z < state.size(); ++z) {
        e += abs2(state[z]) * h[z];
    }
    return e;
}

double expectation(const RealStatevector &state, const SpinHamiltonian &h) { return expectation(state, DiagonalOperator(h)); }

template <class T> double transition_expectation(const BasicStatevector<T> &bra, const DiagonalOperator &h, const BasicStatevector<T> &ket) {
    check_dims(bra, h.diag().size());
    check_dims(ket, h.diag().size());
    double e = 0.0;
    for (std::size_t z = 0; z < bra.size(); ++z) {
        e += conj_mul_re(bra[z], ket[z]) * h[z];
    }
    return e;
}

template <class T> double overlap_re(const BasicStatevector<T> &a, const BasicStatevector<T> &b) {
    check_dims(b, a.size());
    double s = 0.0;
    for (std::size_t z = 0; z < a.size(); ++z) {
        s += conj_mul_re(a[z], b[z]);
    }
    return s;
}

template <class T> T amplitude(const BasicStatevector<T> &state, std::uint64_t z) {
    if (z >= state.size()) {
        throw std::out_of_range("basis index " + std::to_string(z) + " out of range");
    }
    return state[z];
}

template <class T> std::vector<std::uint64_t> sample(const BasicStatevector<T> &state, std::uint64_t shots, std::uint64_t rng_seed) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    std::mt19937_64 rng(rng_seed);
    const std::vector<double> probs = state.probabilities();
    double remaining_prob = 0.0;
    for (double p : probs) {
        remaining_prob += p;
    }
    std::vector<std::uint64_t> counts(probs.size(), 0);
    std::uint64_t remaining = shots;
    // Multinomial as a chain of conditional binomials.
    for (std::size_t z = 0; z < probs.size() && remaining > 0; ++z) {
        if (z + 1 == probs.size() || remaining_prob <= 0.0) {
            counts[z] = remaining;
            remaining = 0;
            break;
        }
        const double p = std::clamp(probs[z] / remaining_prob, 0.0, 1.0);
        std::binomial_distribution<std::uint64_t> draw(remaining, p);
        counts[z] = draw(rng);
        remaining -= counts[z];
        remaining_prob -= probs[z];
    }
    return counts;
}

#define QITEFACTOR_INSTANTIATE(T)                                                                                                          \
    template void apply_cnot<T>(std::span<T>, int, int);                                                                                   \
    template void apply_layer<T>(BasicStatevector<T> &, const Ansatz &, std::span<const double>, int);                                     \
    template void apply_layer_inverse<T>(BasicStatevector<T> &, const Ansatz &, std::span<const double>, int);                             \
    template BasicStatevector<T> prepare<T>(const Ansatz &, std::span<const double>);                                                      \
    template BasicStatevector<T> derivative_state<T>(const Ansatz &, std::span<const double>, std::size_t);                                 \
    template std::vector<BasicStatevector<T>> derivative_states<T>(const Ansatz &, std::span<const double>);                               \
    template double expectation<T>(const BasicStatevector<T> &, const DiagonalOperator &);                                                 \
    template double transition_expectation<T>(const BasicStatevector<T> &, const DiagonalOperator &, const BasicStatevector<T> &);        \
    template double overlap_re<T>(const BasicStatevector<T> &, const BasicStatevector<T> &);                                               \
    template T amplitude<T>(const BasicStatevector<T> &, std::uint64_t);                                                                   \
    template std::vector<std::uint64_t> sample<T>(const BasicStatevector<T> &, std::uint64_t, std::uint64_t);

QITEFACTOR_INSTANTIATE(double)
QITEFACTOR_INSTANTIATE(std::complex<double>)

#undef QITEFACTOR_INSTANTIATE

} // namespace qitefactor
