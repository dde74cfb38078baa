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

#include "qitefactor/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qitefactor {

namespace {

static_assert(std::endian::native == std::endian::little, "statevector dumps assume a little-endian host");

template <class T> T require(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("field '") + key + "': " + e.what());
    }
}

std::int64_t require_int(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(std::string("missing field '") + key + "'");
    }
    const auto &v = j.at(key);
    if (!v.is_number_integer()) {
        throw SchemaError(std::string("field '") + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

template <class T> void read_opt(const Json &j, const char *key, T &out) {
    if (j.contains(key) && !j.at(key).is_null()) {
        try {
            out = j.at(key).get<T>();
        } catch (const nlohmann::json::exception &e) {
            throw SchemaError(std::string("field '") + key + "': " + e.what());
        }
    }
}

Json energy_norm_json(const std::optional<double> &v) { return v ? Json(*v) : Json(nullptr); }

void read_energy_norm(const Json &j, std::optional<double> &out) {
    if (!j.contains("energy_norm")) {
        return;
    }
    const auto &v = j.at("energy_norm");
    if (v.is_null() || (v.is_string() && v.get<std::string>() == "raw")) {
        out.reset();
    } else if (v.is_number()) {
        out = v.get<double>();
    } else {
        throw SchemaError("field 'energy_norm' must be a number, null or \"raw\"");
    }
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Json hamiltonian_to_json(const SpinHamiltonian &h) {
    Json terms = Json::array();
    for (const auto &t : h.terms) {
        terms.push_back({{"mask", t.mask}, {"num", t.coeff.num}, {"denom_pow2", t.coeff.denom_pow2}});
    }
    return {{"n_qubits", h.n_qubits}, {"terms", terms}};
}

SpinHamiltonian hamiltonian_from_json(const Json &j) {
    if (!j.is_object()) {
        throw SchemaError("Hamiltonian document must be a JSON object");
    }
    SpinHamiltonian h;
    const auto q = require_int(j, "n_qubits");
    if (q < 0 || q > 30) {
        throw SchemaError("n_qubits out of range");
    }
    h.n_qubits = static_cast<int>(q);
    if (!j.contains("terms") || !j.at("terms").is_array()) {
        throw SchemaError("field 'terms' must be an array");
    }
    for (const auto &t : j.at("terms")) {
        const auto mask = require_int(t, "mask");
        const auto num = require_int(t, "num");
        const auto d = require_int(t, "denom_pow2");
        if (mask < 0 || mask >= (std::int64_t{1} << h.n_qubits)) {
            throw SchemaError("term mask out of range");
        }
        if (d < 0 || d > 62) {
            throw SchemaError("denom_pow2 out of range");
        }
        if (!h.terms.empty() && static_cast<VarMask>(mask) <= h.terms.back().mask) {
            throw SchemaError("terms must be in strictly ascending mask order");
        }
        if (num != 0) {
            h.terms.push_back({static_cast<VarMask>(mask), Dyadic::normalized(num, static_cast<int>(d))});
        }
    }
    return h;
}

Json ansatz_to_json(const Ansatz &a) {
    Json ent = Json::array();
    for (const auto &[c, t] : a.entangler) {
        ent.push_back({c, t});
    }
    return {{"n_qubits", a.n_qubits}, {"depth", a.depth}, {"family", std::string(to_string(a.family))}, {"entangler", ent}};
}

Ansatz ansatz_from_json(const Json &j) {
    Ansatz a;
    a.n_qubits = static_cast<int>(require_int(j, "n_qubits"));
    a.depth = static_cast<int>(require_int(j, "depth"));
    try {
        a.family = parse_family(require<std::string>(j, "family"));
    } catch (const std::invalid_argument &e) {
        throw SchemaError(e.what());
    }
    if (!j.contains("entangler") || !j.at("entangler").is_array()) {
        throw SchemaError("field 'entangler' must be an array");
    }
    for (const auto &pair : j.at("entangler")) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
            throw SchemaError("entangler entries must be [control, target] integer pairs");
        }
        a.entangler.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    try {
        a.validate();
    } catch (const std::invalid_argument &e) {
        throw SchemaError(e.what());
    }
    return a;
}

template <class T> void write_statevector(const std::filesystem::path &base, const BasicStatevector<T> &state) {
    auto bin = base;
    bin += ".bin";
    std::ofstream os(bin, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot open " + bin.string() + " for writing");
    }
    for (const auto &a : state.amplitudes()) {
        if constexpr (std::is_same_v<T, double>) {
            os.write(reinterpret_cast<const char *>(&a), sizeof(double));
        } else {
            const double re = a.real();
            const double im = a.imag();
            os.write(reinterpret_cast<const char *>(&re), sizeof(double));
            os.write(reinterpret_cast<const char *>(&im), sizeof(double));
        }
    }
    auto meta = base;
    meta += ".json";
    std::ofstream js(meta);
    if (!js) {
        throw std::runtime_error("cannot open " + meta.string() + " for writing");
    }
    const Json sidecar = {{"n_qubits", state.n_qubits()}, {"norm", state.norm()}, {"complex", !std::is_same_v<T, double>}};
    js << sidecar.dump(2) << '\n';
}

template void write_statevector<double>(const std::filesystem::path &, const RealStatevector &);
template void write_statevector<std::complex<double>>(const std::filesystem::path &, const ComplexStatevector &);

RealStatevector read_real_statevector(const std::filesystem::path &base) {
    auto meta = base;
    meta += ".json";
    std::ifstream js(meta);
    if (!js) {
        throw std::runtime_error("cannot open " + meta.string());
    }
    Json sidecar;
    try {
        sidecar = Json::parse(js);
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(e.what());
    }
    if (require<bool>(sidecar, "complex")) {
        throw SchemaError("statevector dump is complex; expected a real state");
    }
    const auto q = require_int(sidecar, "n_qubits");
    if (q < 0 || q > 30) {
        throw SchemaError("n_qubits out of range");
    }
    auto bin = base;
    bin += ".bin";
    std::ifstream is(bin, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open " + bin.string());
    }
    std::vector<double> amps(std::size_t{1} << q);
    is.read(reinterpret_cast<char *>(amps.data()), static_cast<std::streamsize>(amps.size() * sizeof(double)));
    if (static_cast<std::size_t>(is.gcount()) != amps.size() * sizeof(double)) {
        throw SchemaError("statevector payload is shorter than 2^n_qubits doubles");
    }
    return RealStatevector(static_cast<int>(q), std::move(amps));
}

Json qite_config_to_json(const QiteConfig &c) {
    return {{"dtau", c.dtau},
            {"max_iters", c.max_iters},
            {"amp_threshold", c.amp_threshold},
            {"ridge_lambda", c.ridge_lambda},
            {"init_mode", std::string(to_string(c.init_mode))},
            {"init_epsilon", c.init_epsilon},
            {"rng_seed", c.rng_seed},
            {"depth", c.depth},
            {"track_targets", c.track_targets},
            {"energy_norm", energy_norm_json(c.energy_norm)},
            {"metric", c.metric == MetricMode::mclachlan ? "mclachlan" : "identity"},
            {"tracking", std::string(to_string(c.tracking))},
            {"shots", c.shots}};
}

QiteConfig qite_config_from_json(const Json &j, QiteConfig c) {
    if (!j.is_object()) {
        throw SchemaError("QITE config must be a JSON object");
    }
    read_opt(j, "dtau", c.dtau);
    read_opt(j, "max_iters", c.max_iters);
    read_opt(j, "amp_threshold", c.amp_threshold);
    read_opt(j, "ridge_lambda", c.ridge_lambda);
    read_opt(j, "init_epsilon", c.init_epsilon);
    read_opt(j, "rng_seed", c.rng_seed);
    read_opt(j, "depth", c.depth);
    read_opt(j, "track_targets", c.track_targets);
    read_opt(j, "shots", c.shots);
    read_energy_norm(j, c.energy_norm);
    try {
        if (j.contains("init_mode")) {
            c.init_mode = parse_init_mode(j.at("init_mode").get<std::string>());
        }
        if (j.contains("tracking")) {
            c.tracking = parse_tracking_mode(j.at("tracking").get<std::string>());
        }
        if (j.contains("metric")) {
            const auto m = j.at("metric").get<std::string>();
            if (m != "mclachlan" && m != "identity") {
                throw std::invalid_argument("unknown metric '" + m + "'");
            }
            c.metric = m == "mclachlan" ? MetricMode::mclachlan : MetricMode::identity;
        }
        c.validate();
    } catch (const std::invalid_argument &e) {
        throw SchemaError(e.what());
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(e.what());
    }
    return c;
}

Json vqe_config_to_json(const VqeConfig &c) {
    return {{"eta", c.eta},
            {"max_iters", c.max_iters},
            {"amp_threshold", c.amp_threshold},
            {"init_mode", std::string(to_string(c.init_mode))},
            {"init_epsilon", c.init_epsilon},
            {"rng_seed", c.rng_seed},
            {"family", std::string(to_string(c.family))},
            {"depth", c.depth},
            {"track_targets", c.track_targets},
            {"energy_norm", energy_norm_json(c.energy_norm)},
            {"tracking", std::string(to_string(c.tracking))},
            {"shots", c.shots}};
}

VqeConfig vqe_config_from_json(const Json &j, VqeConfig c) {
    if (!j.is_object()) {
        throw SchemaError("VQE config must be a JSON object");
    }
    read_opt(j, "eta", c.eta);
    read_opt(j, "max_iters", c.max_iters);
    read_opt(j, "amp_threshold", c.amp_threshold);
    read_opt(j, "init_epsilon", c.init_epsilon);
    read_opt(j, "rng_seed", c.rng_seed);
    read_opt(j, "depth", c.depth);
    read_opt(j, "track_targets", c.track_targets);
    read_opt(j, "shots", c.shots);
    read_energy_norm(j, c.energy_norm);
    try {
        if (j.contains("init_mode")) {
            c.init_mode = parse_init_mode(j.at("init_mode").get<std::string>());
        }
        if (j.contains("family")) {
            c.family = parse_family(j.at("family").get<std::string>());
        }
        if (j.contains("tracking")) {
            c.tracking = parse_tracking_mode(j.at("tracking").get<std::string>());
        }
        c.validate();
    } catch (const std::invalid_argument &e) {
        throw SchemaError(e.what());
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(e.what());
    }
    return c;
}

void write_trace_csv(std::ostream &os, const RunTrace &trace) {
    const bool sampled = std::any_of(trace.records.begin(), trace.records.end(), [](const auto &r) { return r.sampled_index.has_value(); });
    os << "iter,energy";
    for (auto z : trace.targets) {
        os << ",amp_" << z;
    }
    os << ",param_norm,residual,grad_norm";
    if (sampled) {
        os << ",sampled_index,sampled_amp";
    }
    os << '\n';
    for (const auto &r : trace.records) {
        os << r.iter << ',' << format_double(r.energy);
        for (double a : r.target_amps) {
            os << ',' << format_double(a);
        }
        os << ',' << format_double(r.param_norm) << ',' << format_double(r.residual) << ',' << format_double(r.grad_norm);
        if (sampled) {
            os << ',' << (r.sampled_index ? std::to_string(*r.sampled_index) : std::string()) << ',' << format_double(r.sampled_amp);
        }
        os << '\n';
    }
}

std::string trace_csv(const RunTrace &trace) {
    std::ostringstream os;
    write_trace_csv(os, trace);
    return os.str();
}

Json trace_summary(const RunTrace &trace, const Json &config_echo) {
    Json amps = Json::object();
    if (!trace.records.empty()) {
        const auto &last = trace.records.back();
        for (std::size_t k = 0; k < trace.targets.size(); ++k) {
            amps[std::to_string(trace.targets[k])] = last.target_amps[k];
        }
    }
    Json j = {{"method", trace.method},
              {"status", std::string(to_string(trace.status))},
              {"iterations", trace.iterations()},
              {"final_energy", trace.records.empty() ? 0.0 : trace.records.back().energy},
              {"final_amplitudes", amps},
              {"energy_scale", trace.energy_scale},
              {"reached_index", trace.reached_index ? Json(*trace.reached_index) : Json(nullptr)},
              {"config", config_echo}};
    return j;
}

Json comparison_to_json(const ComparisonReport &report) {
    Json rows = Json::array();
    for (const auto &r : report.rows) {
        rows.push_back({{"method", r.method},
                        {"seed", r.seed},
                        {"status", std::string(to_string(r.status))},
                        {"iterations", r.iterations},
                        {"final_energy", r.final_energy},
                        {"final_target_amp", r.final_target_amp},
                        {"mean_grad_norm", r.mean_grad_norm}});
    }
    Json summaries = Json::array();
    for (const auto &s : report.summaries) {
        summaries.push_back({{"method", s.method},
                             {"success_rate", s.success_rate},
                             {"median_iterations", std::isnan(s.median_iterations) ? Json(nullptr) : Json(s.median_iterations)},
                             {"median_final_energy", s.median_final_energy}});
    }
    return {{"runs", rows}, {"summary", summaries}};
}

} // namespace qitefactor
