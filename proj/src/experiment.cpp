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

#include "qitefactor/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

namespace qitefactor {

namespace {

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    os << content;
    if (!os) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

/// Runs fn(k) for k in [0, n) on at most `jobs` threads.
template <class Fn> void parallel_for(std::size_t n, int jobs, Fn &&fn) {
    const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 64));
    if (workers == 1 || n <= 1) {
        for (std::size_t k = 0; k < n; ++k) {
            fn(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < n; k = next++) {
                try {
                    fn(k);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

template <class T> void locate_best(const BasicStatevector<T> &state, SeedOutcome &o) {
    for (std::size_t z = 0; z < state.size(); ++z) {
        const double a = std::abs(state[z]);
        if (a > o.best_amplitude) {
            o.best_amplitude = a;
            o.best_index = z;
        }
    }
}

SeedOutcome finish_outcome(std::uint64_t seed, RunTrace trace, const Ansatz &ansatz, const BitAllocation &alloc, std::uint64_t N) {
    SeedOutcome o;
    o.seed = seed;
    if (ansatz.family == AnsatzFamily::ry_only) {
        locate_best(prepare<double>(ansatz, trace.final_params), o);
    } else {
        locate_best(prepare<std::complex<double>>(ansatz, trace.final_params), o);
    }
    o.factors = decode(alloc, o.best_index);
    o.verified = trace.status == RunStatus::threshold_reached && o.factors.p * o.factors.q == N && o.factors.p > 1 && o.factors.q > 1;
    o.trace = std::move(trace);
    return o;
}

SeedOutcome oracle_outcome(const ExperimentConfig &c, const DiagonalOperator &h, const BitAllocation &alloc,
                           const std::vector<std::uint64_t> &targets) {
    std::vector<double> taus;
    const auto steps = static_cast<long>(std::ceil(c.tau / c.qite.dtau - 1e-9));
    for (long k = 0; k <= steps; ++k) {
        taus.push_back(std::min(c.tau, static_cast<double>(k) * c.qite.dtau));
    }
    const ItePath path = ite_evolve(h, taus);
    SeedOutcome o;
    o.trace = to_trace(path, targets);
    const auto &p = path.probabilities.back();
    o.best_index = static_cast<std::uint64_t>(std::max_element(p.begin(), p.end()) - p.begin());
    o.best_amplitude = std::sqrt(p[o.best_index]);
    o.factors = decode(alloc, o.best_index);
    o.verified = o.best_amplitude >= c.qite.amp_threshold && o.factors.p * o.factors.q == c.N && o.factors.p > 1 && o.factors.q > 1;
    if (o.best_amplitude >= c.qite.amp_threshold) {
        o.trace.reached_index = o.best_index;
    }
    return o;
}

Json outcome_json(const SeedOutcome &o) {
    return {{"seed", o.seed},
            {"status", std::string(to_string(o.trace.status))},
            {"iterations", o.trace.iterations()},
            {"best_index", o.best_index},
            {"best_amplitude", o.best_amplitude},
            {"p", o.factors.p},
            {"q", o.factors.q},
            {"verified", o.verified}};
}

double median_of(std::vector<double> v) {
    if (v.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Json nan_to_null(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

} // namespace

std::string_view to_string(Method m) {
    switch (m) {
    case Method::qite:
        return "qite";
    case Method::vqe:
        return "vqe";
    case Method::oracle:
        return "oracle";
    case Method::compare:
        return "compare";
    }
    return "?";
}

Method parse_method(std::string_view s) {
    if (s == "qite") {
        return Method::qite;
    }
    if (s == "vqe") {
        return Method::vqe;
    }
    if (s == "oracle") {
        return Method::oracle;
    }
    if (s == "compare") {
        return Method::compare;
    }
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

std::string_view to_string(AllocationPolicy p) { return p == AllocationPolicy::heuristic ? "heuristic" : "oracle-assisted"; }

AllocationPolicy parse_policy(std::string_view s) {
    if (s == "heuristic") {
        return AllocationPolicy::heuristic;
    }
    if (s == "oracle-assisted" || s == "oracle_assisted") {
        return AllocationPolicy::oracle_assisted;
    }
    throw std::invalid_argument("unknown allocation policy '" + std::string(s) + "'");
}

int ExperimentConfig::max_qubits_from_env() {
    if (const char *v = std::getenv("QITE_FACTOR_MAX_QUBITS")) {
        try {
            const int q = std::stoi(v);
            if (q >= 1 && q <= kDefaultMaxQubits) {
                return q;
            }
        } catch (const std::exception &) {
        }
        throw std::invalid_argument(std::string("QITE_FACTOR_MAX_QUBITS must be an integer in [1, 24], got '") + v + "'");
    }
    return 12;
}

Json experiment_to_json(const ExperimentConfig &c) {
    Json alloc = c.allocation ? Json{{"p_bits", c.allocation->first}, {"q_bits", c.allocation->second}} : Json(nullptr);
    return {{"n", c.N},
            {"allocation", alloc},
            {"policy", std::string(to_string(c.policy))},
            {"method", std::string(to_string(c.method))},
            {"qite", qite_config_to_json(c.qite)},
            {"vqe", vqe_config_to_json(c.vqe)},
            {"tau", c.tau},
            {"out", c.out_dir.string()},
            {"seeds", c.seeds},
            {"jobs", c.jobs},
            {"max_qubits", c.max_qubits}};
}

ExperimentConfig experiment_from_json(const Json &j, ExperimentConfig c) {
    if (!j.is_object()) {
        throw SchemaError("experiment config must be a JSON object");
    }
    try {
        if (j.contains("n")) {
            c.N = j.at("n").get<std::uint64_t>();
        }
        if (j.contains("allocation")) {
            const auto &a = j.at("allocation");
            if (a.is_null()) {
                c.allocation.reset();
            } else {
                c.allocation = std::pair{a.at("p_bits").get<int>(), a.at("q_bits").get<int>()};
            }
        }
        if (j.contains("policy")) {
            c.policy = parse_policy(j.at("policy").get<std::string>());
        }
        if (j.contains("method")) {
            c.method = parse_method(j.at("method").get<std::string>());
        }
        if (j.contains("qite")) {
            c.qite = qite_config_from_json(j.at("qite"), c.qite);
        }
        if (j.contains("vqe")) {
            c.vqe = vqe_config_from_json(j.at("vqe"), c.vqe);
        }
        if (j.contains("tau")) {
            c.tau = j.at("tau").get<double>();
        }
        if (j.contains("out")) {
            c.out_dir = j.at("out").get<std::string>();
        }
        if (j.contains("seeds")) {
            c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        }
        if (j.contains("jobs")) {
            c.jobs = j.at("jobs").get<int>();
        }
        if (j.contains("max_qubits")) {
            c.max_qubits = j.at("max_qubits").get<int>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(e.what());
    } catch (const std::invalid_argument &e) {
        throw SchemaError(e.what());
    }
    return c;
}

BitAllocation resolve_allocation(std::uint64_t N, const std::optional<std::pair<int, int>> &override, AllocationPolicy policy) {
    if (override) {
        return allocate_bits(N, override);
    }
    return policy == AllocationPolicy::oracle_assisted ? allocate_bits_oracle(N) : allocate_bits(N);
}

FactorResult run_factor(const ExperimentConfig &config) {
    if (config.seeds.empty()) {
        throw std::invalid_argument("at least one seed is required");
    }
    if (!(config.tau >= 0.0)) {
        throw std::invalid_argument("tau must be non-negative");
    }
    FactorResult r;
    r.allocation = resolve_allocation(config.N, config.allocation, config.policy);
    const int q = r.allocation.n_qubits();
    if (q > config.max_qubits) {
        throw std::length_error("allocation needs " + std::to_string(q) + " qubits; the cap is " + std::to_string(config.max_qubits) +
                                " (QITE_FACTOR_MAX_QUBITS)");
    }
    r.hamiltonian = binary_to_spin(build_cost_poly(config.N, r.allocation));
    r.ground = ground_solutions(r.hamiltonian, r.allocation);
    const DiagonalOperator h(r.hamiltonian, config.max_qubits);
    std::vector<std::uint64_t> targets;
    for (const auto &g : r.ground) {
        targets.push_back(g.index);
    }

    switch (config.method) {
    case Method::oracle:
        r.outcomes.push_back(oracle_outcome(config, h, r.allocation, targets));
        break;
    case Method::compare: {
        QiteConfig qc = config.qite;
        qc.track_targets = targets;
        VqeConfig vc = config.vqe;
        vc.track_targets = targets;
        r.comparison = compare_runs(h, qc, vc, config.seeds);
        break;
    }
    case Method::qite:
    case Method::vqe: {
        r.outcomes.resize(config.seeds.size());
        const Ansatz ansatz = config.method == Method::qite ? Ansatz::linear_chain(q, config.qite.depth, AnsatzFamily::ry_only)
                                                            : Ansatz::linear_chain(q, config.vqe.depth, config.vqe.family);
        parallel_for(config.seeds.size(), config.jobs, [&](std::size_t k) {
            const auto seed = config.seeds[k];
            RunTrace trace;
            if (config.method == Method::qite) {
                QiteConfig qc = config.qite;
                qc.rng_seed = seed;
                qc.track_targets = targets;
                trace = run_qite(h, ansatz, qc);
            } else {
                VqeConfig vc = config.vqe;
                vc.rng_seed = seed;
                vc.track_targets = targets;
                trace = run_vqe(h, ansatz, vc);
            }
            r.outcomes[k] = finish_outcome(seed, std::move(trace), ansatz, r.allocation, config.N);
        });
        break;
    }
    }

    if (config.method == Method::compare) {
        // Tracked targets are ground states, so reaching threshold implies p * q == N.
        const auto &rows = r.comparison->rows;
        const bool any = std::any_of(rows.begin(), rows.end(), [](const ComparisonRow &row) { return row.status == RunStatus::threshold_reached; });
        r.exit_code = any ? kExitVerified : kExitNotReached;
    } else {
        const bool any = std::any_of(r.outcomes.begin(), r.outcomes.end(), [](const SeedOutcome &o) { return o.verified; });
        r.exit_code = any ? kExitVerified : kExitNotReached;
    }
    return r;
}

int cmd_factor(const ExperimentConfig &config, std::ostream &out, std::ostream &err) {
    FactorResult r;
    try {
        r = run_factor(config);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    const Json echo = experiment_to_json(config);
    try {
        std::filesystem::create_directories(config.out_dir);
        Json hj = hamiltonian_to_json(r.hamiltonian);
        hj["config"] = echo;
        write_file(config.out_dir / "hamiltonian.json", hj.dump(2) + "\n");

        Json summary = {{"n", config.N},
                        {"allocation", {{"p_bits", r.allocation.m}, {"q_bits", r.allocation.l}}},
                        {"n_qubits", r.allocation.n_qubits()},
                        {"method", std::string(to_string(config.method))},
                        {"ground_solutions", Json::array()}};
        for (const auto &g : r.ground) {
            summary["ground_solutions"].push_back({{"p", g.p}, {"q", g.q}, {"index", g.index}});
        }
        if (r.ground.empty()) {
            summary["no_ground_state"] = true;
        }
        if (r.comparison) {
            write_file(config.out_dir / "comparison.json", comparison_to_json(*r.comparison).dump(2) + "\n");
            summary["comparison"] = comparison_to_json(*r.comparison)["summary"];
        }
        Json seeds = Json::array();
        const SeedOutcome *first_verified = nullptr;
        for (const auto &o : r.outcomes) {
            const auto dir = config.method == Method::oracle ? config.out_dir / "oracle" : config.out_dir / ("seed_" + std::to_string(o.seed));
            std::filesystem::create_directories(dir);
            write_file(dir / "trace.csv", trace_csv(o.trace));
            Json echo_seed = echo;
            echo_seed["seed"] = o.seed;
            write_file(dir / "summary.json", trace_summary(o.trace, echo_seed).dump(2) + "\n");
            Json oj = outcome_json(o);
            if (config.method == Method::oracle) {
                double p_solution = 0.0;
                for (std::size_t k = 0; k < o.trace.targets.size(); ++k) {
                    const double a = o.trace.records.back().target_amps[k];
                    p_solution += a * a;
                }
                oj["p_solution"] = p_solution;
                summary["p_solution"] = p_solution;
                summary["tau"] = config.tau;
            }
            seeds.push_back(oj);
            if (o.verified && first_verified == nullptr) {
                first_verified = &o;
            }
        }
        summary["seeds"] = seeds;
        if (first_verified != nullptr) {
            summary["factors"] = {{"p", first_verified->factors.p}, {"q", first_verified->factors.q}};
        } else {
            summary["factors"] = nullptr;
        }
        summary["verified"] = first_verified != nullptr;
        summary["exit_code"] = r.exit_code;
        summary["config"] = echo;
        write_file(config.out_dir / "summary.json", summary.dump(2) + "\n");

        out << "N = " << config.N << ", allocation (" << r.allocation.m << ", " << r.allocation.l << "), " << r.allocation.n_qubits()
            << " qubits, method " << to_string(config.method) << '\n';
        for (const auto &o : r.outcomes) {
            out << "  seed " << o.seed << ": " << to_string(o.trace.status) << " after " << o.trace.iterations() << " iterations, best |"
                << o.best_index << "> amp " << format_double(o.best_amplitude) << " -> p = " << o.factors.p << ", q = " << o.factors.q
                << (o.verified ? " (verified)" : "") << '\n';
        }
        if (r.comparison) {
            for (const auto &s : r.comparison->summaries) {
                out << "  " << s.method << ": success rate " << format_double(s.success_rate) << ", median iterations "
                    << format_double(s.median_iterations) << '\n';
            }
        }
        if (r.ground.empty()) {
            out << "  allocation cannot represent a factorization (no_ground_state)\n";
        }
        out << "artifacts written to " << config.out_dir.string() << '\n';
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return r.exit_code;
}

std::vector<CorpusEntry> corpus_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array()) {
        throw SchemaError("corpus must be an object with an 'entries' array");
    }
    std::vector<CorpusEntry> out;
    for (const auto &e : j.at("entries")) {
        CorpusEntry c;
        try {
            c.N = e.at("n").get<std::uint64_t>();
            if (e.contains("p_bits") || e.contains("q_bits")) {
                c.allocation = std::pair{e.at("p_bits").get<int>(), e.at("q_bits").get<int>()};
            }
        } catch (const nlohmann::json::exception &ex) {
            throw SchemaError(std::string("corpus entry: ") + ex.what());
        }
        out.push_back(c);
    }
    return out;
}

std::vector<CorpusRow> run_corpus(const std::vector<CorpusEntry> &entries, const ExperimentConfig &config) {
    std::vector<CorpusRow> rows;
    for (const auto &e : entries) {
        CorpusRow row;
        row.N = e.N;
        try {
            ExperimentConfig c = config;
            c.N = e.N;
            c.allocation = e.allocation ? e.allocation : config.allocation;
            c.method = Method::qite;
            const FactorResult r = run_factor(c);
            row.n_qubits = r.allocation.n_qubits();
            if (r.ground.empty()) {
                row.status = "no_ground_state";
            } else {
                row.status = "ok";
            }
            std::vector<double> iters;
            for (const auto &o : r.outcomes) {
                row.iterations.push_back(o.verified ? o.trace.iterations() : -1);
                if (o.verified) {
                    iters.push_back(o.trace.iterations());
                }
                row.energy_non_increasing = row.energy_non_increasing && o.trace.energy_non_increasing(1e-6);
            }
            row.success_rate = r.outcomes.empty() ? 0.0 : static_cast<double>(iters.size()) / static_cast<double>(r.outcomes.size());
            row.median_iterations = median_of(iters);
        } catch (const std::exception &ex) {
            row.status = "error";
            row.error = ex.what();
            row.median_iterations = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_corpus(const std::vector<CorpusEntry> &entries, const ExperimentConfig &config, std::ostream &out, std::ostream &err) {
    const auto rows = run_corpus(entries, config);
    Json report = Json::array();
    std::string csv = "n,qubits,status,success_rate,median_iterations\n";
    for (const auto &r : rows) {
        report.push_back({{"n", r.N},
                          {"qubits", r.n_qubits},
                          {"status", r.status},
                          {"error", r.error},
                          {"success_rate", r.success_rate},
                          {"median_iterations", nan_to_null(r.median_iterations)},
                          {"iterations", r.iterations},
                          {"energy_non_increasing", r.energy_non_increasing}});
        csv += std::to_string(r.N) + "," + std::to_string(r.n_qubits) + "," + r.status + "," + format_double(r.success_rate) + "," +
               format_double(r.median_iterations) + "\n";
        out << r.N << "\t" << r.n_qubits << " qubits\t" << r.status << "\tsuccess " << format_double(r.success_rate) << "\tmedian iters "
            << format_double(r.median_iterations) << (r.error.empty() ? "" : "\t" + r.error) << '\n';
    }
    try {
        std::filesystem::create_directories(config.out_dir);
        const Json doc = {{"entries", report}, {"config", experiment_to_json(config)}};
        write_file(config.out_dir / "corpus_report.json", doc.dump(2) + "\n");
        write_file(config.out_dir / "corpus_report.csv", csv);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitVerified;
}

std::vector<CheckResult> run_checks(const std::optional<std::filesystem::path> &overlay_dir) {
    std::vector<CheckResult> out;
    const auto add = [&](std::string name, bool pass, std::string detail) { out.push_back({std::move(name), pass, std::move(detail)}); };

    // N = 15 goldens.
    const BitAllocation a15 = allocate_bits(15, std::pair{3, 2});
    const MultilinearPoly poly = build_cost_poly(15, a15);
    const std::vector<std::pair<VarMask, std::int64_t>> binary{{0b000, 196}, {0b100, -52}, {0b001, -52}, {0b101, -56},
                                                               {0b010, -96}, {0b110, -48}, {0b011, 16},  {0b111, 128}};
    bool ok = poly.size() == binary.size();
    for (const auto &[m, c] : binary) {
        ok = ok && poly.coeff(m) == c;
    }
    add("n15_binary_coefficients", ok, "8 coefficients of the expanded cost");
    const SpinHamiltonian h15 = binary_to_spin(poly);
    const std::vector<std::pair<VarMask, std::int64_t>> spin{{0b000, 90}, {0b100, -36}, {0b010, -40}, {0b001, -20},
                                                             {0b101, 2},  {0b110, 4},   {0b011, 20},  {0b111, 16}};
    ok = h15.terms.size() == spin.size();
    for (const auto &[m, c] : spin) {
        ok = ok && h15.coeff(m) == Dyadic{c, 0};
    }
    add("n15_spin_coefficients", ok, "8 spin coefficients including +4 s1 s2");
    const auto g15 = ground_solutions(h15, a15);
    add("n15_ground_state", g15.size() == 1 && g15[0].index == 6 && g15[0].p == 5 && g15[0].q == 3, "unique solution |110> -> 5 x 3");

    // Gradient and QFI identities on random instances.
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double worst_grad = 0.0;
    double worst_qfi = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int q = 2 + trial % 4;
        const Ansatz ans = Ansatz::linear_chain(q, 1 + trial % 2);
        ParamVector th(ans.parameter_count());
        for (double &t : th) {
            t = angle(rng);
        }
        std::vector<double> diag(std::size_t{1} << q);
        for (double &d : diag) {
            d = angle(rng);
        }
        const DiagonalOperator h(q, diag);
        const Eigen::VectorXd C = build_C(ans, th, h);
        const double eps = 1e-4;
        for (std::size_t i = 0; i < th.size(); ++i) {
            ParamVector tp = th;
            ParamVector tm = th;
            tp[i] += eps;
            tm[i] -= eps;
            const double fd = (expectation(prepare<double>(ans, tp), h) - expectation(prepare<double>(ans, tm), h)) / (2 * eps);
            worst_grad = std::max(worst_grad, std::abs(-2.0 * C(static_cast<Eigen::Index>(i)) - fd));
        }
        worst_qfi = std::max(worst_qfi, qfi_check(ans, th));
    }
    add("gradient_vs_finite_difference", worst_grad <= 1e-6, "max deviation " + format_double(worst_grad));
    add("qfi_identity", worst_qfi <= 1e-10, "max |F - 4M| " + format_double(worst_qfi));

    // Engine against the exact evolution at small imaginary time.
    const DiagonalOperator d15(h15);
    QiteConfig cfg;
    cfg.depth = 3;
    cfg.dtau = 1e-3;
    cfg.ridge_lambda = 1e-6;
    cfg.energy_norm.reset();
    cfg.init_mode = InitMode::uniform;
    cfg.max_iters = 50;
    cfg.amp_threshold = 1.0;
    cfg.track_targets = {6};
    const RunTrace engine = run_qite(d15, Ansatz::linear_chain(3, 3), cfg);
    std::vector<double> taus;
    for (const auto &rec : engine.records) {
        taus.push_back(rec.iter * cfg.dtau * engine.energy_scale);
    }
    const ItePath path = ite_evolve(d15, taus);
    double worst = 0.0;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        worst = std::max(worst, std::abs(engine.records[k].energy - path.energies[k]));
    }
    add("engine_vs_oracle_n15", worst <= 1.0, "max |E_engine - E_exact| " + format_double(worst) + " over " + std::to_string(taus.size()) + " points");
    if (overlay_dir) {
        std::filesystem::create_directories(*overlay_dir);
        write_file(*overlay_dir / "engine_n15.csv", trace_csv(engine));
        const std::uint64_t target = 6;
        write_file(*overlay_dir / "oracle_n15.csv", trace_csv(to_trace(path, std::span(&target, 1))));
    }
    return out;
}

int cmd_check(std::ostream &out, const std::optional<std::filesystem::path> &overlay_dir) {
    std::vector<CheckResult> results;
    try {
        results = run_checks(overlay_dir);
    } catch (const std::exception &e) {
        out << "FAIL  check suite aborted: " << e.what() << '\n';
        return kExitError;
    }
    bool all = true;
    for (const auto &r : results) {
        out << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
        all = all && r.pass;
    }
    return all ? kExitVerified : kExitError;
}

int cmd_verify(const std::filesystem::path &hamiltonian_file, std::ostream &out, std::ostream &err) {
    try {
        std::ifstream is(hamiltonian_file);
        if (!is) {
            err << "error: cannot open " << hamiltonian_file.string() << '\n';
            return kExitError;
        }
        Json j;
        try {
            j = Json::parse(is);
        } catch (const nlohmann::json::exception &e) {
            throw SchemaError(std::string("invalid JSON: ") + e.what());
        }
        const SpinHamiltonian h = hamiltonian_from_json(j);
        const auto diag = diag_energies(h);
        const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
        const auto zeros = std::count(diag.begin(), diag.end(), 0.0);
        out << "n_qubits " << h.n_qubits << ", " << h.terms.size() << " terms, energies in [" << format_double(*lo) << ", "
            << format_double(*hi) << "], " << zeros << " zero-energy states\n";
        if (*lo < 0.0) {
            err << "error: Hamiltonian has negative diagonal entries\n";
            return kExitError;
        }
    } catch (const SchemaError &e) {
        err << "schema error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitVerified;
}

} // namespace qitefactor
