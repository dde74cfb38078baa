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

// qite_factor: factor biprimes with variational imaginary-time evolution.

#include "qitefactor/experiment.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>

namespace {

using namespace qitefactor;

struct Flags {
    std::optional<std::uint64_t> n;
    std::optional<int> p_bits;
    std::optional<int> q_bits;
    std::optional<std::string> method;
    std::optional<std::string> policy;
    std::optional<double> dtau;
    std::optional<double> eta;
    std::optional<int> depth;
    std::optional<std::string> family;
    std::optional<std::string> init;
    std::optional<double> threshold;
    std::optional<int> max_iters;
    std::optional<double> ridge;
    std::optional<std::string> seeds;
    std::optional<std::uint64_t> shots;
    std::optional<std::string> out;
    std::optional<int> jobs;
    std::optional<double> tau;
    std::optional<std::string> energy_norm;
    std::optional<std::string> config;
};

void add_run_flags(CLI::App &cmd, Flags &f) {
    cmd.add_option("--p-bits", f.p_bits, "Bits of p (with --q-bits overrides the allocation)");
    cmd.add_option("--q-bits", f.q_bits, "Bits of q");
    cmd.add_option("--policy", f.policy, "Allocation policy: heuristic | oracle-assisted");
    cmd.add_option("--dtau", f.dtau, "QITE step size");
    cmd.add_option("--eta", f.eta, "VQE learning rate");
    cmd.add_option("--depth", f.depth, "Ansatz layers after the base layer");
    cmd.add_option("--family", f.family, "VQE ansatz family: ry_only | ry_rx");
    cmd.add_option("--init", f.init, "uniform | random | perturbed[:eps]");
    cmd.add_option("--threshold", f.threshold, "Stopping amplitude");
    cmd.add_option("--max-iters", f.max_iters, "Iteration cap");
    cmd.add_option("--ridge", f.ridge, "Ridge added to M");
    cmd.add_option("--seed,--seeds", f.seeds, "Seed, list (1,2,5) or range (0-9)");
    cmd.add_option("--shots", f.shots, "Track the sampled maximum with this many shots");
    cmd.add_option("--out", f.out, "Output directory");
    cmd.add_option("--jobs", f.jobs, "Parallel seeds");
    cmd.add_option("--energy-norm", f.energy_norm, "max|H| used by the dynamics, or 'raw'");
    cmd.add_option("--config", f.config, "Experiment config JSON; flags override it");
}

std::vector<std::uint64_t> parse_seeds(const std::string &s) {
    std::vector<std::uint64_t> out;
    const auto number = [&](std::string_view t) {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
            throw std::invalid_argument("bad seed list '" + s + "'");
        }
        return v;
    };
    std::string_view rest = s;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (const auto dash = item.find('-'); dash != std::string_view::npos) {
            const auto lo = number(item.substr(0, dash));
            const auto hi = number(item.substr(dash + 1));
            if (hi < lo || hi - lo > 100000) {
                throw std::invalid_argument("bad seed range '" + std::string(item) + "'");
            }
            for (auto v = lo; v <= hi; ++v) {
                out.push_back(v);
            }
        } else {
            out.push_back(number(item));
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("empty seed list");
    }
    return out;
}

ExperimentConfig build_config(const Flags &f) {
    ExperimentConfig c;
    c.max_qubits = ExperimentConfig::max_qubits_from_env();
    if (f.config) {
        std::ifstream is(*f.config);
        if (!is) {
            throw std::invalid_argument("cannot open config " + *f.config);
        }
        Json j;
        try {
            j = Json::parse(is);
        } catch (const nlohmann::json::exception &e) {
            throw SchemaError(std::string("config: ") + e.what());
        }
        c = experiment_from_json(j, c);
    }
    if (f.n) {
        c.N = *f.n;
    }
    if (f.p_bits.has_value() != f.q_bits.has_value()) {
        throw std::invalid_argument("--p-bits and --q-bits must be given together");
    }
    if (f.p_bits) {
        c.allocation = std::pair{*f.p_bits, *f.q_bits};
    }
    if (f.policy) {
        c.policy = parse_policy(*f.policy);
    }
    if (f.method) {
        c.method = parse_method(*f.method);
    }
    if (f.dtau) {
        c.qite.dtau = *f.dtau;
    }
    if (f.eta) {
        c.vqe.eta = *f.eta;
    }
    if (f.depth) {
        c.qite.depth = *f.depth;
        c.vqe.depth = *f.depth;
    }
    if (f.family) {
        c.vqe.family = parse_family(*f.family);
    }
    if (f.init) {
        const auto colon = f.init->find(':');
        const InitMode mode = parse_init_mode(f.init->substr(0, colon));
        c.qite.init_mode = c.vqe.init_mode = mode;
        if (colon != std::string::npos) {
            if (mode != InitMode::perturbed) {
                throw std::invalid_argument("only perturbed init takes an epsilon");
            }
            c.qite.init_epsilon = c.vqe.init_epsilon = std::stod(f.init->substr(colon + 1));
        }
    }
    if (f.threshold) {
        c.qite.amp_threshold = c.vqe.amp_threshold = *f.threshold;
    }
    if (f.max_iters) {
        c.qite.max_iters = c.vqe.max_iters = *f.max_iters;
    }
    if (f.ridge) {
        c.qite.ridge_lambda = *f.ridge;
    }
    if (f.seeds) {
        c.seeds = parse_seeds(*f.seeds);
    }
    if (f.shots) {
        c.qite.tracking = c.vqe.tracking = TrackingMode::sampled_max;
        c.qite.shots = c.vqe.shots = *f.shots;
    }
    if (f.out) {
        c.out_dir = *f.out;
    }
    if (f.jobs) {
        c.jobs = *f.jobs;
    }
    if (f.tau) {
        c.tau = *f.tau;
    }
    if (f.energy_norm) {
        if (*f.energy_norm == "raw") {
            c.qite.energy_norm.reset();
            c.vqe.energy_norm.reset();
        } else {
            c.qite.energy_norm = c.vqe.energy_norm = std::stod(*f.energy_norm);
        }
    }
    if (c.jobs < 1) {
        throw std::invalid_argument("--jobs must be at least 1");
    }
    return c;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Factor biprimes with variational quantum imaginary-time evolution"};
    app.require_subcommand(1);

    Flags factor_flags;
    auto *factor = app.add_subcommand("factor", "Factor one N");
    factor->add_option("--n", factor_flags.n, "Odd biprime, at least 9");
    factor->add_option("--method", factor_flags.method, "qite | vqe | oracle | compare");
    factor->add_option("--tau", factor_flags.tau, "Final imaginary time (oracle)");
    add_run_flags(*factor, factor_flags);

    Flags corpus_flags;
    std::string corpus_file;
    auto *corpus = app.add_subcommand("corpus", "Run QITE over a corpus file");
    corpus->add_option("file", corpus_file, "Corpus JSON")->required();
    add_run_flags(*corpus, corpus_flags);

    std::optional<std::string> overlay;
    auto *check = app.add_subcommand("check", "Run the fast invariant suite");
    check->add_option("--overlay", overlay, "Directory for the N=15 engine/oracle overlay CSVs");

    std::string verify_file;
    auto *verify = app.add_subcommand("verify", "Validate a Hamiltonian JSON file");
    verify->add_option("file", verify_file, "Hamiltonian JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitVerified : kExitError;
    }

    try {
        if (*factor) {
            return cmd_factor(build_config(factor_flags), std::cout, std::cerr);
        }
        if (*corpus) {
            const ExperimentConfig c = build_config(corpus_flags);
            std::ifstream is(corpus_file);
            if (!is) {
                std::cerr << "error: cannot open " << corpus_file << '\n';
                return kExitError;
            }
            Json j;
            try {
                j = Json::parse(is);
            } catch (const nlohmann::json::exception &e) {
                throw SchemaError(std::string("corpus: ") + e.what());
            }
            return cmd_corpus(corpus_from_json(j), c, std::cout, std::cerr);
        }
        if (*check) {
            return cmd_check(std::cout, overlay ? std::optional<std::filesystem::path>(*overlay) : std::nullopt);
        }
        if (*verify) {
            return cmd_verify(verify_file, std::cout, std::cerr);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
