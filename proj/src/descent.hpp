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

// Iteration driver shared by the QITE and VQE loops.

#pragma once

#include "qitefactor/engine.hpp"

#include <functional>

namespace qitefactor::detail {

struct LoopSettings {
    std::string method;
    int max_iters = 0;
    double amp_threshold = 0.85;
    TrackingMode tracking = TrackingMode::exact_targets;
    std::uint64_t shots = 1024;
    std::uint64_t rng_seed = 0;
    std::vector<std::uint64_t> targets;
    double energy_scale = 1.0;
    bool need_metric = true;
};

/// Maps the system at the current parameters to a parameter increment.
using StepFn = std::function<StepResult(const McLachlanSystem &)>;

/// M is left empty when need_metric is false.
McLachlanSystem assemble(const Ansatz &ansatz, std::span<const double> params, const DiagonalOperator &h, bool need_metric);

RunTrace run_descent(const DiagonalOperator &h, const Ansatz &ansatz, const LoopSettings &settings, ParamVector params,
                     const StepFn &step);

/// Stream seed for the sampling draw at iteration `iter`.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t iter);

} // namespace qitefactor::detail
