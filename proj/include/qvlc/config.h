// Copyright 2026 The qvlc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QVLC_CONFIG_H_
#define QVLC_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qvlc/entangled.h"
#include "qvlc/expansion.h"

namespace qvlc {

/// Schema or validation failure in an experiment config.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class Mode { kFixed, kVarlen, kNaive, kEntangledFixed, kEntangledVarlen, kExponent };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);
bool is_entangled(Mode m);

struct DeltaPair {
    double delta = 0;
    std::optional<double> delta_prime;
};

struct ExperimentConfig {
    Mode mode = Mode::kFixed;
    int d = 2;
    int dim_b = 1;
    /// Plain modes use dim_b = 1.
    BipartiteEnsemble source;
    int n_lo = 2;
    int n_hi = 2;
    std::vector<double> rates;
    std::vector<DeltaPair> deltas;
    /// delta_n = n^{-1/6}, delta'_n = n^{-1/3} in place of `deltas`. Where the
    /// scheduled pair is infeasible the first entry of `deltas` is used instead.
    bool schedule = false;
    std::vector<double> naive_grid;
    /// Also compute the numerically evaluated Bures error of partition codes.
    bool definitional = true;
    std::uint64_t seed = 0;
    ExpansionOptions expansion;
    std::vector<double> exponent_a;
    double grid_step = 0;
    std::optional<std::string> output;
    std::string format = "csv";
    nlohmann::json raw;
};

/// Throws ConfigError with a field path on any schema or validity failure.
ExperimentConfig parse_config(const nlohmann::json &j);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Named sources. Parameters come from the preset object itself.
///   pure-qubit-pair {theta, p}: |0> w.p. p, cos(theta)|0> + sin(theta)|1> w.p. 1 - p
///   diagonal-qubit {q}: the single mixed state diag(1 - q, q)
///   bell: (|00> + |11>)/sqrt 2, dim_b = 2
///   schmidt {q}: sqrt(q)|00> + sqrt(1 - q)|11>, dim_b = 2
BipartiteEnsemble preset_source(const nlohmann::json &spec, int &d, int &dim_b);

}  // namespace qvlc

#endif  // QVLC_CONFIG_H_
