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

#ifndef QVLC_REPORT_H_
#define QVLC_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qvlc/config.h"

namespace qvlc {

inline constexpr const char *kReportSchema = "qvlc-report/1";
inline constexpr const char *kVersion = "0.1.0";

struct ReportRow {
    Mode mode = Mode::kFixed;
    std::optional<int> n;
    int d = 0;
    std::optional<double> rate;
    std::optional<double> delta;
    std::optional<double> delta_prime;
    /// "ok", "infeasible" or "violation".
    std::string status = "ok";
    std::optional<double> error;
    std::optional<double> error_definitional;
    std::optional<double> error_stderr;
    std::optional<double> error_middle;
    std::optional<double> error_bound;
    std::optional<bool> error_ok;
    std::optional<double> overflow;
    std::optional<double> overflow_bound;
    std::optional<bool> overflow_ok;
    std::optional<std::int64_t> rank;
    std::optional<double> rank_bound;
    std::optional<bool> rank_ok;
    std::optional<double> exponent;
    std::string exponent_method;
    std::string argmin;
    std::optional<double> runtime_ms;

    /// Sets status to "violation" if any flag is false.
    void settle();
};

struct SimulationReport {
    nlohmann::json config;
    nlohmann::json provenance;
    std::vector<ReportRow> rows;

    bool all_ok() const;
};

struct DisplayOptions {
    /// Rates, deltas and exponents in bits instead of nats.
    bool bits = false;
    /// Adds the runtime_ms column; reports then stop being byte-reproducible.
    bool timings = false;
};

std::vector<std::string> csv_columns(const DisplayOptions &opts);
std::string to_csv(const SimulationReport &report, const DisplayOptions &opts = {});
std::string to_json(const SimulationReport &report, const DisplayOptions &opts = {});

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path &path, const std::string &content);

}  // namespace qvlc

#endif  // QVLC_REPORT_H_
