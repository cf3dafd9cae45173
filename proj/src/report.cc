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

#include "qvlc/report.h"

#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "qvlc/error.h"

namespace qvlc {

namespace {

using nlohmann::json;

std::string fmt_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.17g}", x);
}

std::string cell(const std::optional<double> &x, double scale = 1.0) {
    return x ? fmt_double(*x * scale) : std::string();
}

std::string cell(const std::optional<bool> &x) {
    if (!x) {
        return "";
    }
    return *x ? "true" : "false";
}

json value(const std::optional<double> &x, double scale = 1.0) {
    if (!x) {
        return nullptr;
    }
    double v = *x * scale;
    if (!std::isfinite(v)) {
        return fmt_double(v);
    }
    return v;
}

json value(const std::optional<bool> &x) { return x ? json(*x) : json(nullptr); }

}  // namespace

void ReportRow::settle() {
    if (status == "infeasible") {
        return;
    }
    for (const auto &flag : {error_ok, overflow_ok, rank_ok}) {
        if (flag && !*flag) {
            status = "violation";
            return;
        }
    }
}

bool SimulationReport::all_ok() const {
    for (const ReportRow &row : rows) {
        if (row.status == "violation") {
            return false;
        }
    }
    return true;
}

std::vector<std::string> csv_columns(const DisplayOptions &opts) {
    std::vector<std::string> cols{"mode",          "n",           "d",
                                  "rate",          "delta",       "delta_prime",
                                  "status",        "error",       "error_definitional",
                                  "error_stderr",  "error_middle", "error_bound",
                                  "error_ok",      "overflow",    "overflow_bound",
                                  "overflow_ok",   "rank",        "rank_bound",
                                  "rank_ok",       "exponent",    "exponent_method",
                                  "argmin"};
    if (opts.timings) {
        cols.push_back("runtime_ms");
    }
    return cols;
}

std::string to_csv(const SimulationReport &report, const DisplayOptions &opts) {
    const double unit = opts.bits ? 1.0 / std::numbers::ln2 : 1.0;
    std::string out = fmt::format("# {} units={}\n", kReportSchema, opts.bits ? "bits" : "nats");
    std::vector<std::string> cols = csv_columns(opts);
    for (std::size_t i = 0; i < cols.size(); i++) {
        out += (i ? "," : "") + cols[i];
    }
    out += "\n";
    for (const ReportRow &r : report.rows) {
        std::vector<std::string> f{
            std::string(to_string(r.mode)),
            r.n ? std::to_string(*r.n) : std::string(),
            std::to_string(r.d),
            cell(r.rate, unit),
            cell(r.delta, unit),
            cell(r.delta_prime, unit),
            r.status,
            cell(r.error),
            cell(r.error_definitional),
            cell(r.error_stderr),
            cell(r.error_middle),
            cell(r.error_bound),
            cell(r.error_ok),
            cell(r.overflow),
            cell(r.overflow_bound),
            cell(r.overflow_ok),
            r.rank ? std::to_string(*r.rank) : std::string(),
            cell(r.rank_bound),
            cell(r.rank_ok),
            cell(r.exponent, unit),
            r.exponent_method,
            r.argmin,
        };
        if (opts.timings) {
            f.push_back(cell(r.runtime_ms));
        }
        for (std::size_t i = 0; i < f.size(); i++) {
            out += (i ? "," : "") + f[i];
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const SimulationReport &report, const DisplayOptions &opts) {
    const double unit = opts.bits ? 1.0 / std::numbers::ln2 : 1.0;
    json j;
    j["schema"] = kReportSchema;
    j["config"] = report.config;
    j["provenance"] = report.provenance;
    j["provenance"]["units"] = opts.bits ? "bits" : "nats";
    j["rows"] = json::array();
    for (const ReportRow &r : report.rows) {
        json row;
        row["mode"] = to_string(r.mode);
        row["n"] = r.n ? json(*r.n) : json(nullptr);
        row["d"] = r.d;
        row["rate"] = value(r.rate, unit);
        row["delta"] = value(r.delta, unit);
        row["delta_prime"] = value(r.delta_prime, unit);
        row["status"] = r.status;
        row["error"] = value(r.error);
        row["error_definitional"] = value(r.error_definitional);
        row["error_stderr"] = value(r.error_stderr);
        row["error_middle"] = value(r.error_middle);
        row["error_bound"] = value(r.error_bound);
        row["error_ok"] = value(r.error_ok);
        row["overflow"] = value(r.overflow);
        row["overflow_bound"] = value(r.overflow_bound);
        row["overflow_ok"] = value(r.overflow_ok);
        row["rank"] = r.rank ? json(*r.rank) : json(nullptr);
        row["rank_bound"] = value(r.rank_bound);
        row["rank_ok"] = value(r.rank_ok);
        row["exponent"] = value(r.exponent, unit);
        row["exponent_method"] = r.exponent_method.empty() ? json(nullptr) : json(r.exponent_method);
        row["argmin"] = r.argmin.empty() ? json(nullptr) : json(r.argmin);
        if (opts.timings) {
            row["runtime_ms"] = value(r.runtime_ms);
        }
        j["rows"].push_back(std::move(row));
    }
    j["all_ok"] = report.all_ok();
    return j.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path &path, const std::string &content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ResourceError(fmt::format("cannot write {}", tmp.string()));
        }
        out << content;
        if (!out) {
            throw ResourceError(fmt::format("write to {} failed", tmp.string()));
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qvlc
