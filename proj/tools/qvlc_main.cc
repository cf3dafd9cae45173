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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qvlc/config.h"
#include "qvlc/error.h"
#include "qvlc/harness.h"
#include "qvlc/projector_cache.h"
#include "qvlc/report.h"
#include "qvlc/schur_weyl.h"

namespace {

struct ReportFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
    bool bits = false;
    bool timings = false;
    int jobs = 1;
};

void add_report_flags(CLI::App *cmd, ReportFlags &f, bool config_required) {
    auto *opt = cmd->add_option("--config", f.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
    if (config_required) {
        opt->required();
    }
    cmd->add_option("--seed", f.seed, "Override the config seed");
    cmd->add_option("--out", f.out, "Output path (default: config output, else stdout)");
    cmd->add_option("--format", f.format, "csv or json (default: config format)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--bits", f.bits, "Print rates, deltas and exponents in bits");
    cmd->add_flag("--timings", f.timings, "Add per-cell runtimes (breaks byte reproducibility)");
    cmd->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

int emit(qvlc::ExperimentConfig &cfg, const ReportFlags &f, bool sweep) {
    if (f.seed) {
        cfg.seed = *f.seed;
        cfg.expansion.seed = *f.seed;
        cfg.raw["seed"] = *f.seed;
    }
    if (!f.format.empty()) {
        cfg.format = f.format;
    }
    qvlc::RunOptions ropts;
    ropts.jobs = f.jobs;
    ropts.timings = f.timings;
    ropts.sweep = sweep;
    qvlc::SimulationReport report = qvlc::run_experiment(cfg, ropts);
    qvlc::DisplayOptions dopts{f.bits, f.timings};
    std::string text = cfg.format == "json" ? qvlc::to_json(report, dopts) : qvlc::to_csv(report, dopts);
    std::string out = !f.out.empty() ? f.out : cfg.output.value_or("");
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        qvlc::write_atomic(out, text);
    }
    for (const qvlc::ReportRow &row : report.rows) {
        if (row.status == "violation") {
            std::cerr << fmt::format("bound violation: mode {} n {} rate {}\n", qvlc::to_string(row.mode),
                                     row.n.value_or(0), row.rate.value_or(0.0));
        }
    }
    return report.all_ok() ? qvlc::kExitOk : qvlc::kExitBoundViolation;
}

std::vector<double> parse_list(const std::string &s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) {
            throw qvlc::ConfigError(fmt::format("empty entry in list '{}'", s));
        }
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != tok.size()) {
            throw qvlc::ConfigError(fmt::format("'{}' is not a number", tok));
        }
        out.push_back(v);
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qvlc: universal fixed- and variable-length quantum source codes at desk scale"};
    app.require_subcommand(1);

    ReportFlags run_flags, sweep_flags, exp_flags;
    auto *run = app.add_subcommand("run", "Evaluate a single-setting experiment");
    add_report_flags(run, run_flags, true);
    auto *sweep = app.add_subcommand("sweep", "Evaluate the cartesian product of all config axes");
    add_report_flags(sweep, sweep_flags, true);

    auto *exponent = app.add_subcommand("exponent", "Overflow exponent min D(b||a) over H(b) >= R");
    add_report_flags(exponent, exp_flags, false);
    std::string a_list, rate_list;
    double grid_step = 0;
    exponent->add_option("--a", a_list, "Comma-separated distribution a");
    exponent->add_option("--rates", rate_list, "Comma-separated rates R (nats)");
    exponent->add_option("--grid-step", grid_step, "Oracle grid step (0 = default for d)");

    auto *cache = app.add_subcommand("cache", "Manage the on-disk projector cache");
    cache->require_subcommand(1);
    auto *cache_build = cache->add_subcommand("build", "Build and store the decomposition for (n, d)");
    int cache_n = 0, cache_d = 0;
    std::size_t cache_cap = qvlc::ResourceLimits{}.max_dimension;
    cache_build->add_option("--n", cache_n, "Number of copies")->required()->check(CLI::PositiveNumber);
    cache_build->add_option("--d", cache_d, "Local dimension")->required()->check(CLI::PositiveNumber);
    cache_build->add_option("--max-dimension", cache_cap, "Cap on d^n");
    auto *cache_clear = cache->add_subcommand("clear", "Delete stored decompositions");

    auto *validate = app.add_subcommand("validate", "Check a config and exit");
    std::string validate_path;
    validate->add_option("--config", validate_path, "Experiment config (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : qvlc::kExitConfig;
    }

    try {
        if (*run) {
            qvlc::ExperimentConfig cfg = qvlc::load_config(run_flags.config_path);
            return emit(cfg, run_flags, false);
        }
        if (*sweep) {
            qvlc::ExperimentConfig cfg = qvlc::load_config(sweep_flags.config_path);
            return emit(cfg, sweep_flags, true);
        }
        if (*exponent) {
            qvlc::ExperimentConfig cfg;
            if (!exp_flags.config_path.empty()) {
                cfg = qvlc::load_config(exp_flags.config_path);
                if (cfg.mode != qvlc::Mode::kExponent) {
                    throw qvlc::ConfigError("exponent subcommand needs a config in exponent mode");
                }
            } else {
                if (a_list.empty() || rate_list.empty()) {
                    throw qvlc::ConfigError("exponent needs --config or both --a and --rates");
                }
                nlohmann::json j = {{"mode", "exponent"},
                                    {"exponent", {{"a", parse_list(a_list)}, {"grid_step", grid_step}}},
                                    {"rates", parse_list(rate_list)}};
                cfg = qvlc::parse_config(j);
            }
            return emit(cfg, exp_flags, true);
        }
        if (*cache) {
            std::optional<std::filesystem::path> dir = qvlc::cache_directory();
            if (!dir) {
                throw qvlc::ConfigError(fmt::format("set {} to use the projector cache", qvlc::kCacheDirEnv));
            }
            if (*cache_build) {
                qvlc::ResourceLimits limits;
                limits.max_dimension = cache_cap;
                auto decomp = qvlc::isotypic_decomposition(cache_n, cache_d, limits);
                std::cout << fmt::format("{} blocks for n = {}, d = {} in {}\n", decomp->blocks.size(), cache_n,
                                         cache_d, qvlc::cache_file(*dir, cache_n, cache_d).string());
            } else if (*cache_clear) {
                std::cout << fmt::format("removed {} files from {}\n", qvlc::clear_disk_cache(*dir), dir->string());
            }
            return qvlc::kExitOk;
        }
        if (*validate) {
            qvlc::ExperimentConfig cfg = qvlc::load_config(validate_path);
            std::cout << fmt::format("ok: mode {}, {} cells\n", qvlc::to_string(cfg.mode), qvlc::cell_count(cfg));
            return qvlc::kExitOk;
        }
    } catch (const qvlc::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return qvlc::kExitConfig;
    } catch (const qvlc::ResourceError &e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return qvlc::kExitResources;
    } catch (const qvlc::InvariantError &e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return qvlc::kExitInvariant;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return qvlc::kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return qvlc::kExitInvariant;
    }
    return qvlc::kExitOk;
}
