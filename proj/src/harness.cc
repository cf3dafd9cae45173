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

#include "qvlc/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include <fmt/format.h>

#include "qvlc/classical.h"
#include "qvlc/entangled.h"
#include "qvlc/fixed_code.h"
#include "qvlc/numeric.h"
#include "qvlc/varlen_code.h"

namespace qvlc {

namespace {

using Cell = std::function<std::vector<ReportRow>(const ExpansionOptions &)>;

std::string join_probs(std::span<const double> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); i++) {
        out += (i ? ";" : "") + fmt::format("{:.17g}", v[i]);
    }
    return out;
}

std::vector<ReportRow> fixed_cell(const ExperimentConfig &cfg, int n, double rate, const ExpansionOptions &opts) {
    FixedLengthCode code = FixedLengthCode::make(rate, n, cfg.d, opts.limits);
    ErrorChain chain = cfg.mode == Mode::kFixed ? error_bound_chain(code, cfg.source.reduced_a(), opts)
                                                : local_fixed_error_chain(code, cfg.source, opts);
    ReportRow row;
    row.mode = cfg.mode;
    row.n = n;
    row.d = cfg.d;
    row.rate = rate;
    row.error = chain.exact.value;
    row.error_stderr = chain.exact.std_error;
    row.error_middle = chain.two_one_minus_trace;
    row.error_bound = chain.rhs;
    row.error_ok = chain.ordered;
    row.rank = code.projector().rank;
    row.rank_bound = rank_bound(n, cfg.d, rate);
    row.rank_ok = static_cast<double>(*row.rank) <= *row.rank_bound;
    return {row};
}

std::vector<ReportRow> partition_rows(const ExperimentConfig &cfg, const PartitionCode &code,
                                      std::optional<double> delta_prime, const ExpansionOptions &opts) {
    double completeness = code.completeness_error();
    if (completeness > 1e-10) {
        throw InvariantError(fmt::format("POVM completeness off by {:.3e} at n = {}", completeness, code.n()));
    }
    VarlenReportOptions ropts;
    ropts.expansion = opts;
    ropts.definitional = cfg.definitional;
    ropts.delta_prime = delta_prime;
    ropts.rates = cfg.rates;
    VarlenReport rep = is_entangled(cfg.mode) ? local_varlen_report(code, cfg.source, ropts)
                                              : varlen_report(code, cfg.source.reduced_a(), ropts);
    if (rep.error_definitional) {
        double gap = std::abs(rep.error_definitional->value - rep.error_exact.value);
        if (gap > 1e-8) {
            throw InvariantError(fmt::format("closed-form and definitional errors differ by {:.3e} at n = {}", gap,
                                             code.n()));
        }
    }
    ReportRow base;
    base.mode = cfg.mode;
    base.n = code.n();
    base.d = cfg.d;
    if (code.smeared()) {
        base.delta = code.delta();
        base.delta_prime = delta_prime;
    }
    base.error = rep.error_exact.value;
    base.error_stderr = rep.error_exact.std_error;
    if (rep.error_definitional) {
        base.error_definitional = rep.error_definitional->value;
    }
    if (rep.error_bound) {
        base.error_bound = *rep.error_bound;
        base.error_ok = rep.error_ok;
    }
    std::vector<ReportRow> rows;
    if (rep.overflow.empty()) {
        rows.push_back(base);
    }
    for (const OverflowRow &o : rep.overflow) {
        ReportRow row = base;
        row.rate = o.rate;
        row.overflow = o.probability;
        if (code.smeared()) {
            row.overflow_bound = o.bound;
            row.overflow_ok = o.ok;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<ReportRow> infeasible_rows(const ExperimentConfig &cfg, int n, const DeltaPair &pair) {
    std::vector<ReportRow> rows;
    ReportRow base;
    base.mode = cfg.mode;
    base.n = n;
    base.d = cfg.d;
    base.delta = pair.delta;
    base.delta_prime = pair.delta_prime;
    base.status = "infeasible";
    if (cfg.rates.empty()) {
        rows.push_back(base);
    }
    for (double r : cfg.rates) {
        ReportRow row = base;
        row.rate = r;
        rows.push_back(row);
    }
    return rows;
}

/// Feasible when floor(n delta) >= 1 after delta is snapped to ln d / (l - 1)
/// and, if delta' is given, 0 < 2 delta' < delta.
bool feasible(int n, int d, const DeltaPair &pair) {
    if (!(pair.delta > 0)) {
        return false;
    }
    double ln_d = std::log(static_cast<double>(d));
    int l = std::max(2, static_cast<int>(std::ceil(ln_d / pair.delta - 1e-12)) + 1);
    double exact = ln_d / (l - 1);
    if (gauss_floor(n * exact) < 1 || n * pair.delta < 1.0) {
        return false;
    }
    return !pair.delta_prime || (*pair.delta_prime > 0 && 2 * *pair.delta_prime < exact);
}

std::vector<ReportRow> smeared_cell(const ExperimentConfig &cfg, int n, DeltaPair pair,
                                    const ExpansionOptions &opts) {
    if (cfg.schedule) {
        Schedule s = schedule(n);
        DeltaPair scheduled{s.delta, s.delta_prime};
        if (feasible(n, cfg.d, scheduled) || cfg.deltas.empty()) {
            pair = scheduled;
        } else {
            pair = cfg.deltas.front();
        }
    }
    if (!feasible(n, cfg.d, pair)) {
        return infeasible_rows(cfg, n, pair);
    }
    PartitionCode code = PartitionCode::make_smeared(n, cfg.d, pair.delta, opts.limits);
    return partition_rows(cfg, code, pair.delta_prime, opts);
}

std::vector<ReportRow> naive_cell(const ExperimentConfig &cfg, int n, const ExpansionOptions &opts) {
    PartitionCode code = PartitionCode::make_naive(RateGrid(cfg.naive_grid, cfg.d), n, cfg.d, opts.limits);
    return partition_rows(cfg, code, std::nullopt, opts);
}

std::vector<ReportRow> exponent_cell(const ExperimentConfig &cfg, double rate) {
    GridOptions gopts;
    gopts.step = cfg.grid_step;
    ProbVector a(cfg.exponent_a);
    ExponentResult res = overflow_exponent(a, rate, gopts);
    ReportRow row;
    row.mode = cfg.mode;
    row.d = cfg.d;
    row.rate = rate;
    row.exponent = res.value;
    row.exponent_method = std::string(to_string(res.method));
    row.argmin = join_probs(res.argmin.values());
    return {row};
}

std::vector<Cell> build_cells(const ExperimentConfig &cfg) {
    std::vector<Cell> cells;
    switch (cfg.mode) {
        case Mode::kFixed:
        case Mode::kEntangledFixed:
            for (int n = cfg.n_lo; n <= cfg.n_hi; n++) {
                for (double r : cfg.rates) {
                    cells.push_back([&cfg, n, r](const ExpansionOptions &o) { return fixed_cell(cfg, n, r, o); });
                }
            }
            break;
        case Mode::kVarlen:
        case Mode::kEntangledVarlen:
            for (int n = cfg.n_lo; n <= cfg.n_hi; n++) {
                if (cfg.schedule) {
                    cells.push_back([&cfg, n](const ExpansionOptions &o) { return smeared_cell(cfg, n, {}, o); });
                    continue;
                }
                for (const DeltaPair &p : cfg.deltas) {
                    cells.push_back([&cfg, n, p](const ExpansionOptions &o) { return smeared_cell(cfg, n, p, o); });
                }
            }
            break;
        case Mode::kNaive:
            for (int n = cfg.n_lo; n <= cfg.n_hi; n++) {
                cells.push_back([&cfg, n](const ExpansionOptions &o) { return naive_cell(cfg, n, o); });
            }
            break;
        case Mode::kExponent:
            for (double r : cfg.rates) {
                cells.push_back([&cfg, r](const ExpansionOptions &) { return exponent_cell(cfg, r); });
            }
            break;
    }
    return cells;
}

void check_single_setting(const ExperimentConfig &cfg) {
    bool fixed = cfg.mode == Mode::kFixed || cfg.mode == Mode::kEntangledFixed;
    bool varlen = cfg.mode == Mode::kVarlen || cfg.mode == Mode::kEntangledVarlen;
    if (fixed && cfg.rates.size() > 1) {
        throw ConfigError("run takes a single rate; use sweep for several");
    }
    if (varlen && cfg.deltas.size() > 1 && !cfg.schedule) {
        throw ConfigError("run takes a single (delta, delta') pair; use sweep for several");
    }
}

}  // namespace

std::size_t cell_count(const ExperimentConfig &cfg) { return build_cells(cfg).size(); }

SimulationReport run_experiment(const ExperimentConfig &cfg, const RunOptions &opts) {
    if (!opts.sweep) {
        check_single_setting(cfg);
    }
    const std::vector<Cell> cells = build_cells(cfg);
    std::vector<std::vector<ReportRow>> results(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) {
                return;
            }
            ExpansionOptions local = cfg.expansion;
            local.seed = splitmix64(cfg.seed ^ splitmix64(i));
            auto start = std::chrono::steady_clock::now();
            try {
                results[i] = cells[i](local);
            } catch (...) {
                errors[i] = std::current_exception();
            }
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            for (ReportRow &row : results[i]) {
                row.settle();
                if (opts.timings) {
                    row.runtime_ms = ms;
                }
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(cells.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; t++) {
            pool.emplace_back(worker);
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }
    for (const std::exception_ptr &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    SimulationReport report;
    report.config = cfg.raw;
    report.provenance = {
        {"tool", "qvlc"},
        {"version", kVersion},
        {"seed", cfg.seed},
        {"max_terms", cfg.expansion.max_terms},
        {"monte_carlo", cfg.expansion.monte_carlo},
        {"mc_samples", cfg.expansion.mc_samples},
        {"max_dimension", cfg.expansion.limits.max_dimension},
        {"grid_step", cfg.mode == Mode::kExponent && cfg.exponent_a.size() > 0
                          ? (cfg.grid_step > 0 ? cfg.grid_step : default_grid_step(cfg.d))
                          : 0.0},
    };
    for (auto &rows : results) {
        for (ReportRow &row : rows) {
            report.rows.push_back(std::move(row));
        }
    }
    std::stable_sort(report.rows.begin(), report.rows.end(), [](const ReportRow &a, const ReportRow &b) {
        int na = a.n.value_or(0);
        int nb = b.n.value_or(0);
        if (na != nb) {
            return na < nb;
        }
        return a.rate.value_or(-1.0) < b.rate.value_or(-1.0);
    });
    return report;
}

}  // namespace qvlc
