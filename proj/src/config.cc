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

#include "qvlc/config.h"

#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

namespace qvlc {

namespace {

using nlohmann::json;

const json *find(const json &j, const char *key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double get_number(const json &j, const char *key, double fallback, const std::string &path) {
    const json *v = find(j, key);
    if (v == nullptr) {
        return fallback;
    }
    if (!v->is_number()) {
        throw ConfigError(fmt::format("{}.{} must be a number", path, key));
    }
    return v->get<double>();
}

int get_int(const json &j, const char *key, int fallback, const std::string &path) {
    const json *v = find(j, key);
    if (v == nullptr) {
        return fallback;
    }
    if (!v->is_number_integer()) {
        throw ConfigError(fmt::format("{}.{} must be an integer", path, key));
    }
    return v->get<int>();
}

std::vector<double> number_list(const json &v, const std::string &path) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
        return out;
    }
    if (!v.is_array()) {
        throw ConfigError(fmt::format("{} must be a number or a list of numbers", path));
    }
    for (const json &x : v) {
        if (!x.is_number()) {
            throw ConfigError(fmt::format("{} must contain only numbers", path));
        }
        out.push_back(x.get<double>());
    }
    return out;
}

Complex parse_complex(const json &v, const std::string &path) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError(fmt::format("{} must be [re, im]", path));
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Matrix parse_matrix(const json &v, const std::string &path) {
    if (!v.is_array() || v.empty()) {
        throw ConfigError(fmt::format("{} must be a non-empty list of rows", path));
    }
    const auto rows = static_cast<Eigen::Index>(v.size());
    Matrix m(rows, rows);
    for (Eigen::Index i = 0; i < rows; i++) {
        const json &row = v[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw ConfigError(fmt::format("{}[{}] must have {} entries", path, i, rows));
        }
        for (Eigen::Index k = 0; k < rows; k++) {
            m(i, k) = parse_complex(row[static_cast<std::size_t>(k)], fmt::format("{}[{}][{}]", path, i, k));
        }
    }
    return m;
}

Vector parse_vector(const json &v, const std::string &path) {
    if (!v.is_array() || v.empty()) {
        throw ConfigError(fmt::format("{} must be a non-empty list of amplitudes", path));
    }
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); i++) {
        out(static_cast<Eigen::Index>(i)) = parse_complex(v[i], fmt::format("{}[{}]", path, i));
    }
    double norm = out.norm();
    if (std::abs(norm - 1.0) > 1e-8) {
        throw ConfigError(fmt::format("{} has norm {}, expected 1", path, norm));
    }
    return out / norm;
}

BipartiteEnsemble explicit_source(const json &spec, int d, int dim_b) {
    const json *states = find(spec, "states");
    if (states == nullptr || !states->is_array() || states->empty()) {
        throw ConfigError("source.states must be a non-empty list");
    }
    std::vector<BipartiteItem> items;
    for (std::size_t s = 0; s < states->size(); s++) {
        const json &item = (*states)[s];
        const std::string path = fmt::format("source.states[{}]", s);
        if (!item.is_object()) {
            throw ConfigError(fmt::format("{} must be an object", path));
        }
        double prob = get_number(item, "prob", std::nan(""), path);
        if (std::isnan(prob)) {
            throw ConfigError(fmt::format("{}.prob is required", path));
        }
        DensityMatrix rho;
        try {
            if (const json *m = find(item, "matrix")) {
                rho = DensityMatrix(parse_matrix(*m, path + ".matrix"));
            } else if (const json *v = find(item, "vector")) {
                rho = DensityMatrix::pure(parse_vector(*v, path + ".vector"));
            } else {
                throw ConfigError(fmt::format("{} needs a matrix or a vector", path));
            }
        } catch (const ConfigError &) {
            throw;
        } catch (const std::invalid_argument &e) {
            throw ConfigError(fmt::format("{}: {}", path, e.what()));
        }
        if (rho.dim() != d * dim_b) {
            throw ConfigError(fmt::format("{} has dimension {}, expected d * dim_b = {}", path, rho.dim(), d * dim_b));
        }
        items.push_back({prob, BipartiteState(d, dim_b, std::move(rho))});
    }
    return BipartiteEnsemble(std::move(items));
}

}  // namespace

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::kFixed:
            return "fixed";
        case Mode::kVarlen:
            return "varlen";
        case Mode::kNaive:
            return "naive";
        case Mode::kEntangledFixed:
            return "entangled-fixed";
        case Mode::kEntangledVarlen:
            return "entangled-varlen";
        case Mode::kExponent:
            return "exponent";
    }
    return "?";
}

Mode parse_mode(std::string_view s) {
    for (Mode m : {Mode::kFixed, Mode::kVarlen, Mode::kNaive, Mode::kEntangledFixed, Mode::kEntangledVarlen,
                   Mode::kExponent}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw ConfigError(fmt::format("unknown mode '{}'", s));
}

bool is_entangled(Mode m) { return m == Mode::kEntangledFixed || m == Mode::kEntangledVarlen; }

BipartiteEnsemble preset_source(const json &spec, int &d, int &dim_b) {
    const std::string name = spec.at("preset").get<std::string>();
    if (name == "pure-qubit-pair") {
        double theta = get_number(spec, "theta", std::numbers::pi / 4, "source");
        double p = get_number(spec, "p", 0.5, "source");
        d = 2;
        dim_b = 1;
        Vector v0(2), v1(2);
        v0 << 1.0, 0.0;
        v1 << std::cos(theta), std::sin(theta);
        return BipartiteEnsemble({{p, BipartiteState::pure(2, 1, v0)}, {1.0 - p, BipartiteState::pure(2, 1, v1)}});
    }
    if (name == "diagonal-qubit") {
        double q = get_number(spec, "q", 0.25, "source");
        if (!(q >= 0 && q <= 1)) {
            throw ConfigError("source.q must lie in [0, 1]");
        }
        d = 2;
        dim_b = 1;
        std::vector<double> diag{1.0 - q, q};
        return BipartiteEnsemble({{1.0, BipartiteState(2, 1, DensityMatrix::diagonal(diag))}});
    }
    if (name == "bell" || name == "schmidt") {
        double q = name == "bell" ? 0.5 : get_number(spec, "q", 0.95, "source");
        if (!(q >= 0 && q <= 1)) {
            throw ConfigError("source.q must lie in [0, 1]");
        }
        d = 2;
        dim_b = 2;
        Vector psi = Vector::Zero(4);
        psi(0) = std::sqrt(q);
        psi(3) = std::sqrt(1.0 - q);
        return BipartiteEnsemble({{1.0, BipartiteState::pure(2, 2, psi)}});
    }
    throw ConfigError(fmt::format("unknown preset '{}'", name));
}

static ExperimentConfig parse_config_fields(const json &j) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    ExperimentConfig cfg;
    cfg.raw = j;
    const json *mode = find(j, "mode");
    if (mode == nullptr || !mode->is_string()) {
        throw ConfigError("mode is required");
    }
    cfg.mode = parse_mode(mode->get<std::string>());

    if (const json *seed = find(j, "seed")) {
        if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<std::int64_t>() >= 0)) {
            throw ConfigError("seed must be a non-negative integer");
        }
        cfg.seed = seed->get<std::uint64_t>();
    }
    cfg.expansion.seed = cfg.seed;
    if (const json *caps = find(j, "caps")) {
        if (!caps->is_object()) {
            throw ConfigError("caps must be an object");
        }
        int max_terms = get_int(*caps, "max_terms", static_cast<int>(cfg.expansion.max_terms), "caps");
        int samples = get_int(*caps, "mc_samples", static_cast<int>(cfg.expansion.mc_samples), "caps");
        int max_dim = get_int(*caps, "max_dimension", static_cast<int>(cfg.expansion.limits.max_dimension), "caps");
        if (max_terms < 1 || samples < 2 || max_dim < 1) {
            throw ConfigError("caps.max_terms >= 1, caps.mc_samples >= 2 and caps.max_dimension >= 1 are required");
        }
        cfg.expansion.max_terms = static_cast<std::size_t>(max_terms);
        cfg.expansion.mc_samples = static_cast<std::size_t>(samples);
        cfg.expansion.limits.max_dimension = static_cast<std::size_t>(max_dim);
        if (const json *mc = find(*caps, "monte_carlo")) {
            if (!mc->is_boolean()) {
                throw ConfigError("caps.monte_carlo must be a boolean");
            }
            cfg.expansion.monte_carlo = mc->get<bool>();
        }
    }
    if (const json *fmt_field = find(j, "format")) {
        cfg.format = fmt_field->get<std::string>();
    }
    if (cfg.format != "csv" && cfg.format != "json") {
        throw ConfigError("format must be csv or json");
    }
    if (const json *out = find(j, "output")) {
        if (!out->is_string()) {
            throw ConfigError("output must be a path string");
        }
        cfg.output = out->get<std::string>();
    }
    if (const json *rates = find(j, "rates")) {
        cfg.rates = number_list(*rates, "rates");
    } else if (const json *rate = find(j, "rate")) {
        cfg.rates = number_list(*rate, "rate");
    }

    if (cfg.mode == Mode::kExponent) {
        const json *ex = find(j, "exponent");
        if (ex == nullptr || !ex->is_object() || find(*ex, "a") == nullptr) {
            throw ConfigError("exponent mode needs exponent.a");
        }
        cfg.exponent_a = number_list(ex->at("a"), "exponent.a");
        cfg.grid_step = get_number(*ex, "grid_step", 0.0, "exponent");
        try {
            ProbVector check(cfg.exponent_a);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(fmt::format("exponent.a: {}", e.what()));
        }
        cfg.d = static_cast<int>(cfg.exponent_a.size());
        if (cfg.rates.empty()) {
            throw ConfigError("exponent mode needs rates");
        }
        for (double r : cfg.rates) {
            if (!(r >= 0)) {
                throw ConfigError("rates must be non-negative");
            }
        }
        return cfg;
    }

    const json *source = find(j, "source");
    if (source == nullptr || !source->is_object()) {
        throw ConfigError("source is required");
    }
    try {
        if (find(*source, "preset") != nullptr) {
            cfg.source = preset_source(*source, cfg.d, cfg.dim_b);
        } else {
            cfg.d = get_int(j, "d", 0, "config");
            cfg.dim_b = get_int(*source, "dim_b", 1, "source");
            if (cfg.d < 2 || cfg.dim_b < 1) {
                throw ConfigError("d >= 2 and source.dim_b >= 1 are required");
            }
            cfg.source = explicit_source(*source, cfg.d, cfg.dim_b);
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(fmt::format("source: {}", e.what()));
    }
    if (const json *d = find(j, "d"); d != nullptr && d->get<int>() != cfg.d) {
        throw ConfigError(fmt::format("d = {} does not match the source dimension {}", d->get<int>(), cfg.d));
    }
    if (!is_entangled(cfg.mode) && cfg.dim_b != 1) {
        throw ConfigError(fmt::format("mode {} needs a source with dim_b = 1", to_string(cfg.mode)));
    }

    const json *range = find(j, "n_range");
    if (range == nullptr || !range->is_array() || range->size() != 2 || !(*range)[0].is_number_integer() ||
        !(*range)[1].is_number_integer()) {
        throw ConfigError("n_range must be [lo, hi]");
    }
    cfg.n_lo = (*range)[0].get<int>();
    cfg.n_hi = (*range)[1].get<int>();
    if (cfg.n_lo < 1 || cfg.n_hi < cfg.n_lo) {
        throw ConfigError("n_range needs 1 <= lo <= hi");
    }
    const double ln_d = std::log(static_cast<double>(cfg.d));
    for (double r : cfg.rates) {
        if (!(r >= 0) || ((cfg.mode == Mode::kFixed || cfg.mode == Mode::kEntangledFixed) && r > ln_d + 1e-12)) {
            throw ConfigError(fmt::format("rate {} outside [0, ln d]", r));
        }
    }
    if ((cfg.mode == Mode::kFixed || cfg.mode == Mode::kEntangledFixed) && cfg.rates.empty()) {
        throw ConfigError("fixed modes need rates");
    }

    if (cfg.mode == Mode::kVarlen || cfg.mode == Mode::kEntangledVarlen) {
        if (const json *s = find(j, "schedule")) {
            cfg.schedule = s->get<bool>();
        }
        if (const json *def = find(j, "definitional")) {
            cfg.definitional = def->get<bool>();
        }
        const json *deltas = find(j, "deltas");
        if (deltas == nullptr) {
            deltas = find(j, "delta");
        }
        if (!cfg.schedule || deltas != nullptr) {
            if (deltas == nullptr) {
                throw ConfigError("varlen modes need delta(s) or schedule: true");
            }
            std::vector<double> ds = number_list(*deltas, "deltas");
            std::vector<std::optional<double>> dps{std::nullopt};
            const json *dp = find(j, "delta_primes");
            if (dp == nullptr) {
                dp = find(j, "delta_prime");
            }
            if (dp != nullptr) {
                dps.clear();
                for (double x : number_list(*dp, "delta_primes")) {
                    dps.emplace_back(x);
                }
            }
            for (double dv : ds) {
                if (!(dv > 0)) {
                    throw ConfigError("deltas must be positive");
                }
                for (const auto &dpv : dps) {
                    cfg.deltas.push_back({dv, dpv});
                }
            }
        }
    }
    if (cfg.mode == Mode::kNaive) {
        if (const json *def = find(j, "definitional")) {
            cfg.definitional = def->get<bool>();
        }
        const json *grid = find(j, "naive_grid");
        if (grid == nullptr) {
            throw ConfigError("naive mode needs naive_grid");
        }
        cfg.naive_grid = number_list(*grid, "naive_grid");
        try {
            RateGrid check(cfg.naive_grid, cfg.d);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(fmt::format("naive_grid: {}", e.what()));
        }
    }
    return cfg;
}

ExperimentConfig parse_config(const json &j) {
    try {
        return parse_config_fields(j);
    } catch (const json::exception &e) {
        throw ConfigError(fmt::format("config has a field of the wrong type: {}", e.what()));
    }
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot read config {}", path.string()));
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception &e) {
        throw ConfigError(fmt::format("config {} is not valid JSON: {}", path.string(), e.what()));
    }
    return parse_config(j);
}

}  // namespace qvlc
