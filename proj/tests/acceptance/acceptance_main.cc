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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any selected criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qvlc/classical.h"
#include "qvlc/entangled.h"
#include "qvlc/fixed_code.h"
#include "qvlc/harness.h"
#include "qvlc/projector_cache.h"
#include "qvlc/schur_weyl.h"
#include "qvlc/varlen_code.h"

using namespace qvlc;
using json = nlohmann::json;

namespace {

struct Result {
    bool pass = true;
    std::string detail;
};

const std::vector<std::pair<int, int>> kSchurWeylGrid = {{2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2},
                                                         {8, 2}, {2, 3}, {3, 3}, {4, 3}, {5, 3}};

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

std::vector<double> random_simplex(int d, std::mt19937_64 &rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(static_cast<std::size_t>(d));
    double s = 0;
    for (double &x : p) {
        x = e(rng);
        s += x;
    }
    for (double &x : p) {
        x /= s;
    }
    return p;
}

Ensemble random_ensemble(int d, bool pure, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> members(2, 3);
    int m = members(rng);
    std::vector<double> probs = random_simplex(m, rng);
    std::vector<EnsembleItem> items;
    for (int i = 0; i < m; i++) {
        items.push_back({probs[static_cast<std::size_t>(i)], random_density(d, pure ? 1 : 2, rng)});
    }
    return Ensemble(std::move(items));
}

/// Tr P rho^{(x)n} for diagonal rho via the diagonal of P.
double diagonal_trace(const Matrix &p, const std::vector<double> &a, int n) {
    const int d = static_cast<int>(a.size());
    double acc = 0;
    for (Eigen::Index x = 0; x < p.rows(); x++) {
        double w = 1;
        Eigen::Index rest = x;
        for (int j = 0; j < n; j++) {
            w *= a[static_cast<std::size_t>(rest % d)];
            rest /= d;
        }
        acc += p(x, x).real() * w;
    }
    return acc;
}

double qubit_entropy(double q) { return -q * std::log(q) - (1 - q) * std::log(1 - q); }

/// Each later value <= earlier value + slack.
bool decays(const std::vector<double> &s, double slack) {
    for (std::size_t i = 0; i < s.size(); i++) {
        for (std::size_t j = i + 1; j < s.size(); j++) {
            if (s[j] > s[i] + slack) {
                return false;
            }
        }
    }
    return true;
}

bool strictly_decreasing(const std::vector<double> &s) {
    for (std::size_t i = 1; i < s.size(); i++) {
        if (!(s[i] < s[i - 1])) {
            return false;
        }
    }
    return true;
}

std::string series(const std::vector<double> &s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); i++) {
        out += fmt::format("{}{:.4g}", i ? " " : "", s[i]);
    }
    return out + "]";
}

Result criterion_schur_weyl() {
    Result r;
    std::mt19937_64 rng(101);
    double worst = 0;
    int rank_failures = 0;
    for (auto [n, d] : kSchurWeylGrid) {
        IsotypicDecomposition dec = IsotypicDecomposition::build(n, d);
        const int dim = dec.dim();
        Matrix sum = Matrix::Zero(dim, dim);
        std::int64_t ranks = 0;
        for (std::size_t a = 0; a < dec.blocks.size(); a++) {
            const Matrix &pa = dec.blocks[a].projector;
            sum += pa;
            ranks += dec.blocks[a].rank;
            worst = std::max(worst, max_abs(pa * pa - pa));
            for (std::size_t b = a + 1; b < dec.blocks.size(); b++) {
                worst = std::max(worst, max_abs(pa * dec.blocks[b].projector));
            }
        }
        worst = std::max(worst, max_abs(sum - Matrix::Identity(dim, dim)));
        std::int64_t expected = 1;
        for (int j = 0; j < n; j++) {
            expected *= d;
        }
        if (ranks != expected) {
            rank_failures++;
        }
        for (int t = 0; t < 20; t++) {
            Matrix u1 = random_unitary(d, rng);
            Matrix u = u1;
            for (int j = 1; j < n; j++) {
                u = kron(u, u1);
            }
            for (const auto &block : dec.blocks) {
                worst = std::max(worst, max_abs(u * block.projector - block.projector * u));
            }
        }
    }
    r.pass = worst <= 1e-9 && rank_failures == 0;
    r.detail = fmt::format("{} (n, d) pairs, worst residual {:.3g}, rank-sum failures {}", kSchurWeylGrid.size(),
                           worst, rank_failures);
    return r;
}

Result criterion_rank_bound() {
    Result r;
    int checked = 0;
    int violations = 0;
    double tightest = 0;
    for (auto [n, d] : kSchurWeylGrid) {
        auto dec = isotypic_decomposition(n, d);
        const double ln_d = std::log(d);
        for (int k = 0; k < 10; k++) {
            double rate = ln_d * k / 9.0;
            RateProjector p = rate_projector(rate, *dec);
            double bound = rank_bound(n, d, rate);
            checked++;
            if (!(p.rank < bound)) {
                violations++;
            }
            tightest = std::max(tightest, p.rank / bound);
        }
    }
    r.pass = violations == 0;
    r.detail = fmt::format("{} cells, {} violations, largest rank/bound {:.3g}", checked, violations, tightest);
    return r;
}

Result criterion_trace_bound() {
    Result r;
    std::mt19937_64 rng(202);
    int checked = 0;
    int violations = 0;
    int series_total = 0;
    int series_bad = 0;
    std::string example;
    for (int d : {2, 3}) {
        std::vector<std::vector<double>> sources;
        for (int s = 0; s < 20; s++) {
            sources.push_back(random_simplex(d, rng));
        }
        int n_hi = d == 2 ? 8 : 5;
        // deficiency[source][rate][n]
        std::vector<std::vector<std::vector<double>>> deficiency(
            sources.size(), std::vector<std::vector<double>>(5));
        for (int n = 2; n <= n_hi; n++) {
            auto dec = isotypic_decomposition(n, d);
            for (std::size_t s = 0; s < sources.size(); s++) {
                ProbVector a(sources[s]);
                double h = shannon_entropy(a);
                for (int k = 1; k <= 5; k++) {
                    double rate = h + (std::log(d) - h) * k / 6.0;
                    RateProjector p = rate_projector(rate, *dec);
                    double def = 1.0 - diagonal_trace(p.projector, sources[s], n);
                    checked++;
                    if (!(def <= trace_bound(n, d, a, rate))) {
                        violations++;
                    }
                    deficiency[s][static_cast<std::size_t>(k - 1)].push_back(def);
                }
            }
        }
        for (std::size_t s = 0; s < sources.size(); s++) {
            for (const auto &ser : deficiency[s]) {
                series_total++;
                int increases = 0;
                int non_strict = 0;
                for (std::size_t i = 1; i < ser.size(); i++) {
                    if (ser[i] > ser[i - 1] + 1e-12) {
                        increases++;
                    }
                    if (!(ser[i] < ser[i - 1] - 1e-12)) {
                        non_strict++;
                    }
                }
                if (increases > 0 || non_strict > 1) {
                    series_bad++;
                    if (example.empty()) {
                        example = fmt::format(" e.g. d={} {}", d, series(ser));
                    }
                }
            }
        }
    }
    r.pass = violations == 0 && series_bad == 0;
    r.detail = fmt::format("{} cells, {} bound violations; {} of {} deficiency series not monotone{}", checked,
                           violations, series_bad, series_total, example);
    return r;
}

Result criterion_fixed_chain() {
    Result r;
    std::mt19937_64 rng(303);
    int checked = 0;
    int violations = 0;
    int not_decreasing = 0;
    std::string example;
    for (int e_idx = 0; e_idx < 20; e_idx++) {
        Ensemble e = random_ensemble(2, e_idx % 2 == 0, rng);
        double h = von_neumann_entropy(average_state(e));
        double rate = h + 0.5 * (std::log(2.0) - h);
        std::vector<double> eps;
        for (int n = 2; n <= 6; n++) {
            ErrorChain c = error_bound_chain(FixedLengthCode::make(rate, n, 2), e);
            checked++;
            if (!c.ordered) {
                violations++;
            }
            eps.push_back(c.exact.value);
        }
        if (!strictly_decreasing(eps)) {
            not_decreasing++;
            if (example.empty()) {
                example = fmt::format(" e.g. {} H={:.3f} R={:.3f}", series(eps), h, rate);
            }
        }
    }
    r.pass = violations == 0 && not_decreasing == 0;
    r.detail = fmt::format("{} cells, {} chain violations; {} of 20 error series not decreasing{}", checked,
                           violations, not_decreasing, example);
    return r;
}

Result criterion_varlen_exactness() {
    Result r;
    std::mt19937_64 rng(404);
    double worst_gap = 0;
    double worst_complete = 0;
    int cells = 0;
    for (int e_idx = 0; e_idx < 20; e_idx++) {
        Ensemble e = random_ensemble(2, e_idx % 2 == 0, rng);
        for (int n = 2; n <= 6; n++) {
            for (double delta : {0.7, 0.4}) {
                if (n * std::log(2.0) / std::ceil(std::log(2.0) / delta - 1e-12) < 1.0) {
                    continue;
                }
                PartitionCode code = make_smeared(n, 2, delta);
                worst_complete = std::max(worst_complete, code.completeness_error());
                double exact = average_error_exact(code, e).value;
                double def = average_error_definitional(code, e).value;
                worst_gap = std::max(worst_gap, std::abs(exact - def));
                cells++;
            }
        }
    }
    r.pass = worst_gap <= 1e-8 && worst_complete <= 1e-10;
    r.detail = fmt::format("{} cells, worst |closed form - definitional| {:.3g}, worst completeness {:.3g}", cells,
                           worst_gap, worst_complete);
    return r;
}

Result criterion_varlen_bounds() {
    Result r;
    std::mt19937_64 rng(505);
    int cells = 0;
    int violations = 0;
    int monotone_failures = 0;
    std::vector<Ensemble> sources;
    for (int s = 0; s < 3; s++) {
        sources.push_back(random_ensemble(2, s % 2 == 0, rng));
    }
    const std::vector<double> rates{0.1, 0.25, 0.4, 0.55, 0.7};
    for (const Ensemble &e : sources) {
        for (int n = 2; n <= 8; n++) {
            for (double delta : {0.4, 0.5, 0.7, 0.9}) {
                std::optional<PartitionCode> made;
                try {
                    made = make_smeared(n, 2, delta);
                } catch (const std::invalid_argument &) {
                    continue;  // n delta < 1
                }
                const PartitionCode &code = *made;
                for (double dp : {0.05, 0.1, 0.15}) {
                    if (!(2 * dp < code.delta())) {
                        continue;
                    }
                    VarlenReportOptions opts;
                    opts.definitional = false;
                    opts.delta_prime = dp;
                    opts.rates = rates;
                    VarlenReport rep = varlen_report(code, e, opts);
                    for (const OverflowRow &row : rep.overflow) {
                        cells++;
                        if (!rep.error_ok || !rep.error_bound.has_value() || !row.ok) {
                            violations++;
                        }
                    }
                    for (std::size_t i = 1; i < rep.overflow.size(); i++) {
                        if (rep.overflow[i].probability > rep.overflow[i - 1].probability + 1e-15) {
                            monotone_failures++;
                        }
                    }
                }
            }
        }
    }
    r.pass = cells >= 100 && violations == 0 && monotone_failures == 0;
    r.detail = fmt::format("{} feasible cells, {} violations, {} overflow monotonicity failures", cells, violations,
                           monotone_failures);
    return r;
}

Result criterion_exponent() {
    Result r;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0;
    for (int t = 0; t < 50; t++) {
        int d = 2 + t % 2;
        ProbVector a(random_simplex(d, rng));
        double h = shannon_entropy(a);
        double rate = h + u(rng) * (std::log(d) - h);
        double fast = overflow_exponent_fast(a, rate).value;
        double grid = overflow_exponent_grid(a, rate).value;
        worst = std::max(worst, std::abs(fast - grid));
    }
    double c = constant_c(ProbVector{0.5, 0.5}).value;
    double c_err = std::abs(c - 1.0 / std::numbers::ln2);
    int nonzero = 0;
    for (int t = 0; t < 20; t++) {
        ProbVector a(random_simplex(2 + t % 3, rng));
        double h = shannon_entropy(a);
        for (double rate : {0.0, 0.5 * h, h}) {
            if (overflow_exponent(a, rate).value != 0.0) {
                nonzero++;
            }
        }
    }
    r.pass = worst <= 1e-4 && c_err <= 1e-6 && nonzero == 0;
    r.detail = fmt::format("worst |fast - grid| {:.3g} over 50 cases, |C - 1/ln 2| {:.3g}, nonzero at R <= H: {}",
                           worst, c_err, nonzero);
    return r;
}

Result criterion_demolition() {
    Result r;
    // Boundary source: H(diag(1 - q, q)) = 0.5 exactly, on the grid point 0.5.
    double lo = 1e-6, hi = 0.5;
    for (int it = 0; it < 200; it++) {
        double mid = 0.5 * (lo + hi);
        (qubit_entropy(mid) < 0.5 ? lo : hi) = mid;
    }
    double q = 0.5 * (lo + hi);
    std::vector<double> diag_b{1 - q, q};
    Ensemble boundary({{1.0, DensityMatrix::diagonal(diag_b)}});
    std::vector<double> b = demolition_probe(RateGrid({0.0, 0.5, std::log(2.0)}, 2), 2, boundary, 2, 8);
    std::vector<double> diag_i{0.99, 0.01};
    Ensemble interior({{1.0, DensityMatrix::diagonal(diag_i)}});
    std::vector<double> i = demolition_probe(RateGrid({0.0, 0.65, std::log(2.0)}, 2), 2, interior, 2, 8);
    std::vector<double> s;
    for (int n = 2; n <= 8; n++) {
        Schedule sch = schedule(n);
        s.push_back(average_error_exact(make_smeared(n, 2, sch.delta), boundary).value);
    }
    bool boundary_non_decaying = !decays(b, 1e-3) && b.back() >= 0.5 * b.front();
    bool interior_decays = decays(i, 1e-3);
    bool smeared_decays = decays(s, 1e-3);
    r.pass = boundary_non_decaying && interior_decays && smeared_decays;
    r.detail = fmt::format("boundary naive {} {}, interior naive {} {}, smeared {} {}", series(b),
                           boundary_non_decaying ? "non-decaying" : "DECAYS", series(i),
                           interior_decays ? "decays" : "NOT DECAYING", series(s),
                           smeared_decays ? "decays" : "NOT DECAYING");
    return r;
}

Result criterion_entangled() {
    Result r;
    std::mt19937_64 rng(707);
    double worst_identity = 0;
    for (int t = 0; t < 20; t++) {
        BipartiteState phi = BipartiteState::pure(2, 2, random_pure_vector(4, rng));
        int n = 2 + t % 3;
        double rate = 0.1 + 0.5 * (t % 4) / 3.0;
        TraceIdentity ti = reduced_trace_identity_check(rate_projector(rate, n, 2), phi, n);
        worst_identity = std::max(worst_identity, std::abs(ti.lhs - ti.rhs));
    }
    double worst_reduction = 0;
    for (int t = 0; t < 5; t++) {
        Ensemble plain = random_ensemble(2, t % 2 == 0, rng);
        std::vector<BipartiteItem> items;
        for (const auto &item : plain.items()) {
            items.push_back({item.prob, BipartiteState(2, 1, item.state)});
        }
        BipartiteEnsemble e(items);
        for (int n = 2; n <= 4; n++) {
            FixedLengthCode fc = FixedLengthCode::make(0.45, n, 2);
            worst_reduction =
                std::max(worst_reduction, std::abs(local_fixed_error(fc, e).value - average_error(fc, plain).value));
            PartitionCode vc = make_smeared(n, 2, 0.7);
            VarlenReportOptions opts;
            opts.definitional = false;
            worst_reduction = std::max(worst_reduction, std::abs(local_varlen_report(vc, e, opts).error_exact.value -
                                                                 varlen_report(vc, plain, opts).error_exact.value));
        }
    }
    int chain_cells = 0;
    int chain_violations = 0;
    for (int t = 0; t < 20; t++) {
        std::vector<BipartiteItem> items;
        std::vector<double> probs = random_simplex(2, rng);
        for (double p : probs) {
            DensityMatrix s = t % 2 == 0 ? DensityMatrix::pure(random_pure_vector(4, rng)) : random_density(4, 2, rng);
            items.push_back({p, BipartiteState(2, 2, s)});
        }
        BipartiteEnsemble e(items);
        for (int n = 2; n <= 4; n++) {
            double rate = 0.2 + 0.4 * (t % 3) / 2.0;
            ErrorChain c = local_fixed_error_chain(FixedLengthCode::make(rate, n, 2), e);
            chain_cells++;
            if (!c.ordered) {
                chain_violations++;
            }
        }
    }
    Vector psi = Vector::Zero(4);
    psi(0) = std::sqrt(0.95);
    psi(3) = std::sqrt(0.05);
    BipartiteEnsemble schmidt({{1.0, BipartiteState::pure(2, 2, psi)}});
    std::vector<double> eps;
    for (int n = 2; n <= 6; n++) {
        eps.push_back(local_fixed_error(FixedLengthCode::make(0.4, n, 2), schmidt).value);
    }
    bool decreasing = strictly_decreasing(eps);
    r.pass = worst_identity <= 1e-10 && worst_reduction <= 1e-12 && chain_violations == 0 && decreasing;
    r.detail = fmt::format(
        "identity residual {:.3g}, dim_b = 1 residual {:.3g}, {} chain violations in {} cells, "
        "Schmidt series {} {}",
        worst_identity, worst_reduction, chain_violations, chain_cells, series(eps),
        decreasing ? "decreasing" : "NOT DECREASING");
    return r;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Result criterion_determinism() {
    Result r;
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "qvlc_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<json> configs{
        json{{"mode", "fixed"},
             {"source", {{"preset", "pure-qubit-pair"}, {"theta", 0.6}}},
             {"n_range", {2, 6}},
             {"rates", {0.3, 0.5}},
             {"seed", 5},
             {"caps", {{"max_terms", 16}, {"mc_samples", 500}}}},
        json{{"mode", "varlen"},
             {"source", {{"preset", "pure-qubit-pair"}, {"theta", 0.9}, {"p", 0.3}}},
             {"n_range", {2, 6}},
             {"deltas", {0.5, 0.7}},
             {"delta_primes", {0.1}},
             {"rates", {0.3, 0.6}},
             {"seed", 9}},
        json{{"mode", "entangled-fixed"},
             {"source", {{"preset", "schmidt"}, {"q", 0.9}}},
             {"n_range", {2, 4}},
             {"rates", {0.3, 0.5}},
             {"seed", 13}},
    };
    int mismatches = 0;
    int runs = 0;
    for (std::size_t c = 0; c < configs.size(); c++) {
        std::filesystem::path cfg = dir / fmt::format("det{}.json", c);
        std::ofstream(cfg) << configs[c].dump(2);
        std::string reference;
        for (int jobs : {1, 4, 8}) {
            std::filesystem::path out = dir / fmt::format("det{}_{}.csv", c, jobs);
            std::filesystem::remove(out);
            std::string cmd = fmt::format("{} sweep --config {} --out {} --jobs {} > /dev/null 2>&1", QVLC_CLI_PATH,
                                          cfg.string(), out.string(), jobs);
            int status = std::system(cmd.c_str());
            int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            std::string bytes = slurp(out);
            runs++;
            if ((code != kExitOk && code != kExitBoundViolation) || bytes.empty()) {
                mismatches++;
                continue;
            }
            if (jobs == 1) {
                reference = bytes;
            } else if (bytes != reference) {
                mismatches++;
            }
        }
    }
    r.pass = mismatches == 0;
    r.detail = fmt::format("{} CLI runs over {} configs and 1/4/8 workers, {} mismatches", runs, configs.size(),
                           mismatches);
    return r;
}

struct Criterion {
    const char *name;
    std::function<Result()> run;
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qvlc acceptance suite"};
    std::vector<int> selected;
    app.add_option("--criterion", selected, "Run only these criteria (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {"schur-weyl projectors", criterion_schur_weyl},
        {"rank bound", criterion_rank_bound},
        {"trace bound", criterion_trace_bound},
        {"fixed-length error chain", criterion_fixed_chain},
        {"variable-length exactness", criterion_varlen_exactness},
        {"variable-length bounds", criterion_varlen_bounds},
        {"exponent optimizer", criterion_exponent},
        {"demolition contrast", criterion_demolition},
        {"entangled mode", criterion_entangled},
        {"harness determinism", criterion_determinism},
    };
    if (selected.empty()) {
        for (int i = 1; i <= static_cast<int>(all.size()); i++) {
            selected.push_back(i);
        }
    }
    bool ok = true;
    for (int idx : selected) {
        const Criterion &c = all[static_cast<std::size_t>(idx - 1)];
        auto start = std::chrono::steady_clock::now();
        Result res;
        try {
            res = c.run();
        } catch (const std::exception &e) {
            res.pass = false;
            res.detail = fmt::format("threw: {}", e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fmt::print("criterion {:>2} {:<26} {} ({:.1f} s): {}\n", idx, c.name, res.pass ? "PASS" : "FAIL", secs,
                   res.detail);
        std::fflush(stdout);
        ok = ok && res.pass;
    }
    return ok ? 0 : 1;
}
