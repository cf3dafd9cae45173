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

#include "qvlc/varlen_code.h"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "qvlc/classical.h"
#include "qvlc/numeric.h"
#include "qvlc/projector_cache.h"

namespace qvlc {

namespace {

constexpr double kGridEps = 1e-12;

std::vector<FactoredState> factor_states(const Ensemble &source, const ToleranceConfig &tol) {
    std::vector<FactoredState> out;
    out.reserve(source.size());
    for (const auto &item : source.items()) {
        out.push_back(FactoredState::from(item.state, tol));
    }
    return out;
}

std::vector<double> probabilities(const Ensemble &source) {
    std::vector<double> out;
    for (const auto &item : source.items()) {
        out.push_back(item.prob);
    }
    return out;
}

void check_source(const PartitionCode &code, const Ensemble &source) {
    if (source.dim() != code.d()) {
        throw std::invalid_argument(
            fmt::format("source has dimension {}, code expects {}", source.dim(), code.d()));
    }
}

}  // namespace

RateGrid::RateGrid(std::vector<double> alphas, int d) : alphas_(std::move(alphas)) {
    if (alphas_.size() < 2) {
        throw std::invalid_argument("rate grid needs at least two points");
    }
    const double ln_d = std::log(static_cast<double>(d));
    if (alphas_.front() != 0.0 || std::abs(alphas_.back() - ln_d) > kGridEps) {
        throw std::invalid_argument(fmt::format("rate grid must run from 0 to ln {} = {}", d, ln_d));
    }
    alphas_.back() = ln_d;
    for (std::size_t i = 1; i < alphas_.size(); i++) {
        if (!(alphas_[i] > alphas_[i - 1])) {
            throw std::invalid_argument("rate grid must be strictly increasing");
        }
    }
}

RateGrid RateGrid::shifted(int k, int n, double delta, int l, int d) {
    const double ln_d = std::log(static_cast<double>(d));
    RateGrid out;
    out.alphas_.push_back(0.0);
    for (int i = 2; i <= l; i++) {
        double a = static_cast<double>(k) / n + (i - 2) * delta;
        if (a > ln_d - kGridEps) {
            if (i != l) {
                throw InvariantError(fmt::format("shifted grid point {} of grid {} reaches ln d", i, k));
            }
            a = ln_d;
        }
        out.alphas_.push_back(a);
    }
    out.alphas_.push_back(ln_d);
    return out;
}

int RateGrid::bin_of(double entropy) const {
    int last = bins() - 1;
    int bin = 0;
    for (int i = 1; i <= last; i++) {
        if (alphas_[static_cast<std::size_t>(i)] <= entropy + kEntropyCompareEps) {
            bin = i;
        }
    }
    return bin;
}

PartitionCode PartitionCode::make_naive(const RateGrid &grid, int n, int d, const ResourceLimits &limits) {
    if (grid.bins() < 1) {
        throw std::invalid_argument("naive code needs a rate grid");
    }
    PartitionCode code;
    code.n_ = n;
    code.d_ = d;
    code.l_ = grid.bins();
    code.decomp_ = isotypic_decomposition(n, d, limits);
    code.grids_.push_back(grid);
    std::vector<int> bins;
    code.ranks_.assign(static_cast<std::size_t>(code.l_), 0);
    for (const IsotypicBlock &block : code.decomp_->blocks) {
        int b = grid.bin_of(block.entropy);
        bins.push_back(b);
        code.ranks_[static_cast<std::size_t>(b)] += block.rank;
    }
    code.bin_of_block_.push_back(std::move(bins));
    return code;
}

PartitionCode PartitionCode::make_smeared(int n, int d, double delta, const ResourceLimits &limits) {
    if (n < 1 || d < 2) {
        throw std::invalid_argument("smeared code needs n >= 1 and d >= 2");
    }
    if (!(delta > 0) || n * delta < 1.0) {
        throw std::invalid_argument(fmt::format("smeared code needs n delta >= 1, got n = {}, delta = {}", n, delta));
    }
    const double ln_d = std::log(static_cast<double>(d));
    int l = static_cast<int>(std::ceil(ln_d / delta - 1e-12)) + 1;
    l = std::max(l, 2);
    double exact_delta = ln_d / (l - 1);
    int k_max = static_cast<int>(gauss_floor(n * exact_delta));
    if (k_max < 1) {
        throw std::invalid_argument(
            fmt::format("floor(n delta) = 0 after recomputing delta = ln {} / {} = {}", d, l - 1, exact_delta));
    }
    PartitionCode code;
    code.n_ = n;
    code.d_ = d;
    code.smeared_ = true;
    code.delta_ = exact_delta;
    code.l_ = l;
    code.decomp_ = isotypic_decomposition(n, d, limits);
    code.ranks_.assign(static_cast<std::size_t>(k_max * l), 0);
    for (int k = 1; k <= k_max; k++) {
        RateGrid grid = RateGrid::shifted(k, n, exact_delta, l, d);
        std::vector<int> bins;
        for (const IsotypicBlock &block : code.decomp_->blocks) {
            int b = grid.bin_of(block.entropy);
            bins.push_back(b);
            code.ranks_[static_cast<std::size_t>((k - 1) * l + b)] += block.rank;
        }
        code.grids_.push_back(std::move(grid));
        code.bin_of_block_.push_back(std::move(bins));
    }
    return code;
}

Matrix PartitionCode::projector(Outcome w) const {
    if (w.k < 1 || w.k > k_max() || w.i < 1 || w.i > l_) {
        throw std::out_of_range(fmt::format("outcome ({}, {}) out of range", w.k, w.i));
    }
    const int dim = decomp_->dim();
    Matrix out = Matrix::Zero(dim, dim);
    const std::vector<int> &bins = bins_of_blocks(w.k);
    for (std::size_t b = 0; b < bins.size(); b++) {
        if (bins[b] == w.i - 1) {
            out += decomp_->blocks[b].projector;
        }
    }
    return out;
}

std::vector<double> PartitionCode::outcome_weights(std::span<const double> block_weights) const {
    if (block_weights.size() != decomp_->blocks.size()) {
        throw std::invalid_argument("block weight count does not match the decomposition");
    }
    std::vector<double> out(static_cast<std::size_t>(outcome_count()), 0.0);
    const double inv_k = 1.0 / k_max();
    for (int k = 1; k <= k_max(); k++) {
        const std::vector<int> &bins = bins_of_blocks(k);
        for (std::size_t b = 0; b < bins.size(); b++) {
            out[static_cast<std::size_t>((k - 1) * l_ + bins[b])] += inv_k * block_weights[b];
        }
    }
    return out;
}

double PartitionCode::completeness_error() const {
    const int dim = decomp_->dim();
    Matrix sum = Matrix::Zero(dim, dim);
    const double inv_k = 1.0 / k_max();
    for (int f = 0; f < outcome_count(); f++) {
        sum += inv_k * projector(outcome(f));
    }
    return (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

std::vector<double> outcome_distribution(const PartitionCode &code, const DensityMatrix &average) {
    if (average.dim() != code.d()) {
        throw std::invalid_argument(
            fmt::format("average state has dimension {}, code expects {}", average.dim(), code.d()));
    }
    ResourceLimits limits;
    limits.max_dimension = static_cast<std::size_t>(code.decomposition().dim());
    DensityMatrix power = tensor_power(average, code.n(), limits);
    return code.outcome_weights(block_weights(code.decomposition(), power.matrix()));
}

std::vector<double> outcome_distribution(const PartitionCode &code, const Ensemble &source) {
    check_source(code, source);
    return outcome_distribution(code, average_state(source));
}

Estimate average_error_exact(const PartitionCode &code, const Ensemble &source, const ExpansionOptions &opts) {
    check_source(code, source);
    std::vector<DensityMatrix> states;
    for (const auto &item : source.items()) {
        states.push_back(item.state);
    }
    const std::vector<double> probs = probabilities(source);
    std::vector<DensityMatrix> seq_states(static_cast<std::size_t>(code.n()));
    Estimate kept = expected_over_source(probs, code.n(), ExpansionKind::kMultisets, opts, [&](std::span<const int> seq) {
        for (std::size_t j = 0; j < seq.size(); j++) {
            seq_states[j] = states[static_cast<std::size_t>(seq[j])];
        }
        DensityMatrix rho = tensor_product(seq_states, opts.limits);
        std::vector<double> t = code.outcome_weights(block_weights(code.decomposition(), rho.matrix()));
        // outcome_weights already carries 1/K; undo it inside the power.
        const double k = code.k_max();
        double acc = 0;
        for (double tw : t) {
            double x = std::clamp(tw * k, 0.0, 1.0);
            acc += x * std::sqrt(x) / k;
        }
        return acc;
    });
    Estimate out = kept;
    out.value = std::clamp(1.0 - kept.value, 0.0, 1.0);
    return out;
}

Estimate average_error_definitional(const PartitionCode &code, const Ensemble &source,
                                    const ExpansionOptions &opts) {
    check_source(code, source);
    std::vector<Matrix> projectors;
    for (int f = 0; f < code.outcome_count(); f++) {
        projectors.push_back(code.projector(code.outcome(f)));
    }
    const std::vector<FactoredState> factors = factor_states(source, opts.tol);
    const std::vector<double> probs = probabilities(source);
    std::vector<FactoredState> seq_factors(static_cast<std::size_t>(code.n()));
    const double inv_k = 1.0 / code.k_max();
    // b^2 is invariant under the permutation unitaries, which commute with
    // every projector, so multisets suffice here as well.
    return expected_over_source(probs, code.n(), ExpansionKind::kMultisets, opts, [&](std::span<const int> seq) {
        for (std::size_t j = 0; j < seq.size(); j++) {
            seq_factors[j] = factors[static_cast<std::size_t>(seq[j])];
        }
        FactoredState rho = FactoredState::product(seq_factors);
        double acc = 0;
        for (const Matrix &p : projectors) {
            // Post-measurement state P rho P / Tr P rho, factored as (P W) / sqrt(Tr P rho).
            FactoredState post{p * rho.w};
            double kept = post.w.squaredNorm();
            if (kept <= 1e-300) {
                continue;
            }
            post.w /= std::sqrt(kept);
            double fid = root_fidelity(rho, post);
            acc += inv_k * kept * (1.0 - fid);
        }
        return acc;
    });
}

double coding_length(const PartitionCode &code, Outcome w) {
    int r = code.rank(w);
    if (r < 1) {
        throw std::invalid_argument(fmt::format("outcome ({}, {}) has rank 0", w.k, w.i));
    }
    return std::log(static_cast<double>(code.outcome_count())) + std::log(static_cast<double>(r));
}

double overflow_probability(const PartitionCode &code, std::span<const double> outcome_probs, double rate) {
    if (static_cast<int>(outcome_probs.size()) != code.outcome_count()) {
        throw std::invalid_argument("outcome probability count does not match the code");
    }
    double acc = 0;
    for (int f = 0; f < code.outcome_count(); f++) {
        Outcome w = code.outcome(f);
        if (code.rank(w) < 1) {
            continue;
        }
        if (coding_length(code, w) / code.n() >= rate - 1e-12) {
            acc += outcome_probs[static_cast<std::size_t>(f)];
        }
    }
    return std::min(acc, 1.0);
}

VarlenReport varlen_report(const PartitionCode &code, const Ensemble &source, const VarlenReportOptions &opts) {
    VarlenReport rep;
    rep.n = code.n();
    rep.d = code.d();
    rep.delta = code.delta();
    rep.delta_prime = opts.delta_prime;
    rep.outcome_probs = outcome_distribution(code, source);
    for (int f = 0; f < code.outcome_count(); f++) {
        Outcome w = code.outcome(f);
        rep.outcomes.push_back(w);
        rep.ranks.push_back(code.rank(w));
        rep.coding_lengths.push_back(code.rank(w) > 0 ? coding_length(code, w)
                                                      : std::numeric_limits<double>::quiet_NaN());
    }
    rep.error_exact = average_error_exact(code, source, opts.expansion);
    if (opts.definitional) {
        rep.error_definitional = average_error_definitional(code, source, opts.expansion);
    }
    ProbVector a(spectrum(average_state(source), opts.expansion.tol));
    if (code.smeared() && opts.delta_prime && *opts.delta_prime > 0 && 2 * *opts.delta_prime < code.delta()) {
        rep.error_bound = varlen_error_bound(code.n(), code.d(), a, code.delta(), *opts.delta_prime);
        rep.error_ok = rep.error_exact.value <= *rep.error_bound + 1e-12 + 4 * rep.error_exact.std_error;
    }
    for (double rate : opts.rates) {
        OverflowRow row;
        row.rate = rate;
        row.probability = overflow_probability(code, rep.outcome_probs, rate);
        if (code.smeared()) {
            row.bound = varlen_overflow_bound(code.n(), code.d(), a, code.delta(), rate);
            row.ok = row.probability <= row.bound + 1e-12;
        } else {
            row.bound = std::numeric_limits<double>::quiet_NaN();
            row.ok = true;
        }
        rep.overflow.push_back(row);
    }
    return rep;
}

std::vector<double> demolition_probe(const RateGrid &grid, int d, const Ensemble &source, int n_lo, int n_hi,
                                     const ExpansionOptions &opts) {
    if (n_lo < 1 || n_hi < n_lo) {
        throw std::invalid_argument("demolition probe needs 1 <= n_lo <= n_hi");
    }
    std::vector<double> out;
    for (int n = n_lo; n <= n_hi; n++) {
        PartitionCode code = PartitionCode::make_naive(grid, n, d, opts.limits);
        out.push_back(average_error_exact(code, source, opts).value);
    }
    return out;
}

Schedule schedule(int n) {
    if (n < 1) {
        throw std::invalid_argument("schedule needs n >= 1");
    }
    return {std::pow(static_cast<double>(n), -1.0 / 6.0), std::pow(static_cast<double>(n), -1.0 / 3.0)};
}

}  // namespace qvlc
