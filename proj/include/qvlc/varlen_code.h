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

// Variable-length codes built from entropy-binned Schur-Weyl blocks.
//
// A code measures the POVM {(1/K) P_i^(k)} over outcomes (k, i), k = 1..K,
// i = 1..l, keeps P rho P / Tr(P rho) and embeds it back. For grid k the bin
// P_i^(k) collects the isotypic blocks lambda with
//     alpha_i <= H(lambda / n) < alpha_{i+1},
// the top bin being closed at ln d, so every grid partitions the identity.
// The naive code has K = 1 and a caller-supplied grid. The smeared code uses
// K = floor(n delta) grids alpha_i = k/n + (i - 2) delta, i = 2..l.

#ifndef QVLC_VARLEN_CODE_H_
#define QVLC_VARLEN_CODE_H_

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qvlc/expansion.h"
#include "qvlc/linalg.h"
#include "qvlc/schur_weyl.h"

namespace qvlc {

class RateGrid {
   public:
    RateGrid() = default;
    /// alphas[0] = 0, alphas.back() = ln d, strictly increasing.
    RateGrid(std::vector<double> alphas, int d);

    /// Grid number k of the smeared family. When k/n + (l - 2) delta reaches
    /// ln d the top bin is empty; that single coincidence is allowed.
    static RateGrid shifted(int k, int n, double delta, int l, int d);

    int bins() const { return static_cast<int>(alphas_.size()) - 1; }
    std::span<const double> alphas() const { return alphas_; }
    /// Zero-based bin of an entropy value.
    int bin_of(double entropy) const;

   private:
    std::vector<double> alphas_;
};

struct Outcome {
    int k = 1;  // one-based grid index
    int i = 1;  // one-based bin index
};

class PartitionCode {
   public:
    /// Single grid, K = 1.
    static PartitionCode make_naive(const RateGrid &grid, int n, int d, const ResourceLimits &limits = {});
    /// l = ceil(ln d / delta) + 1, delta recomputed as ln d / (l - 1), K = floor(n delta).
    static PartitionCode make_smeared(int n, int d, double delta, const ResourceLimits &limits = {});

    int n() const { return n_; }
    int d() const { return d_; }
    bool smeared() const { return smeared_; }
    /// The recomputed delta; 0 for naive codes.
    double delta() const { return delta_; }
    int l() const { return l_; }
    int k_max() const { return static_cast<int>(grids_.size()); }
    int outcome_count() const { return k_max() * l_; }
    const std::vector<RateGrid> &grids() const { return grids_; }
    const IsotypicDecomposition &decomposition() const { return *decomp_; }

    /// Flat index (k - 1) * l + (i - 1).
    int flat(Outcome w) const { return (w.k - 1) * l_ + (w.i - 1); }
    Outcome outcome(int flat_index) const { return {flat_index / l_ + 1, flat_index % l_ + 1}; }

    /// Zero-based bin of each decomposition block under grid k.
    const std::vector<int> &bins_of_blocks(int k) const { return bin_of_block_[static_cast<std::size_t>(k - 1)]; }
    int rank(Outcome w) const { return ranks_[static_cast<std::size_t>(flat(w))]; }
    Matrix projector(Outcome w) const;

    /// Per-outcome probabilities (1/K) sum_{lambda in bin} w_lambda from block weights.
    std::vector<double> outcome_weights(std::span<const double> block_weights) const;

    /// max |sum_{k,i} (1/K) P_i^(k) - I|.
    double completeness_error() const;

   private:
    int n_ = 0;
    int d_ = 0;
    bool smeared_ = false;
    double delta_ = 0;
    int l_ = 0;
    std::shared_ptr<const IsotypicDecomposition> decomp_;
    std::vector<RateGrid> grids_;
    std::vector<std::vector<int>> bin_of_block_;
    std::vector<int> ranks_;
};

using NaiveCode = PartitionCode;
using SmearedCode = PartitionCode;

inline PartitionCode make_naive(const RateGrid &grid, int n, int d, const ResourceLimits &limits = {}) {
    return PartitionCode::make_naive(grid, n, d, limits);
}
inline PartitionCode make_smeared(int n, int d, double delta, const ResourceLimits &limits = {}) {
    return PartitionCode::make_smeared(n, d, delta, limits);
}

/// P(k, i) = (1/K) Tr P_i^(k) rhobar^{(x)n}, flat-indexed.
std::vector<double> outcome_distribution(const PartitionCode &code, const DensityMatrix &average);
std::vector<double> outcome_distribution(const PartitionCode &code, const Ensemble &source);

/// 1 - E[sum_w (1/K) (Tr P_w rho)^{3/2}] over the i.i.d. expansion. Only
/// block weights of each product state are needed, so the expansion runs
/// over multisets.
Estimate average_error_exact(const PartitionCode &code, const Ensemble &source, const ExpansionOptions &opts = {});

/// E[sum_w Tr(P_w rho) b^2(rho, P_w rho P_w / Tr(P_w rho))] with the fidelity
/// evaluated numerically.
Estimate average_error_definitional(const PartitionCode &code, const Ensemble &source,
                                    const ExpansionOptions &opts = {});

/// ln(K l) + ln rank(P_w). Throws for zero-rank outcomes.
double coding_length(const PartitionCode &code, Outcome w);

/// Probability that coding_length / n >= rate.
double overflow_probability(const PartitionCode &code, std::span<const double> outcome_probs, double rate);

struct OverflowRow {
    double rate = 0;
    double probability = 0;
    double bound = 0;
    bool ok = false;
};

struct VarlenReport {
    int n = 0;
    int d = 0;
    double delta = 0;
    std::optional<double> delta_prime;
    std::vector<Outcome> outcomes;  // all (k, i) in flat order
    std::vector<double> outcome_probs;
    std::vector<double> coding_lengths;  // NaN for zero-rank outcomes
    std::vector<int> ranks;
    Estimate error_exact;
    std::optional<Estimate> error_definitional;
    std::optional<double> error_bound;
    bool error_ok = true;
    std::vector<OverflowRow> overflow;
};

struct VarlenReportOptions {
    ExpansionOptions expansion;
    bool definitional = true;
    /// Enables the error bound when set and 0 < 2 delta' < delta.
    std::optional<double> delta_prime;
    std::vector<double> rates;
};

/// Smeared codes get both bounds with a = spectrum of the average state;
/// naive codes carry no bounds.
VarlenReport varlen_report(const PartitionCode &code, const Ensemble &source, const VarlenReportOptions &opts);

/// Exact average error of the naive code over n = n_lo..n_hi.
std::vector<double> demolition_probe(const RateGrid &grid, int d, const Ensemble &source, int n_lo, int n_hi,
                                     const ExpansionOptions &opts = {});

struct Schedule {
    double delta = 0;
    double delta_prime = 0;
    /// 0 < 2 delta' < delta.
    bool feasible() const { return delta_prime > 0 && 2 * delta_prime < delta; }
};

/// delta_n = n^{-1/6}, delta'_n = n^{-1/3}.
Schedule schedule(int n);

}  // namespace qvlc

#endif  // QVLC_VARLEN_CODE_H_
