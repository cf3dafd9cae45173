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

#include "qvlc/expansion.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <fmt/format.h>

#include "qvlc/numeric.h"

namespace qvlc {

namespace {

constexpr std::size_t kHuge = std::numeric_limits<std::size_t>::max();

std::size_t saturating_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > kHuge / a) {
        return kHuge;
    }
    return a * b;
}

double log_multinomial(int n, const std::vector<int> &counts) {
    double acc = std::lgamma(n + 1.0);
    for (int c : counts) {
        acc -= std::lgamma(c + 1.0);
    }
    return acc;
}

}  // namespace

std::size_t expansion_size(std::size_t members, int n, ExpansionKind kind) {
    if (kind == ExpansionKind::kSequences) {
        std::size_t total = 1;
        for (int i = 0; i < n; i++) {
            total = saturating_mul(total, members);
        }
        return total;
    }
    // C(n + m - 1, m - 1)
    double log_count = std::lgamma(n + members + 0.0) - std::lgamma(n + 1.0) - std::lgamma(members + 0.0);
    if (log_count > 60) {
        return kHuge;
    }
    return static_cast<std::size_t>(std::llround(std::exp(log_count)));
}

Estimate expected_over_source(std::span<const double> probs, int n, ExpansionKind kind,
                              const ExpansionOptions &opts,
                              const std::function<double(std::span<const int>)> &per_term) {
    const std::size_t m = probs.size();
    if (m == 0 || n < 1) {
        throw std::invalid_argument("expansion needs a non-empty source and n >= 1");
    }
    const std::size_t size = expansion_size(m, n, kind);
    std::vector<int> seq(static_cast<std::size_t>(n), 0);

    if (size <= opts.max_terms) {
        Estimate out;
        out.terms = size;
        double acc = 0;
        if (kind == ExpansionKind::kSequences) {
            while (true) {
                double w = 1;
                for (int idx : seq) {
                    w *= probs[static_cast<std::size_t>(idx)];
                }
                if (w > 0) {
                    acc += w * per_term(seq);
                }
                int pos = n - 1;
                while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == static_cast<int>(m) - 1) {
                    seq[static_cast<std::size_t>(pos)] = 0;
                    pos--;
                }
                if (pos < 0) {
                    break;
                }
                seq[static_cast<std::size_t>(pos)]++;
            }
        } else {
            // Non-decreasing index sequences enumerate the multisets.
            std::vector<int> counts(m, 0);
            auto recurse = [&](auto &&self, int pos, int min_index) -> void {
                if (pos == n) {
                    double log_w = log_multinomial(n, counts);
                    for (std::size_t i = 0; i < m; i++) {
                        if (counts[i] > 0) {
                            if (probs[i] <= 0) {
                                return;
                            }
                            log_w += counts[i] * std::log(probs[i]);
                        }
                    }
                    acc += std::exp(log_w) * per_term(seq);
                    return;
                }
                for (int i = min_index; i < static_cast<int>(m); i++) {
                    seq[static_cast<std::size_t>(pos)] = i;
                    counts[static_cast<std::size_t>(i)]++;
                    self(self, pos + 1, i);
                    counts[static_cast<std::size_t>(i)]--;
                }
            };
            recurse(recurse, 0, 0);
        }
        out.value = acc;
        return out;
    }
    if (!opts.monte_carlo) {
        throw ResourceError(fmt::format("exact expansion needs {} terms, cap is {} and sampling is disabled",
                                        size == kHuge ? std::string("too many") : std::to_string(size),
                                        opts.max_terms));
    }
    if (opts.mc_samples < 2) {
        throw std::invalid_argument("Monte Carlo needs at least 2 samples");
    }
    std::vector<double> cdf(m);
    double run = 0;
    for (std::size_t i = 0; i < m; i++) {
        run += probs[i];
        cdf[i] = run;
    }
    double sum = 0;
    double sum_sq = 0;
    for (std::size_t s = 0; s < opts.mc_samples; s++) {
        std::mt19937_64 rng(splitmix64(opts.seed + s));
        for (int j = 0; j < n; j++) {
            double u = std::generate_canonical<double, 64>(rng) * run;
            std::size_t idx = 0;
            while (idx + 1 < m && (u >= cdf[idx] || probs[idx] <= 0)) {
                idx++;
            }
            seq[static_cast<std::size_t>(j)] = static_cast<int>(idx);
        }
        double v = per_term(seq);
        sum += v;
        sum_sq += v * v;
    }
    const double count = static_cast<double>(opts.mc_samples);
    Estimate out;
    out.exact = false;
    out.terms = opts.mc_samples;
    out.value = sum / count;
    double var = std::max(0.0, (sum_sq - count * out.value * out.value) / (count - 1));
    out.std_error = std::sqrt(var / count);
    return out;
}

}  // namespace qvlc
