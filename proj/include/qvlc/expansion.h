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

#ifndef QVLC_EXPANSION_H_
#define QVLC_EXPANSION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "qvlc/linalg.h"

namespace qvlc {

struct ExpansionOptions {
    /// Largest number of exact terms before falling back to sampling.
    std::size_t max_terms = 4096;
    bool monte_carlo = true;
    std::size_t mc_samples = 10000;
    std::uint64_t seed = 0;
    ResourceLimits limits;
    ToleranceConfig tol;
};

struct Estimate {
    double value = 0;
    double std_error = 0;  // 0 for exact expansions
    bool exact = true;
    std::size_t terms = 0;
};

enum class ExpansionKind {
    /// All |source|^n ordered sequences.
    kSequences,
    /// Multisets weighted by multinomial coefficients; valid when the per-term
    /// quantity is invariant under permuting tensor factors.
    kMultisets,
};

/// Number of terms an exact expansion would visit.
std::size_t expansion_size(std::size_t members, int n, ExpansionKind kind);

/// E_{p^n}[per_term(sequence)] over i.i.d. index sequences of length n.
/// Exact when the term count fits in max_terms; otherwise Monte Carlo with
/// sample s drawn from a generator seeded by splitmix64(seed + s), so the
/// result is independent of evaluation order. Throws ResourceError when
/// the cap is exceeded and sampling is disabled.
Estimate expected_over_source(std::span<const double> probs, int n, ExpansionKind kind,
                              const ExpansionOptions &opts,
                              const std::function<double(std::span<const int>)> &per_term);

}  // namespace qvlc

#endif  // QVLC_EXPANSION_H_
