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

// Schur-Weyl decomposition of (C^d)^{(x)n}: one orthogonal projector per Young
// diagram with at most d rows, obtained from the S_n group algebra as
//
//   Pi_lambda = dim(lambda)/n! * sum_{pi in S_n} chi_lambda(pi) U(pi).
//
// The rate projector keeps the blocks whose normalized diagram has entropy
// at most R.

#ifndef QVLC_SCHUR_WEYL_H_
#define QVLC_SCHUR_WEYL_H_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qvlc/linalg.h"

namespace qvlc {

/// Non-increasing positive rows.
struct YoungDiagram {
    std::vector<int> rows;

    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<int> r);

    int size() const;
    int length() const { return static_cast<int>(rows.size()); }
    std::string to_string() const;

    auto operator<=>(const YoungDiagram &) const = default;
};

/// Partitions of n into at most max_rows parts, lexicographically decreasing.
std::vector<YoungDiagram> partitions(int n, int max_rows);

std::int64_t factorial(int n);
std::int64_t hook_length_dimension(const YoungDiagram &lambda);
/// Dimension of the U(d) irrep with highest weight lambda (0 if more than d rows).
std::int64_t weyl_dimension(const YoungDiagram &lambda, int d);

/// Cycle lengths of a permutation given as images (perm[j] = pi(j)), sorted descending.
std::vector<int> cycle_type(std::span<const int> perm);
std::int64_t class_size(const YoungDiagram &cycle_type);

/// Irreducible character chi_lambda on the class with the given cycle type
/// (Murnaghan-Nakayama rule on beta-sets).
std::int64_t sn_character(const YoungDiagram &lambda, const YoungDiagram &cycle_type);

/// U(pi)|x_1 ... x_n> = |y> with y_{pi(j)} = x_j: factor j moves to slot pi(j).
Matrix permutation_operator(std::span<const int> perm, int d, const ResourceLimits &limits = {});

/// Basis-index image of every basis vector under U(pi).
std::vector<int> permute_basis(std::span<const int> perm, int d);

/// Rejects diagrams with more than d rows.
Matrix isotypic_projector(const YoungDiagram &lambda, int d, const ResourceLimits &limits = {});

/// Shannon entropy of lambda / n.
double diagram_entropy(const YoungDiagram &lambda);

struct IsotypicBlock {
    YoungDiagram lambda;
    Matrix projector;
    int rank = 0;
    double entropy = 0;
};

struct IsotypicDecomposition {
    int n = 0;
    int d = 0;
    std::vector<IsotypicBlock> blocks;  // partitions() order

    /// Builds every block in one pass over S_n.
    static IsotypicDecomposition build(int n, int d, const ResourceLimits &limits = {});

    int dim() const;
};

struct RateProjector {
    double rate = 0;
    int n = 0;
    int d = 0;
    Matrix projector;
    int rank = 0;
    std::vector<YoungDiagram> selected;
};

/// P_{R,n} = sum of Pi_lambda over H(lambda/n) <= R. Requires 0 <= R <= ln d.
RateProjector rate_projector(double rate, const IsotypicDecomposition &decomp);
/// Same, using the process-wide decomposition cache.
RateProjector rate_projector(double rate, int n, int d, const ResourceLimits &limits = {});

/// Tr(Pi_lambda X) for every block, in block order.
std::vector<double> block_weights(const IsotypicDecomposition &decomp, const Matrix &x);

}  // namespace qvlc

#endif  // QVLC_SCHUR_WEYL_H_
