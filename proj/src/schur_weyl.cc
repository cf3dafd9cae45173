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

#include "qvlc/schur_weyl.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "qvlc/classical.h"
#include "qvlc/numeric.h"
#include "qvlc/projector_cache.h"

namespace qvlc {

YoungDiagram::YoungDiagram(std::vector<int> r) : rows(std::move(r)) {
    for (std::size_t i = 0; i < rows.size(); i++) {
        if (rows[i] <= 0 || (i > 0 && rows[i] > rows[i - 1])) {
            throw std::invalid_argument(fmt::format("not a Young diagram: ({})", fmt::join(rows, ",")));
        }
    }
}

int YoungDiagram::size() const { return std::accumulate(rows.begin(), rows.end(), 0); }

std::string YoungDiagram::to_string() const { return fmt::format("({})", fmt::join(rows, ",")); }

std::vector<YoungDiagram> partitions(int n, int max_rows) {
    if (n < 1 || max_rows < 1) {
        throw std::invalid_argument("partitions need n >= 1 and at least one row");
    }
    std::vector<YoungDiagram> out;
    std::vector<int> current;
    auto recurse = [&](auto &&self, int remaining, int cap) -> void {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        if (static_cast<int>(current.size()) == max_rows) {
            return;
        }
        for (int part = std::min(remaining, cap); part >= 1; part--) {
            current.push_back(part);
            self(self, remaining - part, part);
            current.pop_back();
        }
    };
    recurse(recurse, n, n);
    return out;
}

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; i++) {
        f *= i;
    }
    return f;
}

std::int64_t hook_length_dimension(const YoungDiagram &lambda) {
    if (lambda.rows.empty()) {
        return 1;
    }
    std::int64_t hooks = 1;
    for (int i = 0; i < lambda.length(); i++) {
        for (int j = 0; j < lambda.rows[static_cast<std::size_t>(i)]; j++) {
            int arm = lambda.rows[static_cast<std::size_t>(i)] - j - 1;
            int leg = 0;
            for (int k = i + 1; k < lambda.length() && lambda.rows[static_cast<std::size_t>(k)] > j; k++) {
                leg++;
            }
            hooks *= arm + leg + 1;
        }
    }
    return factorial(lambda.size()) / hooks;
}

std::int64_t weyl_dimension(const YoungDiagram &lambda, int d) {
    if (lambda.length() > d) {
        return 0;
    }
    std::vector<int> l(static_cast<std::size_t>(d), 0);
    std::copy(lambda.rows.begin(), lambda.rows.end(), l.begin());
    double dim = 1;
    for (int i = 0; i < d; i++) {
        for (int j = i + 1; j < d; j++) {
            dim *= static_cast<double>(l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)] + j - i) /
                   (j - i);
        }
    }
    return std::llround(dim);
}

std::vector<int> cycle_type(std::span<const int> perm) {
    std::vector<bool> seen(perm.size(), false);
    std::vector<int> lengths;
    for (std::size_t start = 0; start < perm.size(); start++) {
        if (seen[start]) {
            continue;
        }
        int len = 0;
        for (std::size_t j = start; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = true;
            len++;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    return lengths;
}

std::int64_t class_size(const YoungDiagram &type) {
    std::map<int, int> mult;
    for (int r : type.rows) {
        mult[r]++;
    }
    std::int64_t denom = 1;
    for (auto [len, m] : mult) {
        for (int i = 0; i < m; i++) {
            denom *= len;
        }
        denom *= factorial(m);
    }
    return factorial(type.size()) / denom;
}

namespace {

// Beads at beta_i = lambda_i + (L - i), i = 1..L. Removing an r-rim hook moves a
// bead from b to b - r (target unoccupied); the sign is (-1)^(beads jumped).
std::int64_t mn_recurse(std::set<int> &beads, const std::vector<int> &parts, std::size_t k) {
    if (k == parts.size()) {
        return 1;
    }
    const int r = parts[k];
    std::int64_t total = 0;
    std::vector<int> snapshot(beads.begin(), beads.end());
    for (int b : snapshot) {
        int target = b - r;
        if (target < 0 || beads.count(target)) {
            continue;
        }
        int jumped = 0;
        for (int other : snapshot) {
            if (other > target && other < b) {
                jumped++;
            }
        }
        beads.erase(b);
        beads.insert(target);
        std::int64_t sub = mn_recurse(beads, parts, k + 1);
        beads.erase(target);
        beads.insert(b);
        total += (jumped % 2 == 0 ? 1 : -1) * sub;
    }
    return total;
}

}  // namespace

std::int64_t sn_character(const YoungDiagram &lambda, const YoungDiagram &type) {
    if (lambda.size() != type.size()) {
        throw std::invalid_argument("character arguments are partitions of different n");
    }
    const int len = lambda.length();
    std::set<int> beads;
    for (int i = 0; i < len; i++) {
        beads.insert(lambda.rows[static_cast<std::size_t>(i)] + len - 1 - i);
    }
    return mn_recurse(beads, type.rows, 0);
}

namespace {

std::size_t checked_dimension(int n, int d, const ResourceLimits &limits) {
    if (n < 1 || d < 1) {
        throw std::invalid_argument("need n >= 1 and d >= 1");
    }
    std::size_t dim = 1;
    for (int i = 0; i < n; i++) {
        dim *= static_cast<std::size_t>(d);
        if (dim > limits.max_dimension) {
            throw ResourceError(fmt::format("d^n = {}^{} exceeds dimension cap {}", d, n, limits.max_dimension));
        }
    }
    return dim;
}

void check_permutation(std::span<const int> perm) {
    std::vector<bool> hit(perm.size(), false);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || hit[static_cast<std::size_t>(p)]) {
            throw std::invalid_argument("not a permutation");
        }
        hit[static_cast<std::size_t>(p)] = true;
    }
}

// digit_weights[j] = d^(n-1-j): factor j is digit j counted from the most significant end.
std::vector<int> digit_weights(int n, int d) {
    std::vector<int> w(static_cast<std::size_t>(n));
    int acc = 1;
    for (int j = n - 1; j >= 0; j--) {
        w[static_cast<std::size_t>(j)] = acc;
        acc *= d;
    }
    return w;
}

}  // namespace

std::vector<int> permute_basis(std::span<const int> perm, int d) {
    check_permutation(perm);
    const int n = static_cast<int>(perm.size());
    const std::vector<int> weights = digit_weights(n, d);
    const int dim = weights.empty() ? 1 : weights[0] * d;
    std::vector<int> image(static_cast<std::size_t>(dim));
    for (int x = 0; x < dim; x++) {
        int y = 0;
        for (int j = 0; j < n; j++) {
            int digit = (x / weights[static_cast<std::size_t>(j)]) % d;
            y += digit * weights[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
        }
        image[static_cast<std::size_t>(x)] = y;
    }
    return image;
}

Matrix permutation_operator(std::span<const int> perm, int d, const ResourceLimits &limits) {
    const std::size_t dim = checked_dimension(static_cast<int>(perm.size()), d, limits);
    std::vector<int> image = permute_basis(perm, d);
    Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t x = 0; x < dim; x++) {
        u(image[x], static_cast<Eigen::Index>(x)) = 1.0;
    }
    return u;
}

double diagram_entropy(const YoungDiagram &lambda) {
    const double n = lambda.size();
    std::vector<double> p;
    for (int r : lambda.rows) {
        p.push_back(r / n);
    }
    return shannon_entropy(p);
}

namespace {

// Accumulates dim(lambda)/n! sum_pi chi_lambda(pi) U(pi) for each requested lambda.
std::vector<Eigen::MatrixXd> group_algebra_projectors(const std::vector<YoungDiagram> &lambdas, int n, int d,
                                                      std::size_t dim) {
    std::map<std::vector<int>, std::vector<double>> char_table;
    for (const YoungDiagram &type : partitions(n, n)) {
        std::vector<double> row;
        for (const YoungDiagram &lam : lambdas) {
            row.push_back(static_cast<double>(sn_character(lam, type)));
        }
        char_table.emplace(type.rows, std::move(row));
    }
    const auto idim = static_cast<Eigen::Index>(dim);
    std::vector<Eigen::MatrixXd> acc(lambdas.size(), Eigen::MatrixXd::Zero(idim, idim));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        const std::vector<double> &chars = char_table.at(cycle_type(perm));
        std::vector<int> image = permute_basis(perm, d);
        for (std::size_t b = 0; b < lambdas.size(); b++) {
            double c = chars[b];
            if (c == 0.0) {
                continue;
            }
            Eigen::MatrixXd &m = acc[b];
            for (std::size_t x = 0; x < dim; x++) {
                m(image[x], static_cast<Eigen::Index>(x)) += c;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double n_fact = static_cast<double>(factorial(n));
    for (std::size_t b = 0; b < lambdas.size(); b++) {
        acc[b] *= static_cast<double>(hook_length_dimension(lambdas[b])) / n_fact;
    }
    return acc;
}

}  // namespace

Matrix isotypic_projector(const YoungDiagram &lambda, int d, const ResourceLimits &limits) {
    if (lambda.length() > d) {
        throw std::invalid_argument(
            fmt::format("diagram {} has more than d = {} rows; its projector vanishes", lambda.to_string(), d));
    }
    const int n = lambda.size();
    const std::size_t dim = checked_dimension(n, d, limits);
    return group_algebra_projectors({lambda}, n, d, dim)[0].cast<Complex>();
}

IsotypicDecomposition IsotypicDecomposition::build(int n, int d, const ResourceLimits &limits) {
    const std::size_t dim = checked_dimension(n, d, limits);
    IsotypicDecomposition out;
    out.n = n;
    out.d = d;
    std::vector<YoungDiagram> lambdas = partitions(n, d);
    std::vector<Eigen::MatrixXd> projectors = group_algebra_projectors(lambdas, n, d, dim);
    for (std::size_t b = 0; b < lambdas.size(); b++) {
        IsotypicBlock block;
        block.rank = static_cast<int>(std::llround(projectors[b].trace()));
        std::int64_t expected = hook_length_dimension(lambdas[b]) * weyl_dimension(lambdas[b], d);
        if (block.rank != expected) {
            throw InvariantError(fmt::format("block {} has trace {} but dimension formula gives {}",
                                             lambdas[b].to_string(), block.rank, expected));
        }
        block.entropy = diagram_entropy(lambdas[b]);
        block.lambda = std::move(lambdas[b]);
        block.projector = projectors[b].cast<Complex>();
        out.blocks.push_back(std::move(block));
    }
    return out;
}

int IsotypicDecomposition::dim() const {
    return blocks.empty() ? 0 : static_cast<int>(blocks.front().projector.rows());
}

RateProjector rate_projector(double rate, const IsotypicDecomposition &decomp) {
    if (!(rate >= 0.0) || rate > std::log(static_cast<double>(decomp.d)) + 1e-12) {
        throw std::invalid_argument(fmt::format("rate {} outside [0, ln {}]", rate, decomp.d));
    }
    RateProjector out;
    out.rate = rate;
    out.n = decomp.n;
    out.d = decomp.d;
    out.projector = Matrix::Zero(decomp.dim(), decomp.dim());
    for (const IsotypicBlock &block : decomp.blocks) {
        if (block.entropy <= rate + kEntropyCompareEps) {
            out.projector += block.projector;
            out.rank += block.rank;
            out.selected.push_back(block.lambda);
        }
    }
    return out;
}

RateProjector rate_projector(double rate, int n, int d, const ResourceLimits &limits) {
    return rate_projector(rate, *isotypic_decomposition(n, d, limits));
}

std::vector<double> block_weights(const IsotypicDecomposition &decomp, const Matrix &x) {
    std::vector<double> out;
    out.reserve(decomp.blocks.size());
    for (const IsotypicBlock &block : decomp.blocks) {
        out.push_back(trace_product(block.projector, x));
    }
    return out;
}

}  // namespace qvlc
