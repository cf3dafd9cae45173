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

#include "qvlc/fixed_code.h"

#include <cmath>

#include <fmt/format.h>

#include "qvlc/classical.h"

namespace qvlc {

FixedLengthCode::FixedLengthCode(RateProjector projector) : projector_(std::move(projector)) {
    if (projector_.rank < 1) {
        throw std::invalid_argument("fixed-length code needs a projector of rank >= 1");
    }
    const Matrix &p = projector_.projector;
    for (Eigen::Index j = 0; j < p.cols(); j++) {
        double norm = p.col(j).norm();
        if (norm > 1e-8) {
            pad_ = p.col(j) / norm;
            pad_index_ = static_cast<int>(j);
            return;
        }
    }
    throw InvariantError("projector of positive rank has no nonzero column");
}

FixedLengthCode FixedLengthCode::make(double rate, int n, int d, const ResourceLimits &limits) {
    return FixedLengthCode(rate_projector(rate, n, d, limits));
}

DensityMatrix encode(const FixedLengthCode &code, const DensityMatrix &rho_n) {
    const Matrix &p = code.projector().projector;
    if (rho_n.dim() != p.rows()) {
        throw std::invalid_argument(
            fmt::format("encoder acts on dimension {}, input has {}", p.rows(), rho_n.dim()));
    }
    Matrix kept = p * rho_n.matrix() * p;
    double lost = 1.0 - kept.trace().real();
    Matrix out = kept + lost * code.pad_vector() * code.pad_vector().adjoint();
    return DensityMatrix::assume_valid(0.5 * (out + out.adjoint()));
}

DensityMatrix decode(const FixedLengthCode &code, const DensityMatrix &sigma) {
    const Matrix &p = code.projector().projector;
    if (sigma.dim() != p.rows()) {
        throw std::invalid_argument("decoder input has the wrong dimension");
    }
    double leak = (sigma.matrix() - p * sigma.matrix() * p).cwiseAbs().maxCoeff();
    if (leak > 1e-10) {
        throw std::invalid_argument(fmt::format("decoder input leaks {:.3e} outside the coding subspace", leak));
    }
    return sigma;
}

double sequence_error(const FixedLengthCode &code, const FactoredState &rho, const ToleranceConfig &) {
    const Matrix &p = code.projector().projector;
    // sigma = V V^dag with V = [P W, sqrt(w) u], so F = ||[Y, sqrt(w) v]||_1 with
    // Y = W^dag P W and v = W^dag u.
    Matrix pw = p * rho.w;
    Matrix y = rho.w.adjoint() * pw;
    double kept = y.trace().real();
    double lost = std::max(0.0, 1.0 - kept);
    Matrix b(y.rows(), y.cols() + 1);
    b.leftCols(y.cols()) = y;
    b.col(y.cols()) = std::sqrt(lost) * (rho.w.adjoint() * code.pad_vector());
    double fid = trace_norm(b);
    return std::max(0.0, 1.0 - std::min(fid, 1.0));
}

Estimate average_error(const FixedLengthCode &code, const Ensemble &source, const ExpansionOptions &opts) {
    if (source.dim() != code.d()) {
        throw std::invalid_argument(
            fmt::format("source has dimension {}, code expects {}", source.dim(), code.d()));
    }
    std::vector<FactoredState> factors;
    std::vector<double> probs;
    for (const auto &item : source.items()) {
        factors.push_back(FactoredState::from(item.state, opts.tol));
        probs.push_back(item.prob);
    }
    std::vector<FactoredState> seq_factors(static_cast<std::size_t>(code.n()));
    // The pad vector is not permutation invariant, so every ordered sequence is visited.
    return expected_over_source(probs, code.n(), ExpansionKind::kSequences, opts, [&](std::span<const int> seq) {
        for (std::size_t j = 0; j < seq.size(); j++) {
            seq_factors[j] = factors[static_cast<std::size_t>(seq[j])];
        }
        return sequence_error(code, FactoredState::product(seq_factors), opts.tol);
    });
}

ErrorChain error_bound_chain(const FixedLengthCode &code, const Ensemble &source, const ExpansionOptions &opts) {
    ErrorChain chain;
    chain.exact = average_error(code, source, opts);
    DensityMatrix avg = average_state(source);
    DensityMatrix avg_n = tensor_power(avg, code.n(), opts.limits);
    double kept = trace_product(code.projector().projector, avg_n.matrix());
    chain.two_one_minus_trace = 2.0 * (1.0 - kept);
    ProbVector a(spectrum(avg, opts.tol));
    chain.rhs = fixed_error_bound(code.n(), code.d(), a, code.rate());

    const double slack = 1e-10 + 4.0 * chain.exact.std_error;
    bool first = chain.exact.value <= chain.two_one_minus_trace + slack;
    bool second = chain.two_one_minus_trace <= chain.rhs + 1e-10;
    if (!first) {
        chain.diagnostics.push_back(fmt::format("exact error {:.17g} exceeds 2(1 - Tr P rhobar^n) = {:.17g}",
                                                chain.exact.value, chain.two_one_minus_trace));
    }
    if (!second) {
        chain.diagnostics.push_back(fmt::format("2(1 - Tr P rhobar^n) = {:.17g} exceeds the exponent bound {:.17g}",
                                                chain.two_one_minus_trace, chain.rhs));
    }
    chain.ordered = first && second;
    return chain;
}

}  // namespace qvlc
