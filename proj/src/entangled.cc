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

#include "qvlc/entangled.h"

#include <cmath>

#include <fmt/format.h>

namespace qvlc {

namespace {

std::size_t int_pow(int base, int exp) {
    std::size_t out = 1;
    for (int i = 0; i < exp; i++) {
        out *= static_cast<std::size_t>(base);
    }
    return out;
}

void check_dimension(std::size_t dim, const ResourceLimits &limits, const char *what) {
    if (dim > limits.max_dimension) {
        throw ResourceError(fmt::format("{} dimension {} exceeds the cap {}", what, dim, limits.max_dimension));
    }
}

/// Leading eigenvector of a pure state, reshaped to its dim_a x dim_b amplitude matrix.
Matrix schmidt_matrix(const BipartiteState &s) {
    HermitianEigen eig = eigh(s.state().matrix());
    Vector psi = eig.vectors.col(eig.vectors.cols() - 1);
    Matrix m(s.dim_a(), s.dim_b());
    for (int a = 0; a < s.dim_a(); a++) {
        for (int b = 0; b < s.dim_b(); b++) {
            m(a, b) = psi(a * s.dim_b() + b);
        }
    }
    return m;
}

bool all_pure(const BipartiteEnsemble &e) {
    for (const auto &item : e.items()) {
        if (!item.state.is_pure()) {
            return false;
        }
    }
    return true;
}

/// Joint factor W (rho = W W^dagger) of a sequence, rows in A^n B^n order.
FactoredState joint_factor(const std::vector<FactoredState> &factors, std::span<const int> seq,
                           const std::vector<int> &perm) {
    std::vector<FactoredState> parts;
    parts.reserve(seq.size());
    for (int idx : seq) {
        parts.push_back(factors[static_cast<std::size_t>(idx)]);
    }
    FactoredState w = FactoredState::product(parts);
    return FactoredState{reorder_rows(w.w, perm)};
}

}  // namespace

BipartiteState::BipartiteState(int dim_a, int dim_b, DensityMatrix state)
    : dim_a_(dim_a), dim_b_(dim_b), state_(std::move(state)) {
    if (dim_a < 1 || dim_b < 1 || state_.dim() != dim_a * dim_b) {
        throw std::invalid_argument(
            fmt::format("bipartite state of dimension {} does not factor as {} x {}", state_.dim(), dim_a, dim_b));
    }
}

BipartiteState BipartiteState::pure(int dim_a, int dim_b, const Vector &psi) {
    return BipartiteState(dim_a, dim_b, DensityMatrix::pure(psi));
}

bool BipartiteState::is_pure(double tol) const { return state_.purity() >= 1.0 - tol; }

DensityMatrix BipartiteState::reduced_a() const { return partial_trace_b(state_, dim_a_, dim_b_); }

BipartiteEnsemble::BipartiteEnsemble(std::vector<BipartiteItem> items) : items_(std::move(items)) {
    if (items_.empty()) {
        throw std::invalid_argument("bipartite ensemble is empty");
    }
    for (const auto &item : items_) {
        if (item.state.dim_a() != items_.front().state.dim_a() ||
            item.state.dim_b() != items_.front().state.dim_b()) {
            throw std::invalid_argument("bipartite ensemble members have different factorizations");
        }
    }
    // Probability validation is shared with Ensemble.
    (void)joint();
}

Ensemble BipartiteEnsemble::reduced_a() const {
    std::vector<EnsembleItem> out;
    for (const auto &item : items_) {
        out.push_back({item.prob, item.state.reduced_a()});
    }
    return Ensemble(std::move(out));
}

Ensemble BipartiteEnsemble::joint() const {
    std::vector<EnsembleItem> out;
    for (const auto &item : items_) {
        out.push_back({item.prob, item.state.state()});
    }
    return Ensemble(std::move(out));
}

ProbVector reduced_spectrum(const BipartiteEnsemble &e) {
    DensityMatrix avg = average_state(e.joint());
    return ProbVector(spectrum(partial_trace_b(avg, e.dim_a(), e.dim_b())));
}

std::vector<int> reorder_permutation(int n, int dim_a, int dim_b) {
    const int pair = dim_a * dim_b;
    const std::size_t total = int_pow(pair, n);
    const int stride_b = static_cast<int>(int_pow(dim_b, n));
    std::vector<int> perm(total);
    for (std::size_t x = 0; x < total; x++) {
        std::size_t rest = x;
        int a_index = 0;
        int b_index = 0;
        int a_scale = 1;
        int b_scale = 1;
        for (int j = n - 1; j >= 0; j--) {
            int digit = static_cast<int>(rest % static_cast<std::size_t>(pair));
            rest /= static_cast<std::size_t>(pair);
            a_index += (digit / dim_b) * a_scale;
            b_index += (digit % dim_b) * b_scale;
            a_scale *= dim_a;
            b_scale *= dim_b;
        }
        perm[x] = a_index * stride_b + b_index;
    }
    return perm;
}

Matrix reorder_rows(const Matrix &m, const std::vector<int> &perm) {
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        out.row(perm[static_cast<std::size_t>(i)]) = m.row(i);
    }
    return out;
}

Matrix reorder(const Matrix &m, const std::vector<int> &perm) {
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = m(i, j);
        }
    }
    return out;
}

Estimate local_fixed_error(const FixedLengthCode &code, const BipartiteEnsemble &e, const ExpansionOptions &opts) {
    if (e.dim_a() != code.d()) {
        throw std::invalid_argument(fmt::format("A side has dimension {}, code expects {}", e.dim_a(), code.d()));
    }
    const int n = code.n();
    const int dim_b = e.dim_b();
    const Matrix &p = code.projector().projector;
    const Vector &u = code.pad_vector();
    std::vector<double> probs;
    for (const auto &item : e.items()) {
        probs.push_back(item.prob);
    }

    if (all_pure(e)) {
        check_dimension(int_pow(dim_b, n), opts.limits, "B^n");
        std::vector<Matrix> schmidt;
        for (const auto &item : e.items()) {
            schmidt.push_back(schmidt_matrix(item.state));
        }
        const Matrix q = Matrix::Identity(p.rows(), p.cols()) - p;
        return expected_over_source(probs, n, ExpansionKind::kSequences, opts, [&](std::span<const int> seq) {
            Matrix m = schmidt[static_cast<std::size_t>(seq[0])];
            for (std::size_t j = 1; j < seq.size(); j++) {
                m = kron(m, schmidt[static_cast<std::size_t>(seq[j])]);
            }
            // <Phi|(P (x) I)|Phi> = Tr M^dag P M.
            double kept = (m.adjoint() * p * m).trace().real();
            // Tr_A[(Q (x) I) Phi Phi^dag] = (M^dag Q M)^T, and (<u| (x) I)|Phi> = M^T conj(u).
            Matrix x = (m.adjoint() * q * m).transpose();
            Vector w = m.transpose() * u.conjugate();
            double pad = (w.adjoint() * x * w)(0, 0).real();
            double overlap = std::max(0.0, kept * kept + pad);
            return std::max(0.0, 1.0 - std::min(1.0, std::sqrt(overlap)));
        });
    }

    const std::size_t joint_dim = int_pow(code.d() * dim_b, n);
    check_dimension(joint_dim, opts.limits, "joint");
    const std::vector<int> perm = reorder_permutation(n, code.d(), dim_b);
    std::vector<FactoredState> factors;
    for (const auto &item : e.items()) {
        factors.push_back(FactoredState::from(item.state.state(), opts.tol));
    }
    const int db_n = static_cast<int>(int_pow(dim_b, n));
    const Matrix p_joint = kron(p, Matrix::Identity(db_n, db_n));
    const Matrix q_joint = Matrix::Identity(p_joint.rows(), p_joint.cols()) - p_joint;
    return expected_over_source(probs, n, ExpansionKind::kSequences, opts, [&](std::span<const int> seq) {
        FactoredState w = joint_factor(factors, seq, perm);
        // sigma = (P (x) I) rho (P (x) I) + |u><u| (x) Tr_A[(Q (x) I) rho]. With Z = (Q (x) I) W
        // split into row blocks Z_a, Tr_A[Z Z^dag] = sum_a Z_a Z_a^dag.
        const Eigen::Index r = w.w.cols();
        const Eigen::Index da_n = p.rows();
        Matrix z = q_joint * w.w;
        Matrix z_cat(db_n, r * da_n);
        for (Eigen::Index a = 0; a < da_n; a++) {
            z_cat.middleCols(a * r, r) = z.middleRows(a * db_n, db_n);
        }
        FactoredState sigma;
        sigma.w.resize(w.w.rows(), r + r * da_n);
        sigma.w.leftCols(r) = p_joint * w.w;
        sigma.w.rightCols(r * da_n) = kron(u, z_cat);
        double fid = root_fidelity(w, sigma);
        return std::max(0.0, 1.0 - fid);
    });
}

ErrorChain local_fixed_error_chain(const FixedLengthCode &code, const BipartiteEnsemble &e,
                                   const ExpansionOptions &opts) {
    ErrorChain chain;
    chain.exact = local_fixed_error(code, e, opts);
    DensityMatrix reduced = partial_trace_b(average_state(e.joint()), e.dim_a(), e.dim_b());
    DensityMatrix power = tensor_power(reduced, code.n(), opts.limits);
    chain.two_one_minus_trace = 2.0 * (1.0 - trace_product(code.projector().projector, power.matrix()));
    chain.rhs = fixed_error_bound(code.n(), code.d(), ProbVector(spectrum(reduced, opts.tol)), code.rate());
    const double slack = 1e-10 + 4.0 * chain.exact.std_error;
    bool first = chain.exact.value <= chain.two_one_minus_trace + slack;
    bool second = chain.two_one_minus_trace <= chain.rhs + 1e-10;
    if (!first) {
        chain.diagnostics.push_back(fmt::format("exact error {:.17g} exceeds 2(1 - Tr P rhobar_A^n) = {:.17g}",
                                                chain.exact.value, chain.two_one_minus_trace));
    }
    if (!second) {
        chain.diagnostics.push_back(fmt::format("2(1 - Tr P rhobar_A^n) = {:.17g} exceeds the exponent bound {:.17g}",
                                                chain.two_one_minus_trace, chain.rhs));
    }
    chain.ordered = first && second;
    return chain;
}

Estimate local_varlen_error_definitional(const PartitionCode &code, const BipartiteEnsemble &e,
                                         const ExpansionOptions &opts) {
    if (e.dim_a() != code.d()) {
        throw std::invalid_argument(fmt::format("A side has dimension {}, code expects {}", e.dim_a(), code.d()));
    }
    const int n = code.n();
    const int dim_b = e.dim_b();
    check_dimension(int_pow(code.d() * dim_b, n), opts.limits, "joint");
    const int db_n = static_cast<int>(int_pow(dim_b, n));
    const std::vector<int> perm = reorder_permutation(n, code.d(), dim_b);
    std::vector<Matrix> projectors;
    for (int f = 0; f < code.outcome_count(); f++) {
        projectors.push_back(kron(code.projector(code.outcome(f)), Matrix::Identity(db_n, db_n)));
    }
    std::vector<FactoredState> factors;
    std::vector<double> probs;
    for (const auto &item : e.items()) {
        factors.push_back(FactoredState::from(item.state.state(), opts.tol));
        probs.push_back(item.prob);
    }
    const double inv_k = 1.0 / code.k_max();
    // Permuting whole A_j B_j pairs commutes with every P (x) I.
    return expected_over_source(probs, n, ExpansionKind::kMultisets, opts, [&](std::span<const int> seq) {
        FactoredState w = joint_factor(factors, seq, perm);
        double acc = 0;
        for (const Matrix &p : projectors) {
            FactoredState post{p * w.w};
            double t = post.w.squaredNorm();
            if (t <= 1e-300) {
                continue;
            }
            post.w /= std::sqrt(t);
            double fid = root_fidelity(w, post);
            acc += inv_k * t * (1.0 - fid);
        }
        return acc;
    });
}

VarlenReport local_varlen_report(const PartitionCode &code, const BipartiteEnsemble &e,
                                 const VarlenReportOptions &opts) {
    VarlenReportOptions reduced_opts = opts;
    reduced_opts.definitional = false;
    VarlenReport rep = varlen_report(code, e.reduced_a(), reduced_opts);
    if (opts.definitional) {
        rep.error_definitional = local_varlen_error_definitional(code, e, opts.expansion);
    }
    return rep;
}

TraceIdentity reduced_trace_identity_check(const RateProjector &p, const BipartiteState &phi, int n,
                                           const ResourceLimits &limits) {
    if (!phi.is_pure()) {
        throw std::invalid_argument("reduced-trace identity needs a pure state");
    }
    if (phi.dim_a() != p.d || n != p.n) {
        throw std::invalid_argument("projector does not match the state or n");
    }
    const int dim_a = phi.dim_a();
    const int dim_b = phi.dim_b();
    check_dimension(int_pow(dim_a * dim_b, n), limits, "joint");
    HermitianEigen eig = eigh(phi.state().matrix());
    Vector psi = eig.vectors.col(eig.vectors.cols() - 1);
    Vector big = psi;
    for (int j = 1; j < n; j++) {
        Vector next(big.size() * psi.size());
        for (Eigen::Index x = 0; x < big.size(); x++) {
            next.segment(x * psi.size(), psi.size()) = big(x) * psi;
        }
        big = next;
    }
    const std::vector<int> perm = reorder_permutation(n, dim_a, dim_b);
    const Eigen::Index da_n = p.projector.rows();
    const Eigen::Index db_n = static_cast<Eigen::Index>(int_pow(dim_b, n));
    Matrix phi_mat(da_n, db_n);
    for (Eigen::Index x = 0; x < big.size(); x++) {
        int y = perm[static_cast<std::size_t>(x)];
        phi_mat(y / db_n, y % db_n) = big(x);
    }
    TraceIdentity out;
    out.lhs = (phi_mat.adjoint() * p.projector * phi_mat).trace().real();
    ResourceLimits a_limits = limits;
    DensityMatrix reduced_power = tensor_power(phi.reduced_a(), n, a_limits);
    out.rhs = trace_product(p.projector, reduced_power.matrix());
    return out;
}

double entanglement_entropy(const BipartiteState &phi, const ToleranceConfig &tol) {
    if (!phi.is_pure()) {
        throw std::invalid_argument("entanglement entropy is only defined here for pure states");
    }
    return von_neumann_entropy(phi.reduced_a(), tol);
}

}  // namespace qvlc
