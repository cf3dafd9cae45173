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
#include <random>

#include <gtest/gtest.h>

using namespace qvlc;

namespace {

const double kLn2 = std::log(2.0);

BipartiteState schmidt_state(double q) {
    Vector psi = Vector::Zero(4);
    psi(0) = std::sqrt(q);
    psi(3) = std::sqrt(1 - q);
    return BipartiteState::pure(2, 2, psi);
}

/// Moves the A factors of (AB)^n to the front by explicit digit bookkeeping.
Matrix to_a_then_b(const Matrix &m, int n, int da, int db) {
    const int dim = static_cast<int>(m.rows());
    auto index = [&](int x) {
        std::vector<int> a(n), b(n);
        for (int j = n - 1; j >= 0; j--) {
            int digit = x % (da * db);
            x /= da * db;
            a[j] = digit / db;
            b[j] = digit % db;
        }
        int ia = 0, ib = 0;
        for (int j = 0; j < n; j++) {
            ia = ia * da + a[j];
            ib = ib * db + b[j];
        }
        return ia * static_cast<int>(std::pow(db, n)) + ib;
    };
    Matrix out(dim, dim);
    for (int i = 0; i < dim; i++) {
        for (int j = 0; j < dim; j++) {
            out(index(i), index(j)) = m(i, j);
        }
    }
    return out;
}

/// Dense error of the local code on one joint sequence state (already in A^n B^n order).
double dense_sequence_error(const FixedLengthCode &code, const Matrix &rho, int db_n) {
    const Matrix &p = code.projector().projector;
    const int da_n = static_cast<int>(p.rows());
    Matrix pj = kron(p, Matrix::Identity(db_n, db_n));
    Matrix qj = Matrix::Identity(pj.rows(), pj.cols()) - pj;
    Matrix lost = qj * rho;
    Matrix lost_b = Matrix::Zero(db_n, db_n);
    for (int a = 0; a < da_n; a++) {
        lost_b += lost.block(a * db_n, a * db_n, db_n, db_n);
    }
    Matrix pad = Matrix::Zero(da_n, da_n);
    pad(0, 0) = 1;
    Matrix sigma = pj * rho * pj + kron(pad, lost_b);
    return 1 - root_fidelity(DensityMatrix::assume_valid(rho), DensityMatrix::assume_valid(sigma));
}

double dense_local_error(const FixedLengthCode &code, const BipartiteEnsemble &e) {
    const int n = code.n();
    const std::size_t m = e.size();
    std::size_t total = 1;
    int db_n = 1;
    for (int j = 0; j < n; j++) {
        total *= m;
        db_n *= e.dim_b();
    }
    double acc = 0;
    for (std::size_t x = 0; x < total; x++) {
        std::size_t rest = x;
        double w = 1;
        Matrix joint = Matrix::Identity(1, 1);
        for (int j = 0; j < n; j++) {
            const auto &item = e.items()[rest % m];
            rest /= m;
            w *= item.prob;
            joint = kron(joint, item.state.state().matrix());
        }
        acc += w * dense_sequence_error(code, to_a_then_b(joint, n, e.dim_a(), e.dim_b()), db_n);
    }
    return acc;
}

}  // namespace

TEST(Reorder, ProductStatesLandInANBNOrder) {
    std::mt19937_64 rng(3);
    Matrix a1 = random_density(2, 2, rng).matrix();
    Matrix a2 = random_density(2, 2, rng).matrix();
    Matrix b1 = random_density(3, 3, rng).matrix();
    Matrix b2 = random_density(3, 3, rng).matrix();
    Matrix interleaved = kron(kron(a1, b1), kron(a2, b2));
    Matrix expected = kron(kron(a1, a2), kron(b1, b2));
    std::vector<int> perm = reorder_permutation(2, 2, 3);
    EXPECT_LT((reorder(interleaved, perm) - expected).norm(), 1e-14);
    EXPECT_LT((to_a_then_b(interleaved, 2, 2, 3) - expected).norm(), 1e-14);
}

TEST(BipartiteState, ValidationAndReduction) {
    EXPECT_THROW(BipartiteState(2, 3, DensityMatrix::maximally_mixed(4)), std::invalid_argument);
    BipartiteState s = schmidt_state(0.95);
    EXPECT_TRUE(s.is_pure());
    std::vector<double> spec = spectrum(s.reduced_a());
    EXPECT_NEAR(spec[0], 0.95, 1e-13);
    EXPECT_NEAR(spec[1], 0.05, 1e-13);
    BipartiteState mixed(2, 2, DensityMatrix::maximally_mixed(4));
    EXPECT_FALSE(mixed.is_pure());
}

TEST(ReducedSpectrum, BellProductAndSchmidt) {
    BipartiteEnsemble bell({{1.0, schmidt_state(0.5)}});
    ProbVector sb = reduced_spectrum(bell);
    EXPECT_NEAR(sb[0], 0.5, 1e-13);
    EXPECT_NEAR(sb[1], 0.5, 1e-13);
    Vector prod = Vector::Zero(4);
    prod(0) = 1;
    BipartiteEnsemble product({{1.0, BipartiteState::pure(2, 2, prod)}});
    EXPECT_NEAR(reduced_spectrum(product)[0], 1.0, 1e-13);
    BipartiteEnsemble mix({{0.5, schmidt_state(0.9)}, {0.5, schmidt_state(0.3)}});
    ProbVector sm = reduced_spectrum(mix);
    EXPECT_NEAR(sm[0], 0.6, 1e-13);
    EXPECT_NEAR(sm[1], 0.4, 1e-13);
}

TEST(EntanglementEntropy, SchmidtValueAndAdditivity) {
    double h = -0.95 * std::log(0.95) - 0.05 * std::log(0.05);
    EXPECT_NEAR(entanglement_entropy(schmidt_state(0.95)), h, 1e-12);
    EXPECT_NEAR(h, 0.198515, 1e-6);
    EXPECT_NEAR(entanglement_entropy(schmidt_state(0.5)), kLn2, 1e-12);
    // Two copies regrouped as (A1 A2)(B1 B2) carry twice the entropy.
    Vector psi = Vector::Zero(4);
    psi(0) = std::sqrt(0.95);
    psi(3) = std::sqrt(0.05);
    Vector two = kron(Matrix(psi), Matrix(psi)).col(0);
    std::vector<int> perm = reorder_permutation(2, 2, 2);
    Vector regrouped(16);
    for (int x = 0; x < 16; x++) {
        regrouped(perm[static_cast<std::size_t>(x)]) = two(x);
    }
    EXPECT_NEAR(entanglement_entropy(BipartiteState::pure(4, 4, regrouped)), 2 * h, 1e-11);
    EXPECT_THROW(entanglement_entropy(BipartiteState(2, 2, DensityMatrix::maximally_mixed(4))),
                 std::invalid_argument);
}

TEST(TraceIdentity, JointEqualsReduced) {
    for (double r : {0.1, 0.3, 0.6}) {
        RateProjector p = rate_projector(r, 3, 2);
        TraceIdentity t = reduced_trace_identity_check(p, schmidt_state(0.8), 3);
        EXPECT_NEAR(t.lhs, t.rhs, 1e-12);
    }
}

TEST(LocalFixed, TrivialReferenceReducesToPlainCode) {
    std::mt19937_64 rng(12);
    std::vector<BipartiteItem> items{{0.3, BipartiteState(2, 1, random_density(2, 1, rng))},
                                     {0.7, BipartiteState(2, 1, random_density(2, 1, rng))}};
    BipartiteEnsemble e(items);
    for (int n = 2; n <= 5; n++) {
        FixedLengthCode code = FixedLengthCode::make(0.4, n, 2);
        EXPECT_NEAR(local_fixed_error(code, e).value, average_error(code, e.reduced_a()).value, 1e-12);
    }
}

TEST(LocalFixed, BellAtFullRateIsLossless) {
    BipartiteEnsemble bell({{1.0, schmidt_state(0.5)}});
    FixedLengthCode code = FixedLengthCode::make(kLn2, 3, 2);
    EXPECT_NEAR(local_fixed_error(code, bell).value, 0.0, 1e-12);
}

TEST(LocalFixed, SchmidtRouteMatchesDenseOracle) {
    BipartiteEnsemble e({{0.6, schmidt_state(0.9)}, {0.4, schmidt_state(0.3)}});
    for (int n = 2; n <= 3; n++) {
        FixedLengthCode code = FixedLengthCode::make(0.5, n, 2);
        EXPECT_NEAR(local_fixed_error(code, e).value, dense_local_error(code, e), 1e-7) << "n = " << n;
    }
}

TEST(LocalFixed, MixedRouteMatchesDenseOracle) {
    std::mt19937_64 rng(31);
    BipartiteEnsemble e({{0.5, BipartiteState(2, 2, random_density(4, 2, rng))},
                         {0.5, BipartiteState(2, 2, random_density(4, 3, rng))}});
    for (int n = 2; n <= 3; n++) {
        FixedLengthCode code = FixedLengthCode::make(0.5, n, 2);
        EXPECT_NEAR(local_fixed_error(code, e).value, dense_local_error(code, e), 1e-7) << "n = " << n;
    }
}

TEST(LocalFixed, ChainIsOrdered) {
    BipartiteEnsemble e({{1.0, schmidt_state(0.95)}});
    for (int n = 2; n <= 5; n++) {
        ErrorChain c = local_fixed_error_chain(FixedLengthCode::make(0.4, n, 2), e);
        EXPECT_TRUE(c.ordered) << "n = " << n;
    }
}

TEST(LocalVarlen, TrivialReferenceAndDefinitionalAgreement) {
    std::mt19937_64 rng(41);
    BipartiteEnsemble plain({{0.5, BipartiteState(2, 1, random_density(2, 1, rng))},
                             {0.5, BipartiteState(2, 1, random_density(2, 1, rng))}});
    PartitionCode code = make_smeared(4, 2, 0.5);
    VarlenReportOptions opts;
    VarlenReport local = local_varlen_report(code, plain, opts);
    VarlenReport direct = varlen_report(code, plain.reduced_a(), opts);
    EXPECT_NEAR(local.error_exact.value, direct.error_exact.value, 1e-12);
    for (std::size_t f = 0; f < local.outcome_probs.size(); f++) {
        EXPECT_NEAR(local.outcome_probs[f], direct.outcome_probs[f], 1e-13);
    }
    BipartiteEnsemble entangled({{0.5, schmidt_state(0.9)}, {0.5, schmidt_state(0.4)}});
    VarlenReport rep = local_varlen_report(code, entangled, opts);
    ASSERT_TRUE(rep.error_definitional.has_value());
    EXPECT_NEAR(rep.error_definitional->value, rep.error_exact.value, 1e-7);
}
