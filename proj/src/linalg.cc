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

#include "qvlc/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace qvlc {

DensityMatrix::DensityMatrix(Matrix m, const ToleranceConfig &tol) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw std::invalid_argument("density matrix must be square and non-empty");
    }
    if (!is_hermitian(m_, tol.hermit_tol)) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol.hermit_tol) {
        throw std::invalid_argument(fmt::format("density matrix trace is {:.17g}, expected 1", tr));
    }
    double min_eig = eigvalsh(m_).minCoeff();
    if (min_eig < -tol.hermit_tol) {
        throw std::invalid_argument(fmt::format("density matrix has eigenvalue {:.3e} < 0", min_eig));
    }
}

DensityMatrix DensityMatrix::assume_valid(Matrix m) {
    DensityMatrix out;
    out.m_ = std::move(m);
    return out;
}

DensityMatrix DensityMatrix::pure(const Vector &psi) {
    double norm = psi.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("pure state vector has zero norm");
    }
    Vector v = psi / norm;
    return assume_valid(v * v.adjoint());
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs) {
    Matrix m = Matrix::Zero(probs.size(), probs.size());
    for (std::size_t i = 0; i < probs.size(); i++) {
        m(i, i) = probs[i];
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return assume_valid(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return trace_product(m_, m_); }

Ensemble::Ensemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
    if (items_.empty()) {
        throw std::invalid_argument("ensemble must not be empty");
    }
    double total = 0;
    for (const auto &item : items_) {
        if (!(item.prob >= 0.0) || item.prob > 1.0) {
            throw std::invalid_argument(fmt::format("ensemble probability {} outside [0, 1]", item.prob));
        }
        if (item.state.dim() != items_.front().state.dim()) {
            throw std::invalid_argument("ensemble members have different dimensions");
        }
        total += item.prob;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument(fmt::format("ensemble probabilities sum to {:.17g}", total));
    }
}

HermitianEigen eigh(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw InvariantError("Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw InvariantError("Hermitian eigensolver did not converge");
    }
    return solver.eigenvalues();
}

bool is_hermitian(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix average_state(const Ensemble &e) {
    if (e.size() == 0) {
        throw std::invalid_argument("empty ensemble");
    }
    Matrix acc = Matrix::Zero(e.dim(), e.dim());
    for (const auto &item : e.items()) {
        if (item.state.dim() != e.dim()) {
            throw std::invalid_argument("ensemble members have different dimensions");
        }
        acc += item.prob * item.state.matrix();
    }
    return DensityMatrix::assume_valid(std::move(acc));
}

double von_neumann_entropy(const DensityMatrix &rho, const ToleranceConfig &tol) {
    double h = 0;
    for (double lam : eigvalsh(rho.matrix())) {
        if (lam > tol.psd_clip) {
            h -= lam * std::log(lam);
        }
    }
    return std::max(h, 0.0);
}

Matrix sqrt_psd(const Matrix &m, const ToleranceConfig &tol) {
    HermitianEigen eig = eigh(m);
    RealVector roots(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); i++) {
        double lam = eig.values(i);
        if (lam < -tol.psd_clip) {
            throw std::invalid_argument(fmt::format("matrix is not PSD: eigenvalue {:.3e}", lam));
        }
        roots(i) = lam > 0 ? std::sqrt(lam) : 0.0;
    }
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

namespace {

/// V with m = V V^dag, dropping eigenvalues within rounding noise of zero.
Matrix psd_factor(const Matrix &m, const ToleranceConfig &tol) {
    HermitianEigen eig = eigh(m);
    const double top = std::max(0.0, eig.values.maxCoeff());
    const double noise = static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() * top;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < eig.values.size(); i++) {
        double lam = eig.values(i);
        if (lam < -tol.psd_clip) {
            throw std::invalid_argument(fmt::format("matrix is not PSD: eigenvalue {:.3e}", lam));
        }
        if (lam > noise) {
            kept.push_back(i);
        }
    }
    Matrix v(m.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); c++) {
        v.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(kept[c]) * std::sqrt(eig.values(kept[c]));
    }
    return v;
}

}  // namespace

double trace_norm(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    // BDCSVD in Eigen 3.4.0 loses accuracy on some complex inputs; Jacobi does not.
    Eigen::JacobiSVD<Matrix> jacobi(m);
    return jacobi.singularValues().sum();
}

double root_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma, const ToleranceConfig &tol) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("fidelity of states with different dimensions");
    }
    Matrix w = psd_factor(rho.matrix(), tol);
    Matrix v = psd_factor(sigma.matrix(), tol);
    return std::min(trace_norm(w.adjoint() * v), 1.0);
}

double bures_distance(const DensityMatrix &rho, const DensityMatrix &sigma, const ToleranceConfig &tol) {
    return std::sqrt(std::max(0.0, 1.0 - root_fidelity(rho, sigma, tol)));
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix tensor_product(std::span<const DensityMatrix> factors, const ResourceLimits &limits) {
    if (factors.empty()) {
        throw std::invalid_argument("tensor product of zero factors");
    }
    std::size_t dim = 1;
    for (const auto &f : factors) {
        dim *= static_cast<std::size_t>(f.dim());
        if (dim > limits.max_dimension) {
            throw ResourceError(fmt::format("tensor product dimension exceeds cap {}", limits.max_dimension));
        }
    }
    Matrix acc = factors[0].matrix();
    for (std::size_t i = 1; i < factors.size(); i++) {
        acc = kron(acc, factors[i].matrix());
    }
    return DensityMatrix::assume_valid(std::move(acc));
}

DensityMatrix tensor_power(const DensityMatrix &rho, int n, const ResourceLimits &limits) {
    if (n < 1) {
        throw std::invalid_argument("tensor power needs n >= 1");
    }
    std::vector<DensityMatrix> factors(static_cast<std::size_t>(n), rho);
    return tensor_product(factors, limits);
}

Matrix partial_trace_b(const Matrix &m, int dim_a, int dim_b) {
    if (dim_a < 1 || dim_b < 1 || m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b ||
        m.cols() != m.rows()) {
        throw std::invalid_argument(
            fmt::format("cannot trace out B: dimension {} != {} x {}", m.rows(), dim_a, dim_b));
    }
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; i++) {
        for (int j = 0; j < dim_a; j++) {
            Complex acc = 0;
            for (int k = 0; k < dim_b; k++) {
                acc += m(i * dim_b + k, j * dim_b + k);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

DensityMatrix partial_trace_b(const DensityMatrix &rho, int dim_a, int dim_b) {
    return DensityMatrix::assume_valid(partial_trace_b(rho.matrix(), dim_a, dim_b));
}

double trace_product(const Matrix &a, const Matrix &b) {
    // Tr(ab) = sum_ij a_ij b_ji
    return a.cwiseProduct(b.transpose()).sum().real();
}

FactoredState FactoredState::from(const DensityMatrix &rho, const ToleranceConfig &tol) {
    HermitianEigen eig = eigh(rho.matrix());
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = eig.values.size() - 1; i >= 0; i--) {
        if (eig.values(i) > tol.psd_clip) {
            kept.push_back(i);
        }
    }
    FactoredState out;
    out.w.resize(rho.dim(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); c++) {
        out.w.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(kept[c]) * std::sqrt(eig.values(kept[c]));
    }
    return out;
}

FactoredState FactoredState::product(std::span<const FactoredState> factors) {
    if (factors.empty()) {
        throw std::invalid_argument("product of zero factored states");
    }
    FactoredState out = factors[0];
    for (std::size_t i = 1; i < factors.size(); i++) {
        out.w = kron(out.w, factors[i].w);
    }
    return out;
}

double root_fidelity(const FactoredState &rho, const Matrix &sigma, const ToleranceConfig &tol) {
    if (sigma.rows() != rho.w.rows()) {
        throw std::invalid_argument("fidelity of states with different dimensions");
    }
    return std::min(trace_norm(rho.w.adjoint() * psd_factor(sigma, tol)), 1.0);
}

double root_fidelity(const FactoredState &rho, const FactoredState &sigma) {
    if (sigma.w.rows() != rho.w.rows()) {
        throw std::invalid_argument("fidelity of states with different dimensions");
    }
    return std::min(trace_norm(rho.w.adjoint() * sigma.w), 1.0);
}

std::vector<double> spectrum(const DensityMatrix &rho, const ToleranceConfig &tol) {
    RealVector values = eigvalsh(rho.matrix());
    std::vector<double> out;
    out.reserve(values.size());
    double total = 0;
    for (double lam : values) {
        double clipped = std::clamp(lam, 0.0, 1.0);
        if (clipped < tol.psd_clip) {
            clipped = 0.0;
        }
        out.push_back(clipped);
        total += clipped;
    }
    for (double &x : out) {
        x /= total;
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

Matrix random_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, M_SQRT1_2);
    Matrix z(dim, dim);
    for (int i = 0; i < dim; i++) {
        for (int j = 0; j < dim; j++) {
            z(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; j++) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        q.col(j) *= mag > 0 ? d / mag : Complex(1.0);
    }
    return q;
}

Vector random_pure_vector(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; i++) {
        v(i) = Complex(normal(rng), normal(rng));
    }
    return v / v.norm();
}

DensityMatrix random_density(int dim, int rank, std::mt19937_64 &rng) {
    if (rank < 1 || rank > dim) {
        throw std::invalid_argument("random_density rank out of range");
    }
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> weights(static_cast<std::size_t>(rank));
    double total = 0;
    for (double &w : weights) {
        w = expo(rng);
        total += w;
    }
    Matrix u = random_unitary(dim, rng);
    Matrix m = Matrix::Zero(dim, dim);
    for (int k = 0; k < rank; k++) {
        m += (weights[static_cast<std::size_t>(k)] / total) * u.col(k) * u.col(k).adjoint();
    }
    Matrix herm = 0.5 * (m + m.adjoint());
    return DensityMatrix::assume_valid(herm / herm.trace().real());
}

}  // namespace qvlc
