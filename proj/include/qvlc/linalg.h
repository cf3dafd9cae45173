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

#ifndef QVLC_LINALG_H_
#define QVLC_LINALG_H_

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qvlc/error.h"

namespace qvlc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct ToleranceConfig {
    /// Eigenvalues in [-psd_clip, 0) are treated as zero before sqrt/log.
    double psd_clip = 1e-12;
    double hermit_tol = 1e-10;
    double eq_tol = 1e-8;
};

/// Largest Hilbert-space dimension any module will materialize densely.
/// Tensor factors are ordered big-endian: in (C^d)^{(x)n} the basis index of
/// |x_1 ... x_n> is sum_j x_j d^(n-j), so factor 1 is the most significant digit.
struct ResourceLimits {
    std::size_t max_dimension = 1024;
};

/// Positive semidefinite, Hermitian, unit-trace matrix.
class DensityMatrix {
   public:
    DensityMatrix() = default;
    /// Validates all three invariants; throws std::invalid_argument otherwise.
    explicit DensityMatrix(Matrix m, const ToleranceConfig &tol = {});

    /// Skips the eigenvalue check. Only for results of operations that preserve
    /// validity (convex combinations, tensor products, partial traces).
    static DensityMatrix assume_valid(Matrix m);

    static DensityMatrix pure(const Vector &psi);
    static DensityMatrix diagonal(std::span<const double> probs);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix &matrix() const { return m_; }

    double purity() const;

   private:
    Matrix m_;
};

struct EnsembleItem {
    double prob;
    DensityMatrix state;
};

/// Finite i.i.d. source: probabilities over density matrices of a common dimension.
class Ensemble {
   public:
    Ensemble() = default;
    explicit Ensemble(std::vector<EnsembleItem> items);

    int dim() const { return items_.empty() ? 0 : items_.front().state.dim(); }
    std::size_t size() const { return items_.size(); }
    const std::vector<EnsembleItem> &items() const { return items_; }
    const EnsembleItem &operator[](std::size_t i) const { return items_[i]; }

   private:
    std::vector<EnsembleItem> items_;
};

struct HermitianEigen {
    RealVector values;  // ascending
    Matrix vectors;     // columns
};

/// Full eigendecomposition of a Hermitian matrix (lower triangle is read).
HermitianEigen eigh(const Matrix &m);
RealVector eigvalsh(const Matrix &m);

bool is_hermitian(const Matrix &m, double tol);

DensityMatrix average_state(const Ensemble &e);

/// Natural-log entropy of the spectrum; eigenvalues below psd_clip contribute 0.
double von_neumann_entropy(const DensityMatrix &rho, const ToleranceConfig &tol = {});

/// Principal square root. Throws std::invalid_argument if an eigenvalue is below -psd_clip.
Matrix sqrt_psd(const Matrix &m, const ToleranceConfig &tol = {});

/// Sum of singular values.
double trace_norm(const Matrix &m);

/// Tr|sqrt(rho) sqrt(sigma)|, computed as ||W^dag V||_1 from rho = W W^dag and
/// sigma = V V^dag. Eigenvalues at the rounding-noise level are dropped first.
double root_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma,
                     const ToleranceConfig &tol = {});

/// b(rho, sigma) = sqrt(1 - Tr|sqrt(rho) sqrt(sigma)|), in [0, 1].
double bures_distance(const DensityMatrix &rho, const DensityMatrix &sigma,
                      const ToleranceConfig &tol = {});

Matrix kron(const Matrix &a, const Matrix &b);
DensityMatrix tensor_product(std::span<const DensityMatrix> factors,
                             const ResourceLimits &limits = {});
DensityMatrix tensor_power(const DensityMatrix &rho, int n, const ResourceLimits &limits = {});

/// Tr_B of a matrix on C^dimA (x) C^dimB.
Matrix partial_trace_b(const Matrix &m, int dim_a, int dim_b);
DensityMatrix partial_trace_b(const DensityMatrix &rho, int dim_a, int dim_b);

/// Re Tr(a b) without forming the product.
double trace_product(const Matrix &a, const Matrix &b);

/// rho = W W^dagger with W of shape dim x rank. Lets fidelities against product
/// states be computed on the rank-sized support instead of the full space.
struct FactoredState {
    Matrix w;

    static FactoredState from(const DensityMatrix &rho, const ToleranceConfig &tol = {});
    /// Kronecker product of the factors, in the module-wide factor order.
    static FactoredState product(std::span<const FactoredState> factors);

    int dim() const { return static_cast<int>(w.rows()); }
    int rank() const { return static_cast<int>(w.cols()); }
};

/// Tr sqrt(sqrt(rho) sigma sqrt(rho)) for rho = W W^dagger; sigma is any PSD matrix.
double root_fidelity(const FactoredState &rho, const Matrix &sigma,
                     const ToleranceConfig &tol = {});

/// ||W^dag V||_1 for rho = W W^dag, sigma = V V^dag. Avoids square roots of
/// eigenvalues that are zero up to rounding.
double root_fidelity(const FactoredState &rho, const FactoredState &sigma);

/// Eigenvalues clipped to [0, 1] and normalized, sorted descending.
std::vector<double> spectrum(const DensityMatrix &rho, const ToleranceConfig &tol = {});

/// Haar-random unitary (QR of a complex Ginibre matrix with phase correction).
Matrix random_unitary(int dim, std::mt19937_64 &rng);
Vector random_pure_vector(int dim, std::mt19937_64 &rng);
/// Random state of the given rank: U diag(p) U^dagger with Dirichlet(1) weights.
DensityMatrix random_density(int dim, int rank, std::mt19937_64 &rng);

}  // namespace qvlc

#endif  // QVLC_LINALG_H_
