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

// Probability vectors, entropies, the overflow exponent
//   E(a, R) = inf { D(b||a) : H(b) >= R },
// and the closed-form bounds on rank, trace deficiency, coding error and
// overflow probability of the universal codes. All logarithms are natural.

#ifndef QVLC_CLASSICAL_H_
#define QVLC_CLASSICAL_H_

#include <span>
#include <string_view>
#include <vector>

namespace qvlc {

/// Non-negative entries summing to 1 within 1e-12.
class ProbVector {
   public:
    ProbVector() = default;
    explicit ProbVector(std::vector<double> probs);
    ProbVector(std::initializer_list<double> probs) : ProbVector(std::vector<double>(probs)) {}

    static ProbVector uniform(int d);

    int size() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
    std::span<const double> values() const { return p_; }

   private:
    std::vector<double> p_;
};

double shannon_entropy(std::span<const double> b);
inline double shannon_entropy(const ProbVector &b) { return shannon_entropy(b.values()); }

/// D(b||a); +infinity when supp(b) is not contained in supp(a).
double relative_entropy(std::span<const double> b, std::span<const double> a);
inline double relative_entropy(const ProbVector &b, const ProbVector &a) {
    return relative_entropy(b.values(), a.values());
}

enum class ExponentMethod { kFastPath, kGridOracle };
std::string_view to_string(ExponentMethod m);

struct ExponentResult {
    double value = 0;  // nats, possibly +infinity
    ProbVector argmin;
    ExponentMethod method = ExponentMethod::kFastPath;
};

struct GridOptions {
    /// Coarse simplex step; 0 selects the default for the dimension
    /// (1e-3 for d = 2, 5e-3 for d = 3, 2e-2 above).
    double step = 0;
    /// The oracle refines around the coarse optimum until the step is below this.
    double refine_to = 1e-9;
    /// |fast - oracle| above this makes overflow_exponent return the oracle.
    double agreement_tol = 1e-4;
};

double default_grid_step(int d);

/// Minimizer over the tilted family b ∝ a^beta, solved for H(b) = R by bisection.
ExponentResult overflow_exponent_fast(const ProbVector &a, double rate);

/// Reference value: exhaustive simplex grid followed by local grid refinement,
/// with every grid point pushed radially from the uniform point onto {H = R}.
/// The problem is convex (D convex, {H >= R} convex) so refinement around the
/// coarse optimum converges to the global one. Ties keep the first grid point.
ExponentResult overflow_exponent_grid(const ProbVector &a, double rate, const GridOptions &opts = {});

/// Fast path cross-checked against the grid oracle; the oracle wins on disagreement.
/// Requires 0 <= rate <= ln d.
ExponentResult overflow_exponent(const ProbVector &a, double rate, const GridOptions &opts = {});

struct ConstantCResult {
    double value = 0;
    ProbVector argmin;
    double step = 0;  // grid resolution used
};

/// min_b D(b||a) / (H(a) - H(b))^2 by simplex grid search, skipping |H(a) - H(b)| < 1e-6.
/// step = 0 selects 1e-4 for d = 2 and 5e-3 otherwise.
ConstantCResult constant_c(const ProbVector &a, double step = 0);

/// delta + ln((n+d)^{4d} / (floor(n delta) (ln(d)/delta + 1))). Requires floor(n delta) >= 1.
double f_overhead(int n, double delta, int d);

/// (n+d)^{4d}: the polynomial prefactor shared by every bound.
double poly_factor(int n, int d);

double rank_bound(int n, int d, double rate);
/// (n+d)^{4d} exp(-n E(a, R)).
double trace_bound(int n, int d, const ProbVector &a, double rate);
/// Twice trace_bound: bound on the fixed-length code's average error.
double fixed_error_bound(int n, int d, const ProbVector &a, double rate);
/// 1 - floor(n(delta - 2 delta'))/floor(n delta) * (1 - (n+d)^{4d} exp(-n C delta'^2))^{3/2}.
/// The base of the 3/2 power is clamped at 0. Requires 0 < 2 delta' < delta.
double varlen_error_bound(int n, int d, const ProbVector &a, double delta, double delta_prime);
/// Same, with C already computed.
double varlen_error_bound_with_c(int n, int d, double c, double delta, double delta_prime);
/// (n+d)^{4d} exp(-n E(a, R - f(n, delta)/n)); the shifted threshold is clamped below at 0,
/// and above ln d the exponent is infinite (bound 0).
double varlen_overflow_bound(int n, int d, const ProbVector &a, double delta, double rate);

}  // namespace qvlc

#endif  // QVLC_CLASSICAL_H_
