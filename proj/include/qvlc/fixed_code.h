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

// Universal fixed-length code at rate R:
//   encode(rho) = P rho P + Tr((I - P) rho) |u><u|,   decode = embedding,
// with P = P_{R,n} and |u> a fixed unit vector in range(P).

#ifndef QVLC_FIXED_CODE_H_
#define QVLC_FIXED_CODE_H_

#include <string>
#include <vector>

#include "qvlc/expansion.h"
#include "qvlc/linalg.h"
#include "qvlc/schur_weyl.h"

namespace qvlc {

class FixedLengthCode {
   public:
    explicit FixedLengthCode(RateProjector projector);
    static FixedLengthCode make(double rate, int n, int d, const ResourceLimits &limits = {});

    double rate() const { return projector_.rate; }
    int n() const { return projector_.n; }
    int d() const { return projector_.d; }
    const RateProjector &projector() const { return projector_; }

    /// Pad vector: P e_j / |P e_j| for the smallest basis index j with P e_j != 0.
    /// Range(P) always contains the symmetric subspace, so this is |0...0>.
    const Vector &pad_vector() const { return pad_; }
    int pad_basis_index() const { return pad_index_; }

   private:
    RateProjector projector_;
    Vector pad_;
    int pad_index_ = 0;
};

DensityMatrix encode(const FixedLengthCode &code, const DensityMatrix &rho_n);
/// Embedding; rejects inputs with support outside range(P) beyond 1e-10.
DensityMatrix decode(const FixedLengthCode &code, const DensityMatrix &sigma);

/// b^2(rho, decode(encode(rho))) for rho = W W^dagger, via the rank-sized support.
double sequence_error(const FixedLengthCode &code, const FactoredState &rho, const ToleranceConfig &tol = {});

/// Average Bures error over the i.i.d. expansion of the source.
Estimate average_error(const FixedLengthCode &code, const Ensemble &source, const ExpansionOptions &opts = {});

struct ErrorChain {
    Estimate exact;
    double two_one_minus_trace = 0;  // 2(1 - Tr rhobar^{(x)n} P)
    double rhs = 0;                  // 2 (n+d)^{4d} exp(-n E(a, R))
    bool ordered = false;            // exact <= middle <= rhs
    std::vector<std::string> diagnostics;
};

/// The three quantities and their ordering. A failed ordering is reported
/// through `ordered` and `diagnostics`, never thrown.
ErrorChain error_bound_chain(const FixedLengthCode &code, const Ensemble &source,
                             const ExpansionOptions &opts = {});

}  // namespace qvlc

#endif  // QVLC_FIXED_CODE_H_
