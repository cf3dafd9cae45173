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

// Compression of the A half of shared bipartite states. Codes act as
// E (x) I_B^{(x)n}; errors are Bures errors of the joint state.
//
// Joint n-copy states are kept in A^n B^n factor order. The product of n
// pair states comes out in (AB)^n order and is moved over by
// reorder_permutation.

#ifndef QVLC_ENTANGLED_H_
#define QVLC_ENTANGLED_H_

#include <vector>

#include "qvlc/classical.h"
#include "qvlc/expansion.h"
#include "qvlc/fixed_code.h"
#include "qvlc/linalg.h"
#include "qvlc/varlen_code.h"

namespace qvlc {

class BipartiteState {
   public:
    BipartiteState() = default;
    BipartiteState(int dim_a, int dim_b, DensityMatrix state);
    /// |psi> with psi[a * dim_b + b] amplitudes.
    static BipartiteState pure(int dim_a, int dim_b, const Vector &psi);

    int dim_a() const { return dim_a_; }
    int dim_b() const { return dim_b_; }
    const DensityMatrix &state() const { return state_; }
    bool is_pure(double tol = 1e-10) const;
    DensityMatrix reduced_a() const;

   private:
    int dim_a_ = 0;
    int dim_b_ = 0;
    DensityMatrix state_;
};

struct BipartiteItem {
    double prob;
    BipartiteState state;
};

class BipartiteEnsemble {
   public:
    BipartiteEnsemble() = default;
    explicit BipartiteEnsemble(std::vector<BipartiteItem> items);

    int dim_a() const { return items_.front().state.dim_a(); }
    int dim_b() const { return items_.front().state.dim_b(); }
    std::size_t size() const { return items_.size(); }
    const std::vector<BipartiteItem> &items() const { return items_; }

    /// Same probabilities, states Tr_B rho.
    Ensemble reduced_a() const;
    /// Same probabilities, joint states on C^{dA dB}.
    Ensemble joint() const;

   private:
    std::vector<BipartiteItem> items_;
};

/// Eigenvalues of Tr_B of the average state, descending.
ProbVector reduced_spectrum(const BipartiteEnsemble &e);

/// perm[x] = index in A^n B^n order of basis index x in (AB)^n order.
std::vector<int> reorder_permutation(int n, int dim_a, int dim_b);
Matrix reorder_rows(const Matrix &m, const std::vector<int> &perm);
Matrix reorder(const Matrix &m, const std::vector<int> &perm);

/// Average Bures error of (D o E) (x) I_B^{(x)n} over the i.i.d. expansion.
/// Pure pair states use their Schmidt matrices; otherwise the joint state is
/// formed densely and (dA dB)^n must fit the dimension cap.
Estimate local_fixed_error(const FixedLengthCode &code, const BipartiteEnsemble &e,
                           const ExpansionOptions &opts = {});

/// exact <= 2(1 - Tr P (Tr_B rhobar)^{(x)n}) <= 2 (n+d)^{4d} exp(-n E(a, R)) with
/// a = reduced_spectrum.
ErrorChain local_fixed_error_chain(const FixedLengthCode &code, const BipartiteEnsemble &e,
                                   const ExpansionOptions &opts = {});

/// Report of a partition code acting on A. Outcome probabilities and the
/// exact error use only Tr_B of the states; the definitional error is computed
/// on the joint space. Bounds use a = reduced_spectrum.
VarlenReport local_varlen_report(const PartitionCode &code, const BipartiteEnsemble &e,
                                 const VarlenReportOptions &opts);

/// Joint-space definitional error of a partition code acting on A.
Estimate local_varlen_error_definitional(const PartitionCode &code, const BipartiteEnsemble &e,
                                         const ExpansionOptions &opts = {});

struct TraceIdentity {
    double lhs = 0;  // Tr (P (x) I) |phi><phi|^{(x)n}, joint space
    double rhs = 0;  // Tr P (Tr_B |phi><phi|)^{(x)n}, A space
};

TraceIdentity reduced_trace_identity_check(const RateProjector &p, const BipartiteState &phi, int n,
                                           const ResourceLimits &limits = {});

/// H(Tr_B phi); rejects mixed input.
double entanglement_entropy(const BipartiteState &phi, const ToleranceConfig &tol = {});

}  // namespace qvlc

#endif  // QVLC_ENTANGLED_H_
