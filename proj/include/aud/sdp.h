// Copyright 2026 The aud Authors
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

#ifndef AUD_SDP_H
#define AUD_SDP_H

#include <span>
#include <vector>

#include "aud/qmath.h"

namespace aud {

/// U: P_E|n <= eps_n.  R: the same error measured relative to the conclusive
/// probability.
enum class Flavor { kUnrescaled, kRescaled };

const char *flavor_name(Flavor flavor);

/// How flavor R normalizes the error. kEnsemble divides by the overall
/// conclusive probability 1 - P_F; kPerHypothesis divides by the conclusive
/// probability of the tested state, Tr[rho_n (I - Pi_0)].
enum class Conditioning { kEnsemble, kPerHypothesis };

struct ToleranceVector {
    ToleranceVector(std::vector<double> values, Flavor flavor);

    std::vector<double> values;
    Flavor flavor;
};

/// Elements Pi_0 (inconclusive), Pi_1, ..., Pi_m.
class Povm {
   public:
    explicit Povm(std::vector<ComplexMatrix> elements);
    static Povm unchecked(std::vector<ComplexMatrix> elements);

    int size() const { return static_cast<int>(elements_.size()); }
    int dim() const { return static_cast<int>(elements_.front().rows()); }
    const std::vector<ComplexMatrix> &elements() const { return elements_; }
    const ComplexMatrix &element(int k) const { return elements_[k]; }

   private:
    struct NoCheck {};
    Povm(std::vector<ComplexMatrix> elements, NoCheck) : elements_(std::move(elements)) {}
    std::vector<ComplexMatrix> elements_;
};

enum class SolverStatus { kOptimal, kMaxIterations, kInfeasibleCertified };

const char *solver_status_name(SolverStatus status);

struct DiscriminationSolution {
    double p_fail = 1;
    Povm povm;
    std::vector<double> per_hypothesis_error;
    Flavor flavor = Flavor::kUnrescaled;
    SolverStatus status = SolverStatus::kOptimal;
    double gap = 0;
    int iterations = 0;
};

struct SolveOptions {
    Conditioning conditioning = Conditioning::kEnsemble;
    int max_iterations = 500;
    double gap_tolerance = 1e-9;
};

inline constexpr int kMaxSolverDim = 32;

double p_fail_of(const Povm &povm, const StateEnsemble &ens);

/// P_E|n = 1 - Tr(rho_n Pi_n) - Tr(rho_n Pi_0) for each hypothesis.
std::vector<double> conditional_errors(const Povm &povm, const StateEnsemble &ens);

/// Minimum inconclusive probability subject to the tolerance constraints.
DiscriminationSolution solve_min_fail(const StateEnsemble &ens, const ToleranceVector &tol,
                                      const SolveOptions &options = {});

Povm mix_povms(std::span<const Povm> povms, std::span<const double> weights);

}  // namespace aud

#endif
