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

// Small dense semidefinite programs over block-diagonal real symmetric
// variables, in standard form:
//
//     minimize    <C, X>
//     subject to  <A_i, X> = b_i,  i = 0..k-1
//                 X = diag(X_0, ..., X_{B-1}) >= 0
//
// with dual
//
//     maximize    b.y
//     subject to  sum_i y_i A_i + Z = C,  Z >= 0.
//
// Solved by an infeasible-start primal-dual path-following method using the
// HKM search direction and a Mehrotra predictor-corrector step.

#ifndef AUD_SDP_CORE_H
#define AUD_SDP_CORE_H

#include <vector>

#include <Eigen/Dense>

namespace aud::sdp_core {

/// One coefficient of a symmetric matrix. Only the upper triangle is listed
/// (row <= col); an off-diagonal entry stands for both (row, col) and
/// (col, row).
struct Entry {
    int block;
    int row;
    int col;
    double value;
};

struct Constraint {
    std::vector<Entry> entries;
    double rhs = 0;
};

struct Problem {
    std::vector<int> block_sizes;
    std::vector<Entry> objective;
    std::vector<Constraint> constraints;
};

enum class Status { kOptimal, kMaxIterations, kPrimalInfeasible, kNumericalFailure };

struct Options {
    int max_iterations = 500;
    double gap_tolerance = 1e-9;
    double feasibility_tolerance = 1e-9;
    /// Retry in long double when the double-precision run stalls.
    bool extended_fallback = true;
};

struct Result {
    Status status = Status::kNumericalFailure;
    std::vector<Eigen::MatrixXd> x;
    std::vector<Eigen::MatrixXd> z;
    Eigen::VectorXd y;
    double primal_objective = 0;
    double dual_objective = 0;
    double relative_gap = 0;
    double primal_infeasibility = 0;
    double dual_infeasibility = 0;
    int iterations = 0;
};

Result solve(const Problem &problem, const Options &options = {});

const char *status_name(Status status);

}  // namespace aud::sdp_core

#endif
