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

#include "aud/sdp.h"

#include <algorithm>
#include <cmath>

#include "aud/sdp_core.h"

namespace aud {

namespace {

constexpr double kPovmTolerance = 1e-8;
constexpr double kZeroEigenvalue = 1e-9;

void check_dims(const Povm &povm, const StateEnsemble &ens) {
    if (povm.dim() != ens.dim()) {
        throw ValidationError("POVM and ensemble dimensions differ");
    }
    if (povm.size() != ens.size() + 1) {
        throw ValidationError("POVM needs one element per hypothesis plus the inconclusive one");
    }
}

double real_trace(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a.cwiseProduct(b.transpose())).sum().real();
}

// Upper-triangle entries of R(h) * scale, where R(A + iB) = [[A, -B], [B, A]].
void append_realified(const ComplexMatrix &h, double scale, int block, std::vector<sdp_core::Entry> &out) {
    const int d = static_cast<int>(h.rows());
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            double re = scale * h(r, c).real();
            double im = scale * h(r, c).imag();
            if (r <= c && re != 0) {
                out.push_back({block, r, c, re});
                out.push_back({block, r + d, c + d, re});
            }
            if (im != 0) {
                out.push_back({block, r, c + d, -im});
            }
        }
    }
}

ComplexMatrix unrealify(const Eigen::MatrixXd &x, int d) {
    ComplexMatrix out(d, d);
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            double re = 0.5 * (x(r, c) + x(r + d, c + d));
            double im = 0.5 * (x(r + d, c) - x(r, c + d));
            out(r, c) = Complex(re, im);
        }
    }
    return 0.5 * (out + out.adjoint());
}

}  // namespace

const char *flavor_name(Flavor flavor) { return flavor == Flavor::kUnrescaled ? "U" : "R"; }

const char *solver_status_name(SolverStatus status) {
    switch (status) {
        case SolverStatus::kOptimal:
            return "optimal";
        case SolverStatus::kMaxIterations:
            return "max-iterations";
        case SolverStatus::kInfeasibleCertified:
            return "infeasible-certified";
    }
    return "unknown";
}

ToleranceVector::ToleranceVector(std::vector<double> v, Flavor f) : values(std::move(v)), flavor(f) {
    for (double e : values) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw ValidationError("tolerances must lie in [0, 1]");
        }
    }
}

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.size() < 2) {
        throw ValidationError("a POVM needs at least two elements");
    }
    const auto d = elements_.front().rows();
    if (d == 0) {
        throw ValidationError("POVM elements must be non-empty");
    }
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (const auto &e : elements_) {
        if (e.rows() != d || e.cols() != d) {
            throw ValidationError("POVM elements must be square with a common dimension");
        }
        if (!all_finite(e) || !is_hermitian(e, kPovmTolerance)) {
            throw ValidationError("POVM element is not Hermitian");
        }
        if (hermitian_eigen(e).values.minCoeff() < -kPovmTolerance) {
            throw ValidationError("POVM element is not positive semi-definite");
        }
        total += e;
    }
    if ((total - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kPovmTolerance) {
        throw ValidationError("POVM elements do not sum to the identity");
    }
}

Povm Povm::unchecked(std::vector<ComplexMatrix> elements) { return Povm(std::move(elements), NoCheck{}); }

double p_fail_of(const Povm &povm, const StateEnsemble &ens) {
    check_dims(povm, ens);
    return real_trace(ens.average(), povm.element(0));
}

std::vector<double> conditional_errors(const Povm &povm, const StateEnsemble &ens) {
    check_dims(povm, ens);
    std::vector<double> out;
    for (int n = 0; n < ens.size(); n++) {
        const auto &rho = ens.state(n).mat();
        out.push_back(1.0 - real_trace(rho, povm.element(n + 1)) - real_trace(rho, povm.element(0)));
    }
    return out;
}

DiscriminationSolution solve_min_fail(const StateEnsemble &ens, const ToleranceVector &tol,
                                      const SolveOptions &options) {
    const int d = ens.dim();
    const int m = ens.size();
    if (d > kMaxSolverDim) {
        throw ValidationError("state dimension exceeds the solver limit of 32");
    }
    if (static_cast<int>(tol.values.size()) != m) {
        throw ValidationError("need one tolerance per hypothesis");
    }

    // A zero tolerance forces every other guess Pi_k (k != 0, n) onto ker rho_n,
    // and the interior of the feasible set is empty. Restricting those blocks
    // to the common kernel up front keeps the interior-point method well posed
    // and makes constraint n hold identically.
    std::vector<ComplexMatrix> basis(m + 1, ComplexMatrix::Identity(d, d));
    for (int n = 0; n < m; n++) {
        if (tol.values[n] > 0) {
            continue;
        }
        for (int k = 1; k <= m; k++) {
            if (k == n + 1 || basis[k].cols() == 0) {
                continue;
            }
            // Kernel of V^dag rho_n V inside the current range V.
            auto sub = hermitian_eigen(basis[k].adjoint() * ens.state(n).mat() * basis[k]);
            int keep = 0;
            while (keep < sub.values.size() && sub.values[keep] <= kZeroEigenvalue) {
                keep++;
            }
            basis[k] = basis[k] * sub.vectors.leftCols(keep);
        }
    }

    std::vector<ComplexMatrix> elements(m + 1);
    elements[0] = ComplexMatrix::Identity(d, d);
    for (int k = 1; k <= m; k++) {
        elements[k] = ComplexMatrix::Zero(d, d);
    }
    std::vector<int> block_of(m + 1, -1);
    sdp_core::Problem problem;
    for (int k = 0; k <= m; k++) {
        if (basis[k].cols() > 0) {
            block_of[k] = static_cast<int>(problem.block_sizes.size());
            problem.block_sizes.push_back(2 * static_cast<int>(basis[k].cols()));
        }
    }
    auto compress = [&](int k, const ComplexMatrix &h) -> ComplexMatrix {
        return basis[k].cols() == d ? h : ComplexMatrix(basis[k].adjoint() * h * basis[k]);
    };

    sdp_core::Result res;
    if (problem.block_sizes.size() > 1) {
        const ComplexMatrix sigma = ens.average();
        append_realified(sigma, 0.5, 0, problem.objective);
        for (int n = 0; n < m; n++) {
            const double eps = tol.values[n];
            if (eps <= 0) {
                continue;
            }
            const ComplexMatrix &rho = ens.state(n).mat();
            ComplexMatrix k0 = rho;
            if (tol.flavor == Flavor::kRescaled) {
                k0 = options.conditioning == Conditioning::kEnsemble ? ComplexMatrix(rho - eps * sigma)
                                                                     : ComplexMatrix((1.0 - eps) * rho);
            }
            sdp_core::Constraint c;
            if (block_of[n + 1] >= 0) {
                append_realified(compress(n + 1, rho), 0.5, block_of[n + 1], c.entries);
            }
            append_realified(k0, 0.5, 0, c.entries);
            c.entries.push_back({static_cast<int>(problem.block_sizes.size()), 0, 0, -1.0});
            problem.block_sizes.push_back(1);
            c.rhs = 1.0 - eps;
            problem.constraints.push_back(std::move(c));
        }

        // sum_k Pi_k = I, one constraint per element of a Hermitian basis E,
        // written as sum_k tr(R(E_k) X_k) = 2 tr(E).
        auto add_identity_constraint = [&](const ComplexMatrix &e, double rhs) {
            sdp_core::Constraint c;
            for (int k = 0; k <= m; k++) {
                if (block_of[k] >= 0) {
                    append_realified(compress(k, e), 1.0, block_of[k], c.entries);
                }
            }
            c.rhs = rhs;
            problem.constraints.push_back(std::move(c));
        };
        for (int a = 0; a < d; a++) {
            ComplexMatrix e = ComplexMatrix::Zero(d, d);
            e(a, a) = 1;
            add_identity_constraint(e, 2.0);
        }
        for (int a = 0; a < d; a++) {
            for (int b = a + 1; b < d; b++) {
                ComplexMatrix e = ComplexMatrix::Zero(d, d);
                e(a, b) = 1;
                e(b, a) = 1;
                add_identity_constraint(e, 0.0);
                e(a, b) = Complex(0, 1);
                e(b, a) = Complex(0, -1);
                add_identity_constraint(e, 0.0);
            }
        }

        sdp_core::Options core_opts;
        core_opts.max_iterations = options.max_iterations;
        core_opts.gap_tolerance = options.gap_tolerance;
        res = sdp_core::solve(problem, core_opts);
        for (int k = 0; k <= m; k++) {
            if (block_of[k] < 0) {
                continue;
            }
            const int r = static_cast<int>(basis[k].cols());
            ComplexMatrix y = unrealify(res.x[block_of[k]], r);
            elements[k] = r == d ? y : ComplexMatrix(basis[k] * y * basis[k].adjoint());
        }
    } else {
        // Only Pi_0 = I remains feasible.
        res.status = sdp_core::Status::kOptimal;
    }
    Povm povm = Povm::unchecked(std::move(elements));

    SolverStatus status = SolverStatus::kMaxIterations;
    const double accept = 1e-7;
    if (res.status == sdp_core::Status::kOptimal ||
        (res.relative_gap <= accept && res.primal_infeasibility <= accept && res.dual_infeasibility <= accept)) {
        status = SolverStatus::kOptimal;
    } else if (res.status == sdp_core::Status::kPrimalInfeasible) {
        status = SolverStatus::kInfeasibleCertified;
    }
    double p_fail = std::clamp(p_fail_of(povm, ens), 0.0, 1.0);
    auto errors = conditional_errors(povm, ens);
    return DiscriminationSolution{p_fail, std::move(povm), std::move(errors), tol.flavor, status, res.relative_gap,
                                  res.iterations};
}

Povm mix_povms(std::span<const Povm> povms, std::span<const double> weights) {
    if (povms.empty() || povms.size() != weights.size()) {
        throw ValidationError("need one weight per POVM");
    }
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw ValidationError("mixing weights must be non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError("mixing weights must sum to 1");
    }
    const auto &first = povms.front();
    std::vector<ComplexMatrix> out(first.size(), ComplexMatrix::Zero(first.dim(), first.dim()));
    for (size_t i = 0; i < povms.size(); i++) {
        if (povms[i].size() != first.size() || povms[i].dim() != first.dim()) {
            throw ValidationError("POVMs to mix must have the same shape");
        }
        for (int k = 0; k < first.size(); k++) {
            out[k] += weights[i] * povms[i].element(k);
        }
    }
    return Povm(std::move(out));
}

}  // namespace aud
