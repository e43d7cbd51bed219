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

#include <algorithm>
#include <cmath>

#include "aud/state_ud.h"

namespace aud {

namespace {

constexpr int kBisectionSteps = 200;

// Rescaled tolerance needed so that (1 - big_g) * eps_r reaches `target`.
double required(double target, double big_g) {
    if (target <= 0) {
        return 0.0;
    }
    return big_g >= 1.0 ? 1.0 : std::min(1.0, target / (1.0 - big_g));
}

}  // namespace

double helstrom_binary(const StateEnsemble &ens) {
    if (ens.size() != 2) {
        throw ValidationError("the Helstrom limit here needs exactly two hypotheses");
    }
    ComplexMatrix diff = ens.prior(0) * ens.state(0).mat() - ens.prior(1) * ens.state(1).mat();
    return std::clamp((1.0 - trace_norm(diff)) / 2.0, 0.0, 1.0);
}

FidelityBounds fidelity_lower_bounds(const DensityMatrix &rho_p, const DensityMatrix &rho_q, double prior_p,
                                     double prior_q, double eps_p, double eps_q) {
    const double f = std::min(1.0, fidelity(rho_p, rho_q));
    const double lb1 = g(f, eps_p, eps_q, prior_p, prior_q);
    const double lb2 = g_of_plus(f, effective_eps_plus(eps_p, eps_q), prior_p, prior_q, true);
    return {f, lb1, lb2};
}

// With G(e) the minimum at eps_plus = e, the implied tolerance of the best
// eps^R at level e is required(target, G(e)), whose effective eps_plus falls
// as e grows. The answer is G at the smallest e that covers it.
InvertedBound unrescaled_lower_bound(double fidelity, double prior_p, double prior_q, double eps_p, double eps_q,
                                     bool use_h) {
    if (!(eps_p >= 0) || !(eps_q >= 0)) {
        throw ValidationError("tolerances must be non-negative");
    }
    auto big_g = [&](double e) { return g_of_plus(fidelity, e, prior_p, prior_q, use_h); };
    auto at = [&](double e) {
        double gv = big_g(e);
        return InvertedBound{gv, required(eps_p, gv), required(eps_q, gv)};
    };
    auto covers = [&](const InvertedBound &b, double e) { return effective_eps_plus(b.eps_r_p, b.eps_r_q) <= e; };

    InvertedBound lo_b = at(0.0);
    if (covers(lo_b, 0.0)) {
        return lo_b;
    }
    double lo = 0.0, hi = 1.0;
    InvertedBound hi_b = at(1.0);
    for (int it = 0; it < kBisectionSteps && hi - lo > 1e-15; it++) {
        double mid = 0.5 * (lo + hi);
        InvertedBound b = at(mid);
        if (covers(b, mid)) {
            hi = mid;
            hi_b = b;
        } else {
            lo = mid;
        }
    }
    return hi_b;
}

double symmetric_unrescaled_lower_bound(double fidelity, double eps_u) {
    return unrescaled_lower_bound(fidelity, 0.5, 0.5, eps_u, eps_u, true).value;
}

ContinuityBounds continuity_bounds(const StateEnsemble &primed, const ToleranceVector &eps,
                                   std::span<const double> delta, double p_fail_reference,
                                   const SolveOptions &options) {
    const int m = primed.size();
    if (static_cast<int>(delta.size()) != m || static_cast<int>(eps.values.size()) != m) {
        throw ValidationError("need one deviation and one tolerance per hypothesis");
    }
    double weighted = 0;
    for (int n = 0; n < m; n++) {
        if (!(delta[n] >= 0)) {
            throw ValidationError("trace-norm deviations must be non-negative");
        }
        weighted += primed.prior(n) * delta[n];
    }
    const double half = weighted / 2.0;

    if (eps.flavor == Flavor::kUnrescaled) {
        std::vector<double> looser, tighter;
        bool tighter_ok = true;
        for (int n = 0; n < m; n++) {
            looser.push_back(std::min(1.0, eps.values[n] + delta[n]));
            tighter.push_back(eps.values[n] - delta[n]);
            tighter_ok = tighter_ok && tighter.back() >= 0;
        }
        double lower = solve_min_fail(primed, ToleranceVector(looser, Flavor::kUnrescaled), options).p_fail - half;
        double upper = 1.0;
        if (tighter_ok) {
            upper = solve_min_fail(primed, ToleranceVector(tighter, Flavor::kUnrescaled), options).p_fail + half;
        }
        return {std::clamp(lower, 0.0, 1.0), std::clamp(upper, 0.0, 1.0)};
    }

    if (std::isnan(p_fail_reference) || p_fail_reference < 0 || p_fail_reference > 1) {
        throw ValidationError("the rescaled bound needs the reference minimum in [0, 1]");
    }
    const double denom = 1.0 - p_fail_reference - half;
    if (denom <= 0) {
        throw VacuousBoundError("vacuous bound: reference minimum plus deviation reaches 1");
    }
    std::vector<double> shifted;
    for (int n = 0; n < m; n++) {
        shifted.push_back(std::min(1.0, (delta[n] + eps.values[n] * (1.0 - p_fail_reference)) / denom));
    }
    double lower = solve_min_fail(primed, ToleranceVector(shifted, Flavor::kRescaled), options).p_fail - half;
    return {std::clamp(lower, 0.0, 1.0), 1.0};
}

}  // namespace aud
