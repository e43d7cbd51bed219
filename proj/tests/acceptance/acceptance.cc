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

// Acceptance checks. Prints one PASS/FAIL line per criterion with the
// measured quantities and wall time, and exits non-zero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "aud/channel_ud.h"
#include "aud/sdp.h"
#include "aud/state_ud.h"
#include "property_checks.h"

namespace aud {
namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Verdict pure_endpoints() {
    const double zero = g(0.3, 0, 0, 0.5, 0.5);
    const double e = (1 - std::sqrt(0.91)) / 2;
    const double hel = g(0.3, e, e, 0.5, 0.5);
    return {std::abs(zero - 0.3) <= 1e-6 && std::abs(hel) <= 1e-6,
            fmt("g(0.3;0,0)=%.9f g(0.3;%.7f,%.7f)=%.2e", zero, e, e, hel)};
}

Verdict sdp_matches_g() {
    const double xis[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    const double eps[] = {0.0, 0.01, 0.03, 0.06, 0.1};
    const double priors[] = {0.3, 0.5, 0.7};
    SolveOptions per;
    per.conditioning = Conditioning::kPerHypothesis;
    double worst = 0, worst_ensemble = 0;
    int n = 0, not_optimal = 0;
    for (double xi : xis) {
        for (double ep : eps) {
            for (double eq : eps) {
                for (double p : priors) {
                    auto ens = testing::pure_pair(xi, p);
                    ToleranceVector tol({ep, eq}, Flavor::kRescaled);
                    auto sol = solve_min_fail(ens, tol, per);
                    const double gv = g(xi, ep, eq, p, 1 - p);
                    worst = std::max(worst, std::abs(sol.p_fail - gv));
                    not_optimal += sol.status != SolverStatus::kOptimal;
                    if (p != 0.5) {
                        worst_ensemble = std::max(worst_ensemble, std::abs(solve_min_fail(ens, tol).p_fail - gv));
                    }
                    n++;
                }
            }
        }
    }
    return {worst <= 1e-5, fmt("%d points, max |SDP_R - g| = %.2e (per-hypothesis conditioning, %d non-optimal); "
                               "info: ensemble conditioning at p!=1/2 deviates up to %.2e",
                               n, worst, not_optimal, worst_ensemble)};
}

Verdict fidelities() {
    auto dp = depolarizing_pair_states(0.6);
    const double f_closed = depolarizing_pair_fidelity(0.6);
    const double f_dp = fidelity(dp.state(0), dp.state(1));
    auto er = erasure_pair_states(0.6, 0.3);
    const double f_er = fidelity(er.state(0), er.state(1));
    const double f_ad = amplitude_damping_choi_fidelity(0.9, 0.8);
    auto ad = amplitude_damping_pair(0.9, 0.8);
    const double f_ad_num = fidelity(choi(ad.channels[0]), choi(ad.channels[1]));
    const bool ok = std::abs(f_closed - 0.729150) <= 1e-6 && std::abs(f_dp - 0.729150) <= 1e-6 &&
                    std::abs(f_er - 0.58) <= 1e-6 && std::abs(f_ad - 0.994975) <= 1e-6 &&
                    std::abs(f_ad_num - 0.994975) <= 1e-6;
    return {ok, fmt("depolarizing %.8f (closed) %.8f (matrices); erasure %.8f; AD %.8f (closed) %.8f (Choi)", f_closed,
                    f_dp, f_er, f_ad, f_ad_num)};
}

Verdict mixed_ordering() {
    const int points = 50;
    const double eps_max = 0.3;
    auto dp = depolarizing_pair_states(0.6);
    auto er = erasure_pair_states(0.6, 0.3);
    const double f_dp = fidelity(dp.state(0), dp.state(1)), f_er = fidelity(er.state(0), er.state(1));
    const auto hull_dp = depolarizing_upper_hull(0.6), hull_er = erasure_upper_hull(0.6, 0.3);
    double min_gap = 1;
    for (int k = 0; k < points; k++) {
        const double e = eps_max * k / (points - 1);
        min_gap = std::min(min_gap, hull_value(hull_dp, e) - symmetric_unrescaled_lower_bound(f_dp, e));
        min_gap = std::min(min_gap, hull_value(hull_er, e) - symmetric_unrescaled_lower_bound(f_er, e));
    }
    const double ub0 = hull_value(hull_er, 0), lb0 = symmetric_unrescaled_lower_bound(f_er, 0);
    double zero_at = 1;
    for (const auto &pt : hull_dp) {
        if (pt.y <= 1e-12) {
            zero_at = std::min(zero_at, pt.x);
        }
    }
    const bool ok = min_gap >= -1e-6 && ub0 - lb0 <= 1e-3 && std::abs(ub0 - 0.58) <= 1e-3 &&
                    std::abs(lb0 - 0.58) <= 1e-3 && std::abs(zero_at - 0.2) <= 1e-3;
    return {ok, fmt("min(UB-LB) over 2x%d points = %.2e; erasure at 0: UB %.6f LB %.6f; depolarizing UB hits 0 at "
                    "eps=%.6f",
                    points, min_gap, ub0, lb0, zero_at)};
}

Verdict properties() {
    constexpr double slack = 2e-6;
    const double conv = testing::convexity_violation(1, 50);
    const double dpi = testing::data_processing_violation(2, 20);
    const double cont = testing::continuity_violation(3, 20);
    const double hg = testing::h_below_g_violation(4, 10000);
    const double rt = testing::round_trip_violation(5, 100);
    const bool ok = conv <= slack && dpi <= slack && cont <= slack && hg <= slack && rt <= slack;
    return {ok, fmt("worst violations: convexity %.2e (50), data processing %.2e (20), continuity %.2e (20), "
                    "h-g %.2e (10^4), round trip %.2e (100)",
                    conv, dpi, cont, hg, rt)};
}

std::vector<double> eps_axis(int n, double max) {
    std::vector<double> out;
    for (int k = 0; k < n; k++) out.push_back(max * k / (n - 1));
    return out;
}

Verdict channel_bounds() {
    auto pair = pauli_gate_pair(0.6);
    const double f_choi = fidelity(choi(pair.channels[0]), choi(pair.channels[1]));
    auto epair = erasure_channel_pair(0.6, 0.3);
    const double f_echoi = fidelity(choi(epair.channels[0]), choi(epair.channels[1]));
    double u_increase = -1, state_gap = 0, erasure_gap = 0;
    for (double e : eps_axis(31, 0.3)) {
        ToleranceVector eps({e, e}, Flavor::kUnrescaled);
        double prev = 2;
        for (int u = 1; u <= 3; u++) {
            const double v = lemma4_bound(f_choi, u, 1, 0, 0, 0.5, eps).value;
            u_increase = std::max(u_increase, v - prev);
            prev = v;
            if (u == 1) {
                state_gap = std::max(state_gap, std::abs(v - symmetric_unrescaled_lower_bound(f_choi, e)));
            }
            const double ce = classical_baseline_erasure(0.6, 0.3, u, eps).value;
            erasure_gap = std::max(erasure_gap, std::abs(ce - lemma4_bound(f_echoi, u, 1, 0, 0, 0.5, eps).value));
        }
    }
    const double fc = classical_pauli_fidelity(0.6);
    const bool ok = u_increase <= 0 && state_gap <= 1e-6 && std::abs(fc - 0.8) <= 1e-9 && erasure_gap <= 1e-9;
    return {ok, fmt("max increase in u %.2e; |u=1 - state bound| %.2e; classical Pauli F %.10f; "
                    "|classical - entangled erasure| %.2e",
                    u_increase, state_gap, fc, erasure_gap)};
}

Verdict amplitude_damping() {
    const double f = amplitude_damping_choi_fidelity(0.9, 0.8);
    const auto model = uniform_delta_model(2);
    const auto grid = eps_axis(16, 0.3);
    bool interior = false;
    std::string where;
    double u_increase = -1;
    std::vector<double> prev(grid.size(), 2);
    for (int u = 1; u <= 3; u++) {
        for (size_t k = 0; k < grid.size(); k++) {
            ToleranceVector eps({grid[k], grid[k]}, Flavor::kUnrescaled);
            auto fam = channel_bound_family(f, u, model, 0.5, eps, 1, 200);
            const auto best = *std::max_element(fam.begin(), fam.end(),
                                                [](const auto &a, const auto &b) { return a.value < b.value; });
            if (!interior && best.value > fam.front().value && best.value > fam.back().value) {
                interior = true;
                where = fmt("u=%d eps=%.3f M*=%d value %.6f vs %.6f (M=1) %.6f (M=200)", u, grid[k], best.ports,
                            best.value, fam.front().value, fam.back().value);
            }
            u_increase = std::max(u_increase, best.value - prev[k]);
            prev[k] = best.value;
        }
    }
    return {interior && u_increase <= 0,
            fmt("interior optimum: %s; max envelope increase in u %.2e", interior ? where.c_str() : "none",
                u_increase)};
}

}  // namespace
}  // namespace aud

int main() {
    using namespace aud;
    struct Criterion {
        const char *name;
        std::function<Verdict()> run;
        double budget_s;
    };
    const std::vector<Criterion> criteria{
        {"pure-state endpoints", pure_endpoints, 1},
        {"SDP vs analytic g", sdp_matches_g, 120},
        {"fidelities", fidelities, 1},
        {"mixed-state bound ordering", mixed_ordering, 300},
        {"property suites", properties, 600},
        {"channel bounds", channel_bounds, 120},
        {"amplitude damping optimum", amplitude_damping, 300},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v{false, ""};
        try {
            v = criteria[i].run();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= criteria[i].budget_s;
        const bool pass = v.pass && in_time;
        failures += !pass;
        std::printf("%s %zu %s: %s [%.2f s of %.0f s]\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    v.detail.c_str(), secs, criteria[i].budget_s);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
