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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aud/state_ud.h"
#include "test_util.h"

namespace aud {
namespace {

using testing::pure_pair;

const double kHelstromEps = (1 - std::sqrt(0.91)) / 2;

TEST(EpsPq, Examples) {
    auto z = eps_pq(0, 0);
    EXPECT_EQ(z.minus, 0);
    EXPECT_EQ(z.plus, 0);
    auto s = eps_pq(0.2, 0.2);
    EXPECT_NEAR(s.minus, 0, 1e-15);
    EXPECT_NEAR(s.plus, 2 * std::sqrt(0.2 * 0.8), 1e-15);
    auto a = eps_pq(0.1, 0.2);
    EXPECT_NEAR(a.minus, std::abs(std::sqrt(0.08) - std::sqrt(0.18)), 1e-15);
    EXPECT_NEAR(a.plus, std::sqrt(0.08) + std::sqrt(0.18), 1e-15);
    EXPECT_NEAR(a.minus, 0.141421, 1e-6);
    EXPECT_NEAR(a.plus, 0.707107, 1e-6);
    EXPECT_THROW(eps_pq(-0.1, 0.2), ValidationError);
}

TEST(G, ExactUdEndpoint) { EXPECT_NEAR(g(0.3, 0, 0, 0.5, 0.5), 0.3, 1e-8); }

TEST(G, HelstromEndpoint) { EXPECT_NEAR(g(0.3, kHelstromEps, kHelstromEps, 0.5, 0.5), 0.0, 1e-6); }

TEST(G, SolutionIsConsistent) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 200; k++) {
        double p = u(rng);
        BinaryPureProblem pr{u(rng), p, 1 - p, 0.3 * u(rng), 0.3 * u(rng)};
        auto sol = solve_binary_pure(pr);
        double sb = std::sin(sol.beta_tilde), sd = std::sin(sol.delta_tilde);
        EXPECT_NEAR(sol.p_fail, p * sb * sb + (1 - p) * sd * sd, 1e-9);
        if (sol.p_fail > 0) {
            double lhs = sb * sd + sol.eps_plus * std::cos(sol.beta_tilde) * std::cos(sol.delta_tilde);
            EXPECT_GE(lhs, pr.xi - 1e-9);
        }
        EXPECT_LE(sol.eps_minus, sol.eps_plus);
    }
}

// Brute-force grid over both angles as an independent optimizer.
TEST(G, MatchesBruteForceGrid) {
    for (double xi : {0.3, 0.7}) {
        for (double p : {0.3, 0.5}) {
            for (auto [ep, eq] : {std::pair{0.0, 0.0}, std::pair{0.05, 0.01}, std::pair{0.02, 0.1}}) {
                const double plus = eps_pq(ep, eq).plus;
                double best = 1;
                const int n = 2000;
                for (int i = 0; i <= n; i++) {
                    double b = std::numbers::pi / 2 * i / n;
                    // smallest feasible d on this grid
                    for (int j = 0; j <= n; j++) {
                        double d = std::numbers::pi / 2 * j / n;
                        if (std::sin(b) * std::sin(d) + plus * std::cos(b) * std::cos(d) >= xi) {
                            best = std::min(best, p * std::pow(std::sin(b), 2) + (1 - p) * std::pow(std::sin(d), 2));
                            break;
                        }
                    }
                }
                double v = g(xi, ep, eq, p, 1 - p);
                EXPECT_LE(v, best + 1e-9);
                EXPECT_NEAR(v, best, 3e-3);
            }
        }
    }
}

TEST(G, MonotoneInToleranceAndOverlap) {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 300; k++) {
        double xi = u(rng), p = u(rng), ep = u(rng), eq = u(rng), d = 0.05 * u(rng);
        double base = g(xi, ep, eq, p, 1 - p);
        EXPECT_LE(g(xi, std::min(1.0, ep + d), eq, p, 1 - p), base + 1e-9);
        EXPECT_LE(g(xi, ep, std::min(1.0, eq + d), p, 1 - p), base + 1e-9);
        EXPECT_GE(g(std::min(1.0, xi + d), ep, eq, p, 1 - p), base - 1e-9);
    }
}

TEST(G, RejectsInvalidProblems) {
    EXPECT_THROW(g(1.2, 0, 0, 0.5, 0.5), ValidationError);
    EXPECT_THROW(g(0.3, 0, 0, 0.5, 0.6), ValidationError);
    EXPECT_THROW(g(0.3, 0, 1.5, 0.5, 0.5), ValidationError);
}

TEST(H, Examples) {
    EXPECT_NEAR(h(0.3, 0, 0, 0.5, 0.5), 0.3, 1e-12);
    // eps_plus = 0.6 exceeds the overlap: the raw value is negative.
    EXPECT_NEAR(h(0.3, 0.1, 0.1, 0.5, 0.5), 0.0, 1e-15);
    const double plus = 2 * std::sqrt(0.01 * 0.99);
    EXPECT_NEAR(h(0.3, 0.01, 0.01, 0.5, 0.5), 1 - 0.7 / (1 - plus), 1e-12);
    EXPECT_THROW(h(0.3, 0.5, 0.5, 0.5, 0.5), ValidationError);
}

TEST(H, BelowGAndTightAtEqualPriors) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 2000; k++) {
        double xi = u(rng), p = u(rng), ep = 0.5 * u(rng), eq = 0.5 * u(rng);
        if (effective_eps_plus(ep, eq) >= 1) continue;
        EXPECT_LE(h(xi, ep, eq, p, 1 - p), g(xi, ep, eq, p, 1 - p) + 1e-8);
        EXPECT_NEAR(h(xi, ep, eq, 0.5, 0.5), g(xi, ep, eq, 0.5, 0.5), 1e-8);
    }
}

TEST(RescaledToUnrescaled, Examples) {
    ToleranceVector r({0.1, 0.2}, Flavor::kRescaled);
    auto same = rescaled_to_unrescaled(r, 0);
    EXPECT_EQ(same.values, r.values);
    EXPECT_EQ(same.flavor, Flavor::kUnrescaled);
    auto zero = rescaled_to_unrescaled(ToleranceVector({0, 0}, Flavor::kRescaled), 0.4);
    EXPECT_EQ(zero.values, (std::vector<double>{0, 0}));
    auto s = rescaled_to_unrescaled(r, 0.3);
    EXPECT_NEAR(s.values[0], 0.07, 1e-15);
    EXPECT_NEAR(s.values[1], 0.14, 1e-15);
    EXPECT_THROW(rescaled_to_unrescaled(r, 1.0), ValidationError);
    EXPECT_THROW(rescaled_to_unrescaled(ToleranceVector({0.1}, Flavor::kUnrescaled), 0.1), ValidationError);
}

TEST(UnrescaledCurve, Endpoints) {
    auto curve = unrescaled_curve(0.3, 0.5, 0.5, 201);
    ASSERT_FALSE(curve.empty());
    EXPECT_EQ(curve.front().eps.values, (std::vector<double>{0, 0}));
    EXPECT_NEAR(curve.front().p_fail, 0.3, 1e-8);
    bool zero_near_helstrom = false;
    for (const auto &pt : curve) {
        if (pt.p_fail == 0 && std::abs(pt.eps.values[0] - kHelstromEps) < 5e-3 &&
            std::abs(pt.eps.values[1] - kHelstromEps) < 5e-3) {
            zero_near_helstrom = true;
        }
    }
    EXPECT_TRUE(zero_near_helstrom);
}

TEST(UnrescaledCurve, EnvelopeIsMonotone) {
    auto curve = unrescaled_curve(0.4, 1.0 / 3, 2.0 / 3, 101);
    for (const auto &a : curve) {
        for (const auto &b : curve) {
            if (a.eps.values[0] <= b.eps.values[0] && a.eps.values[1] <= b.eps.values[1]) {
                EXPECT_GE(a.p_fail, b.p_fail - 1e-12);
            }
        }
    }
}

// Midpoints of envelope points are checked against the exact un-rescaled
// bound, which the envelope samples.
TEST(UnrescaledCurve, EnvelopeIsConvexAtEqualPriors) {
    auto curve = unrescaled_curve(0.3, 0.5, 0.5, 101);
    std::mt19937 rng(4);
    std::uniform_int_distribution<size_t> pick(0, curve.size() - 1);
    for (int k = 0; k < 300; k++) {
        const auto &a = curve[pick(rng)];
        const auto &b = curve[pick(rng)];
        double mp = 0.5 * (a.eps.values[0] + b.eps.values[0]), mq = 0.5 * (a.eps.values[1] + b.eps.values[1]);
        double mid = unrescaled_lower_bound(0.3, 0.5, 0.5, mp, mq).value;
        EXPECT_LE(mid, 0.5 * (a.p_fail + b.p_fail) + 1e-6);
    }
}

TEST(HelstromBinary, Examples) {
    EXPECT_NEAR(helstrom_binary(pure_pair(0.0, 0.5)), 0.0, 1e-12);
    EXPECT_NEAR(helstrom_binary(pure_pair(0.3, 0.5)), (1 - std::sqrt(0.91)) / 2, 1e-12);
    EXPECT_NEAR(helstrom_binary(pure_pair(0.3, 0.5)), 0.0230304, 1e-7);
    EXPECT_NEAR(helstrom_binary(depolarizing_pair_states(0.6)), 0.2, 1e-12);
}

TEST(FidelityLowerBounds, PureStatesMatchSdp) {
    SolveOptions opts;
    opts.conditioning = Conditioning::kPerHypothesis;
    for (double p : {0.5, 0.3}) {
        auto ens = pure_pair(0.45, p);
        auto b = fidelity_lower_bounds(ens.state(0), ens.state(1), p, 1 - p, 0.04, 0.01);
        auto sol = solve_min_fail(ens, ToleranceVector({0.04, 0.01}, Flavor::kRescaled), opts);
        EXPECT_NEAR(b.lb1, sol.p_fail, 1e-5);
        EXPECT_GE(b.lb1, b.lb2 - 1e-12);
    }
}

TEST(FidelityLowerBounds, MixedPairs) {
    auto dp = depolarizing_pair_states(0.6);
    auto b = fidelity_lower_bounds(dp.state(0), dp.state(1), 0.5, 0.5, 0, 0);
    EXPECT_NEAR(b.lb2, 0.729150, 1e-6);
    EXPECT_NEAR(b.lb1, b.lb2, 1e-8);
    auto er = erasure_pair_states(0.6, 0.3);
    auto c = fidelity_lower_bounds(er.state(0), er.state(1), 0.5, 0.5, 0, 0);
    EXPECT_NEAR(c.lb1, 0.58, 1e-8);
}

TEST(FidelityLowerBounds, BelowRescaledSdpForMixedStates) {
    std::mt19937 rng(5);
    SolveOptions opts;
    opts.conditioning = Conditioning::kPerHypothesis;
    for (int k = 0; k < 5; k++) {
        auto a = testing::random_density(rng, 2), b = testing::random_density(rng, 2);
        StateEnsemble ens({a, b}, {0.5, 0.5});
        auto lb = fidelity_lower_bounds(a, b, 0.5, 0.5, 0.02, 0.05);
        auto sol = solve_min_fail(ens, ToleranceVector({0.02, 0.05}, Flavor::kRescaled), opts);
        EXPECT_LE(lb.lb1, sol.p_fail + 1e-6);
    }
}

TEST(UnrescaledLowerBound, InversionRelationHolds) {
    for (double f : {0.3, 0.73, 0.95}) {
        for (auto [ep, eq] : {std::pair{0.0, 0.0}, std::pair{0.02, 0.05}, std::pair{0.1, 0.1}}) {
            for (double p : {0.5, 0.3}) {
                auto b = unrescaled_lower_bound(f, p, 1 - p, ep, eq);
                EXPECT_GE((1 - b.value) * b.eps_r_p, ep - 1e-9);
                EXPECT_GE((1 - b.value) * b.eps_r_q, eq - 1e-9);
                EXPECT_NEAR(b.value, g(f, b.eps_r_p, b.eps_r_q, p, 1 - p), 1e-9);
            }
        }
    }
}

TEST(UnrescaledLowerBound, ExactForPurePairs) {
    // For pure states the bound is the true minimum: at eps^U = (1 - g) eps^R
    // the SDP returns g itself.
    for (double t : {0.0, 0.01, 0.02}) {
        double gv = g(0.3, t, t, 0.5, 0.5);
        double eu = (1 - gv) * t;
        EXPECT_NEAR(symmetric_unrescaled_lower_bound(0.3, eu), gv, 1e-7);
        auto sol = solve_min_fail(pure_pair(0.3, 0.5), ToleranceVector({eu, eu}, Flavor::kUnrescaled));
        EXPECT_NEAR(sol.p_fail, gv, 1e-5);
    }
}

TEST(ContinuityBounds, ZeroDeviationCollapses) {
    auto ens = depolarizing_pair_states(0.6);
    std::vector<double> delta{0, 0};
    auto b = continuity_bounds(ens, ToleranceVector({0.05, 0.05}, Flavor::kUnrescaled), delta);
    double v = solve_min_fail(ens, ToleranceVector({0.05, 0.05}, Flavor::kUnrescaled)).p_fail;
    EXPECT_NEAR(b.lower, v, 1e-7);
    EXPECT_NEAR(b.upper, v, 1e-7);
}

TEST(ContinuityBounds, ContainsPerturbedValue) {
    std::mt19937 rng(6);
    for (int k = 0; k < 5; k++) {
        auto a = testing::random_density(rng, 2), b = testing::random_density(rng, 2);
        StateEnsemble ens({a, b}, {0.4, 0.6});
        const double lam = 0.05;
        auto depol = [&](const DensityMatrix &r) {
            return DensityMatrix((1 - lam) * r.mat() + lam * ComplexMatrix::Identity(2, 2) / 2);
        };
        StateEnsemble primed({depol(a), depol(b)}, {0.4, 0.6});
        std::vector<double> delta{trace_norm(a.mat() - primed.state(0).mat()),
                                  trace_norm(b.mat() - primed.state(1).mat())};
        ToleranceVector eps({0.08, 0.05}, Flavor::kUnrescaled);
        auto bounds = continuity_bounds(primed, eps, delta);
        double truth = solve_min_fail(ens, eps).p_fail;
        EXPECT_GE(truth, bounds.lower - 1e-6);
        EXPECT_LE(truth, bounds.upper + 1e-6);
    }
}

TEST(ContinuityBounds, RescaledAndVacuous) {
    auto ens = pure_pair(0.3, 0.5);
    std::vector<double> delta{0.01, 0.01};
    ToleranceVector eps({0.02, 0.02}, Flavor::kRescaled);
    double ref = solve_min_fail(ens, eps).p_fail;
    auto b = continuity_bounds(ens, eps, delta, ref);
    EXPECT_LE(b.lower, ref + 1e-7);
    EXPECT_EQ(b.upper, 1.0);
    std::vector<double> big{1.5, 1.5};
    EXPECT_THROW(continuity_bounds(ens, eps, big, 0.5), VacuousBoundError);
    EXPECT_THROW(continuity_bounds(ens, eps, delta), ValidationError);
    std::vector<double> neg{-0.1, 0.0};
    EXPECT_THROW(continuity_bounds(ens, eps, neg, 0.1), ValidationError);
}

TEST(DepolarizingPair, States) {
    auto one = depolarizing_pair_states(1.0);
    EXPECT_NEAR(fidelity(one.state(0), one.state(1)), 0.0, 1e-7);
    auto zero = depolarizing_pair_states(0.0);
    EXPECT_NEAR(fidelity(zero.state(0), zero.state(1)), 1.0, 1e-10);
    auto mid = depolarizing_pair_states(0.6);
    EXPECT_NEAR(fidelity(mid.state(0), mid.state(1)), depolarizing_pair_fidelity(0.6), 1e-9);
    EXPECT_NEAR(depolarizing_pair_fidelity(0.6), 0.729150, 1e-6);
}

TEST(DepolarizingPair, StrategyMatchesItsPovm) {
    auto ens = depolarizing_pair_states(0.6);
    for (double a : {0.0, 0.3, 1.0}) {
        for (double theta : {std::numbers::pi / 2, 2.0, 2.8, std::numbers::pi}) {
            auto pt = depolarizing_pair_strategy(0.6, a, theta);
            auto povm = depolarizing_pair_povm(0.6, a, theta);
            EXPECT_NEAR(p_fail_of(povm, ens), pt.p_fail, 1e-8);
            for (double e : conditional_errors(povm, ens)) EXPECT_NEAR(e, pt.eps, 1e-8);
        }
    }
    EXPECT_THROW(depolarizing_pair_strategy(0.6, 0.5, 1.0), ValidationError);
}

TEST(DepolarizingPair, StrategyEndpoints) {
    auto h = depolarizing_pair_strategy(0.6, 0.0, std::numbers::pi / 2);
    EXPECT_NEAR(h.p_fail, 0.0, 1e-12);
    EXPECT_NEAR(h.eps, 0.2, 1e-12);
    auto full = depolarizing_pair_strategy(0.6, 1.0, std::numbers::pi);
    EXPECT_NEAR(full.p_fail, 0.4 / 2 + 1.6 / 4, 1e-12);
    EXPECT_NEAR(full.eps, (0.8 - 0.0) / 4, 1e-12);
}

TEST(ErasurePair, States) {
    auto pure = erasure_pair_states(1.0, 0.3);
    EXPECT_NEAR(fidelity(pure.state(0), pure.state(1)), 0.3, 1e-8);
    auto same = erasure_pair_states(0.0, 0.3);
    EXPECT_NEAR(fidelity(same.state(0), same.state(1)), 1.0, 1e-10);
    auto mid = erasure_pair_states(0.6, 0.3);
    EXPECT_NEAR(fidelity(mid.state(0), mid.state(1)), 0.58, 1e-8);
}

TEST(ErasurePair, StrategyEndpoints) {
    auto ud = erasure_pair_strategy(0.6, 0.3, 0.5, 1.0, ToleranceVector({0, 0}, Flavor::kRescaled));
    EXPECT_NEAR(ud.p_fail, 0.58, 1e-8);
    EXPECT_NEAR(ud.eps.values[0], 0.0, 1e-12);
    auto udu = erasure_pair_strategy(0.6, 0.3, 0.5, 1.0, ToleranceVector({0, 0}, Flavor::kUnrescaled));
    EXPECT_NEAR(udu.p_fail, 0.58, 1e-6);
    auto hel = erasure_pair_strategy(0.6, 0.3, 0.5, 0.0, ToleranceVector({kHelstromEps, kHelstromEps}, Flavor::kRescaled));
    EXPECT_NEAR(hel.p_fail, 0.0, 1e-6);
}

// The erasure strategy is a real measurement, so its point must be feasible:
// the SDP at its tolerance does at least as well.
TEST(ErasurePair, StrategyIsAchievable) {
    auto ens = erasure_pair_states(0.6, 0.3);
    for (double a : {0.0, 0.5}) {
        for (double t : {0.0, 0.02, 0.1}) {
            auto pt = erasure_pair_strategy(0.6, 0.3, 0.5, a, ToleranceVector({t, t}, Flavor::kRescaled));
            auto sol = solve_min_fail(ens, pt.eps);
            EXPECT_LE(sol.p_fail, pt.p_fail + 1e-6);
        }
    }
}

TEST(Hull, LowerHullAndValue) {
    std::vector<HullPoint> pts{{0, 1}, {0.5, 0.8}, {1, 0}, {0.5, 0.2}, {0.2, 0.9}};
    auto hull = lower_convex_hull(pts);
    ASSERT_EQ(hull.size(), 3u);
    EXPECT_NEAR(hull_value(hull, 0.25), 0.6, 1e-12);
    EXPECT_NEAR(hull_value(hull, 2.0), 0.0, 1e-12);
    EXPECT_TRUE(std::isinf(hull_value(hull, -0.1)));
}

TEST(Hull, DepolarizingReachesHelstrom) {
    auto hull = depolarizing_upper_hull(0.6);
    EXPECT_NEAR(hull_value(hull, 0.2), 0.0, 1e-9);
    EXPECT_GT(hull_value(hull, 0.199), 0.0);
    EXPECT_NEAR(hull_value(hull, 0.0), 1.0, 1e-12);
}

TEST(Hull, ErasureUpperMeetsLowerAtZero) {
    auto hull = erasure_upper_hull(0.6, 0.3);
    EXPECT_NEAR(hull_value(hull, 0.0), 0.58, 1e-9);
    for (double e = 0; e <= 0.3; e += 0.01) {
        EXPECT_GE(hull_value(hull, e), symmetric_unrescaled_lower_bound(0.58, e) - 1e-6);
    }
}

TEST(ToleranceLattice, ConservativeRounding) {
    ToleranceLattice lat(10);
    lat.add_max(0.25, 0.25, 0.5, 1);
    lat.add_max(0.31, 0.5, 0.7, 2);
    lat.add_min(0.25, 0.25, 0.4, 3);
    lat.finalize();
    // 0.25 floors to cell 2, so it only answers queries at or below 0.2.
    EXPECT_EQ(lat.best_beyond(0.2, 0.2).tag, 2);
    EXPECT_EQ(lat.best_beyond(0.25, 0.25).tag, 2);
    EXPECT_EQ(lat.best_beyond(0.35, 0.2).tag, -1);
    // 0.25 ceils to cell 3, so queries need at least 0.3.
    EXPECT_EQ(lat.best_within(0.29, 0.29).tag, -1);
    EXPECT_EQ(lat.best_within(0.3, 0.3).tag, 3);
}

}  // namespace
}  // namespace aud
