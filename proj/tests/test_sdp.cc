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
#include <random>

#include "aud/sdp.h"
#include "aud/state_ud.h"
#include "test_util.h"

namespace aud {
namespace {

using testing::pure_pair;
using testing::random_density;

Povm abstain(int dim, int m) {
    std::vector<ComplexMatrix> e(m + 1, ComplexMatrix::Zero(dim, dim));
    e[0] = ComplexMatrix::Identity(dim, dim);
    return Povm(e);
}

// Three-outcome POVM from a random isometry into C^(3 dim).
Povm random_povm(std::mt19937 &rng, int dim, int outcomes) {
    auto ch = testing::random_channel(rng, dim, outcomes);
    std::vector<ComplexMatrix> e;
    for (const auto &k : ch.kraus()) {
        e.push_back(k.adjoint() * k);
    }
    return Povm(e);
}

StateEnsemble random_ensemble(std::mt19937 &rng, int dim, int m) {
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<DensityMatrix> states;
    std::vector<double> priors;
    double total = 0;
    for (int n = 0; n < m; n++) {
        states.push_back(random_density(rng, dim));
        priors.push_back(u(rng));
        total += priors.back();
    }
    for (double &p : priors) p /= total;
    return StateEnsemble(states, priors);
}

TEST(PFailOf, AlwaysAbstainAndNeverAbstain) {
    std::mt19937 rng(1);
    auto ens = random_ensemble(rng, 2, 2);
    EXPECT_NEAR(p_fail_of(abstain(2, 2), ens), 1.0, 1e-12);
    std::vector<ComplexMatrix> e{ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)};
    EXPECT_NEAR(p_fail_of(Povm(e), ens), 0.0, 1e-12);
}

TEST(PFailOf, MatchesDirectTraces) {
    std::mt19937 rng(2);
    for (int k = 0; k < 10; k++) {
        auto ens = random_ensemble(rng, 3, 2);
        auto povm = random_povm(rng, 3, 3);
        double want = 0;
        for (int n = 0; n < 2; n++) {
            want += ens.prior(n) * (ens.state(n).mat() * povm.element(0)).trace().real();
        }
        EXPECT_NEAR(p_fail_of(povm, ens), want, 1e-12);
        auto errs = conditional_errors(povm, ens);
        for (int n = 0; n < 2; n++) {
            const auto &rho = ens.state(n).mat();
            double e = 1 - (rho * povm.element(n + 1)).trace().real() - (rho * povm.element(0)).trace().real();
            EXPECT_NEAR(errs[n], e, 1e-12);
        }
    }
}

TEST(ConditionalErrors, AbstainAndPerfectDiscrimination) {
    std::mt19937 rng(3);
    auto ens = random_ensemble(rng, 2, 2);
    for (double e : conditional_errors(abstain(2, 2), ens)) EXPECT_NEAR(e, 0.0, 1e-12);
    auto orth = pure_pair(0.0, 0.5);
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    for (double e : conditional_errors(Povm({ComplexMatrix::Zero(2, 2), p0, p1}), orth)) EXPECT_NEAR(e, 0.0, 1e-12);
    EXPECT_THROW(conditional_errors(abstain(3, 2), ens), ValidationError);
    EXPECT_THROW(p_fail_of(abstain(2, 3), ens), ValidationError);
}

TEST(Povm, Validation) {
    ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    EXPECT_NO_THROW(Povm({half, half}));
    EXPECT_THROW(Povm({half, half, half}), ValidationError);
    ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
    neg(1, 1) = -0.5;
    EXPECT_THROW(Povm({neg, ComplexMatrix::Identity(2, 2) - neg}), ValidationError);
}

TEST(ToleranceVector, RejectsOutOfRange) {
    EXPECT_THROW(ToleranceVector({0.1, 1.1}, Flavor::kUnrescaled), ValidationError);
    EXPECT_THROW(ToleranceVector({-0.1}, Flavor::kRescaled), ValidationError);
}

TEST(SolveMinFail, ExactUdOfPurePair) {
    auto sol = solve_min_fail(pure_pair(0.3, 0.5), ToleranceVector({0, 0}, Flavor::kRescaled));
    EXPECT_EQ(sol.status, SolverStatus::kOptimal);
    EXPECT_NEAR(sol.p_fail, 0.3, 1e-7);
}

TEST(SolveMinFail, HelstromToleranceGivesZero) {
    const double e = (1 - std::sqrt(0.91)) / 2;
    auto sol = solve_min_fail(pure_pair(0.3, 0.5), ToleranceVector({e, e}, Flavor::kRescaled));
    EXPECT_NEAR(sol.p_fail, 0.0, 1e-6);
}

TEST(SolveMinFail, PerHypothesisConditioningMatchesG) {
    SolveOptions opts;
    opts.conditioning = Conditioning::kPerHypothesis;
    for (double xi : {0.2, 0.5, 0.8}) {
        for (double p : {0.25, 0.5}) {
            for (auto [ep, eq] : {std::pair{0.0, 0.05}, std::pair{0.1, 0.02}, std::pair{0.03, 0.03}}) {
                auto sol = solve_min_fail(pure_pair(xi, p), ToleranceVector({ep, eq}, Flavor::kRescaled), opts);
                EXPECT_NEAR(sol.p_fail, g(xi, ep, eq, p, 1 - p), 1e-5) << xi << " " << p << " " << ep << " " << eq;
            }
        }
    }
}

TEST(SolveMinFail, EnsembleConditioningAtUnequalPriors) {
    auto sol = solve_min_fail(pure_pair(0.5, 1.0 / 3), ToleranceVector({0.1, 0.02}, Flavor::kRescaled));
    EXPECT_NEAR(sol.p_fail, 0.0857786, 1e-6);
}

TEST(SolveMinFail, ReportedValueMatchesPovmAndConstraints) {
    std::mt19937 rng(4);
    for (int k = 0; k < 5; k++) {
        auto ens = random_ensemble(rng, 3, 3);
        ToleranceVector tol({0.05, 0.1, 0.02}, Flavor::kUnrescaled);
        auto sol = solve_min_fail(ens, tol);
        EXPECT_EQ(sol.status, SolverStatus::kOptimal);
        EXPECT_NEAR(p_fail_of(sol.povm, ens), sol.p_fail, 1e-7);
        auto errs = conditional_errors(sol.povm, ens);
        for (int n = 0; n < 3; n++) {
            EXPECT_NEAR(errs[n], sol.per_hypothesis_error[n], 1e-7);
            EXPECT_LE(errs[n], tol.values[n] + 1e-7);
        }
    }
}

TEST(SolveMinFail, RandomGuessToleranceGivesZero) {
    std::mt19937 rng(5);
    auto ens = random_ensemble(rng, 2, 2);
    ToleranceVector tol({ens.prior(1), ens.prior(0)}, Flavor::kUnrescaled);
    EXPECT_NEAR(solve_min_fail(ens, tol).p_fail, 0.0, 1e-7);
}

TEST(SolveMinFail, IdenticalStatesNeedFullAbstention) {
    std::mt19937 rng(6);
    auto rho = random_density(rng, 2);
    auto sol = solve_min_fail(StateEnsemble({rho, rho}, {0.5, 0.5}), ToleranceVector({0, 0}, Flavor::kUnrescaled));
    EXPECT_NEAR(sol.p_fail, 1.0, 1e-7);
}

TEST(SolveMinFail, MonotoneInTolerance) {
    std::mt19937 rng(7);
    auto ens = random_ensemble(rng, 2, 2);
    double prev = 2;
    for (double e : {0.0, 0.01, 0.03, 0.06, 0.1, 0.2}) {
        double v = solve_min_fail(ens, ToleranceVector({e, e}, Flavor::kUnrescaled)).p_fail;
        EXPECT_LE(v, prev + 1e-7);
        prev = v;
    }
}

TEST(SolveMinFail, Validation) {
    std::mt19937 rng(8);
    auto ens = random_ensemble(rng, 2, 2);
    EXPECT_THROW(solve_min_fail(ens, ToleranceVector({0.1}, Flavor::kUnrescaled)), ValidationError);
    auto big = random_ensemble(rng, 33, 2);
    EXPECT_THROW(solve_min_fail(big, ToleranceVector({0.1, 0.1}, Flavor::kUnrescaled)), ValidationError);
}

TEST(MixPovms, SingleAndAverage) {
    std::mt19937 rng(9);
    auto a = random_povm(rng, 2, 3), b = random_povm(rng, 2, 3);
    std::vector<Povm> one{a};
    std::vector<double> w1{1.0};
    auto same = mix_povms(one, w1);
    for (int k = 0; k < 3; k++) EXPECT_LT((same.element(k) - a.element(k)).norm(), 1e-14);
    std::vector<Povm> two{a, b};
    std::vector<double> w2{0.5, 0.5};
    auto avg = mix_povms(two, w2);
    for (int k = 0; k < 3; k++) {
        EXPECT_LT((avg.element(k) - 0.5 * (a.element(k) + b.element(k))).norm(), 1e-14);
    }
}

TEST(MixPovms, LinearInFailAndErrors) {
    std::mt19937 rng(10);
    auto ens = random_ensemble(rng, 2, 2);
    auto a = random_povm(rng, 2, 3), b = random_povm(rng, 2, 3);
    std::vector<Povm> two{a, b};
    std::vector<double> w{0.3, 0.7};
    auto mix = mix_povms(two, w);
    EXPECT_NEAR(p_fail_of(mix, ens), 0.3 * p_fail_of(a, ens) + 0.7 * p_fail_of(b, ens), 1e-12);
    auto ea = conditional_errors(a, ens), eb = conditional_errors(b, ens), em = conditional_errors(mix, ens);
    for (int n = 0; n < 2; n++) EXPECT_NEAR(em[n], 0.3 * ea[n] + 0.7 * eb[n], 1e-12);
}

TEST(MixPovms, Validation) {
    std::mt19937 rng(11);
    auto a = random_povm(rng, 2, 3), b = random_povm(rng, 2, 2);
    std::vector<Povm> two{a, b};
    std::vector<double> w{0.5, 0.5};
    EXPECT_THROW(mix_povms(two, w), ValidationError);
    std::vector<Povm> aa{a, a};
    std::vector<double> bad{0.5, 0.6};
    EXPECT_THROW(mix_povms(aa, bad), ValidationError);
    std::vector<double> neg{1.5, -0.5};
    EXPECT_THROW(mix_povms(aa, neg), ValidationError);
}

}  // namespace
}  // namespace aud
