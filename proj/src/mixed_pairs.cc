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
#include <limits>
#include <numbers>

#include "aud/state_ud.h"

namespace aud {

namespace {

void check_unit(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(std::string(what) + " must lie in [0, 1]");
    }
}

void check_theta(double theta) {
    if (!(theta >= std::numbers::pi / 2 - 1e-12 && theta <= std::numbers::pi + 1e-12)) {
        throw ValidationError("theta must lie in [pi/2, pi]");
    }
}

ComplexMatrix basis_projector(int dim, int k) {
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    out(k, k) = 1;
    return out;
}

double cross(const HullPoint &o, const HullPoint &a, const HullPoint &b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

StateEnsemble depolarizing_pair_states(double eta) {
    check_unit(eta, "eta");
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<DensityMatrix> states;
    for (double sign : {1.0, -1.0}) {
        ComplexVector psi = ComplexVector::Zero(4);
        psi(0) = s;
        psi(3) = sign * s;
        ComplexMatrix rho = eta * psi * psi.adjoint() + (1.0 - eta) / 4.0 * ComplexMatrix::Identity(4, 4);
        states.emplace_back(rho);
    }
    return StateEnsemble(std::move(states), {0.5, 0.5});
}

double depolarizing_pair_fidelity(double eta) {
    check_unit(eta, "eta");
    return (1.0 - eta + std::sqrt(std::max(0.0, 1.0 + 2.0 * eta - 3.0 * eta * eta))) / 2.0;
}

// Outside span{|00>, |11>} the states are both (1 - eta) I/4; inside, the
// second stage uses phi_pm = cos(theta/2)|00> +/- sin(theta/2)|11>.
SymmetricPoint depolarizing_pair_strategy(double eta, double a, double theta) {
    check_unit(eta, "eta");
    check_unit(a, "a");
    check_theta(theta);
    const double s2 = std::pow(std::sin(theta / 2), 2);
    const double cot2 = std::pow(std::cos(theta / 2), 2) / s2;
    const double p_fail = a * (1.0 - eta) / 2.0 + (1.0 + eta) / 4.0 * (1.0 - cot2);
    const double p_err = (1.0 - eta) * (1.0 - a) / 4.0 + ((1.0 + eta) / 2.0 - eta * std::sin(theta)) / (4.0 * s2);
    return {std::clamp(p_err, 0.0, 1.0), std::clamp(p_fail, 0.0, 1.0)};
}

Povm depolarizing_pair_povm(double eta, double a, double theta) {
    check_unit(eta, "eta");
    check_unit(a, "a");
    check_theta(theta);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const ComplexMatrix outside = basis_projector(4, 1) + basis_projector(4, 2);
    ComplexMatrix pi0 = a * outside + (1.0 - c * c / (s * s)) * basis_projector(4, 0);
    std::vector<ComplexMatrix> elements{pi0};
    for (double sign : {1.0, -1.0}) {
        ComplexVector phi = ComplexVector::Zero(4);
        phi(0) = c;
        phi(3) = sign * s;
        elements.push_back((1.0 - a) / 2.0 * outside + phi * phi.adjoint() / (2.0 * s * s));
    }
    return Povm(std::move(elements));
}

StateEnsemble erasure_pair_states(double eta, double xi, double prior_p) {
    check_unit(eta, "eta");
    check_unit(xi, "overlap");
    check_unit(prior_p, "prior");
    ComplexVector p = ComplexVector::Zero(3), q = ComplexVector::Zero(3);
    p(0) = 1;
    q(0) = xi;
    q(1) = std::sqrt(1.0 - xi * xi);
    const ComplexMatrix erased = basis_projector(3, 2);
    std::vector<DensityMatrix> states{DensityMatrix(eta * p * p.adjoint() + (1.0 - eta) * erased),
                                      DensityMatrix(eta * q * q.adjoint() + (1.0 - eta) * erased)};
    return StateEnsemble(std::move(states), {prior_p, 1.0 - prior_p});
}

OperatingPoint erasure_pair_strategy(double eta, double xi, double prior_p, double a,
                                     const ToleranceVector &eps_prime) {
    check_unit(eta, "eta");
    check_unit(xi, "overlap");
    check_unit(prior_p, "prior");
    check_unit(a, "a");
    if (eps_prime.values.size() != 2) {
        throw ValidationError("need two inner tolerances");
    }
    const double prior_q = 1.0 - prior_p;
    double inner_fail = 0, inner_p = 0, inner_q = 0;
    if (eps_prime.flavor == Flavor::kRescaled) {
        // The optimal pure-pair measurement errs on each state at most eps^R
        // times its own conclusive probability.
        auto sol = solve_binary_pure({xi, prior_p, prior_q, eps_prime.values[0], eps_prime.values[1]});
        inner_fail = sol.p_fail;
        inner_p = eps_prime.values[0] * std::pow(std::cos(sol.beta_tilde), 2);
        inner_q = eps_prime.values[1] * std::pow(std::cos(sol.delta_tilde), 2);
    } else {
        ComplexVector p = ComplexVector::Zero(2), q = ComplexVector::Zero(2);
        p(0) = 1;
        q(0) = xi;
        q(1) = std::sqrt(1.0 - xi * xi);
        StateEnsemble pair({DensityMatrix::unchecked(p * p.adjoint()), DensityMatrix::unchecked(q * q.adjoint())},
                           {prior_p, prior_q});
        auto sol = solve_min_fail(pair, eps_prime);
        inner_fail = sol.p_fail;
        inner_p = eps_prime.values[0];
        inner_q = eps_prime.values[1];
    }
    const double p_fail = eta * inner_fail + (1.0 - eta) * a;
    const double ep = (1.0 - eta) * (1.0 - a) * prior_q + eta * inner_p;
    const double eq = (1.0 - eta) * (1.0 - a) * prior_p + eta * inner_q;
    return {ToleranceVector({std::clamp(ep, 0.0, 1.0), std::clamp(eq, 0.0, 1.0)}, Flavor::kUnrescaled),
            std::clamp(p_fail, 0.0, 1.0)};
}

std::vector<HullPoint> lower_convex_hull(std::vector<HullPoint> points) {
    std::sort(points.begin(), points.end(),
              [](const HullPoint &a, const HullPoint &b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<HullPoint> hull;
    for (const auto &pt : points) {
        if (!hull.empty() && hull.back().x == pt.x) {
            continue;
        }
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) {
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    return hull;
}

double hull_value(std::span<const HullPoint> hull, double x) {
    if (hull.empty() || x < hull.front().x) {
        return std::numeric_limits<double>::infinity();
    }
    double best = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < hull.size(); k++) {
        if (hull[k].x <= x) {
            best = std::min(best, hull[k].y);
        }
        if (k + 1 < hull.size() && hull[k].x <= x && x < hull[k + 1].x) {
            double t = (x - hull[k].x) / (hull[k + 1].x - hull[k].x);
            best = std::min(best, hull[k].y + t * (hull[k + 1].y - hull[k].y));
        }
    }
    return best;
}

std::vector<HullPoint> depolarizing_upper_hull(double eta, int a_steps, int theta_steps) {
    if (a_steps < 2 || theta_steps < 2) {
        throw ValidationError("need at least two steps per parameter");
    }
    std::vector<HullPoint> pts{{0.0, 1.0}};
    for (int i = 0; i < a_steps; i++) {
        const double a = static_cast<double>(i) / (a_steps - 1);
        for (int j = 0; j < theta_steps; j++) {
            const double theta = std::numbers::pi / 2 * (1.0 + static_cast<double>(j) / (theta_steps - 1));
            auto sp = depolarizing_pair_strategy(eta, a, theta);
            pts.push_back({sp.eps, sp.p_fail});
        }
    }
    return lower_convex_hull(std::move(pts));
}

std::vector<HullPoint> erasure_upper_hull(double eta, double xi, int a_steps, int t_steps) {
    if (a_steps < 2 || t_steps < 2) {
        throw ValidationError("need at least two steps per parameter");
    }
    std::vector<HullPoint> pts{{0.0, 1.0}};
    for (int i = 0; i < a_steps; i++) {
        const double a = static_cast<double>(i) / (a_steps - 1);
        for (int j = 0; j < t_steps; j++) {
            const double t = 0.5 * j / (t_steps - 1);
            auto op = erasure_pair_strategy(eta, xi, 0.5, a, ToleranceVector({t, t}, Flavor::kRescaled));
            pts.push_back({std::max(op.eps.values[0], op.eps.values[1]), op.p_fail});
        }
    }
    return lower_convex_hull(std::move(pts));
}

}  // namespace aud
