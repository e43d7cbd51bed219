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
#include <numbers>

#include "aud/kernels.h"
#include "aud/state_ud.h"

namespace aud {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr int kScanPoints = 160;
constexpr int kGoldenSteps = 80;

void check_unit(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(std::string(what) + " must lie in [0, 1]");
    }
}

void check_priors(double p, double q) {
    check_unit(p, "prior");
    check_unit(q, "prior");
    if (std::abs(p + q - 1.0) > 1e-12) {
        throw ValidationError("priors must sum to 1");
    }
}

}  // namespace

void BinaryPureProblem::validate() const {
    check_unit(xi, "overlap");
    check_priors(prior_p, prior_q);
    check_unit(eps_p, "tolerance");
    check_unit(eps_q, "tolerance");
}

EpsPair eps_pq(double eps_p, double eps_q) {
    check_unit(eps_p, "tolerance");
    check_unit(eps_q, "tolerance");
    double a = std::sqrt(eps_p * (1.0 - eps_q));
    double b = std::sqrt(eps_q * (1.0 - eps_p));
    return {std::abs(a - b), std::min(1.0, a + b)};
}

double effective_eps_plus(double eps_p, double eps_q) {
    // Errors may be anything up to the tolerances, and once eps_p + eps_q
    // reaches 1 some smaller pair gives overlap 1.
    return eps_p + eps_q >= 1.0 ? 1.0 : eps_pq(eps_p, eps_q).plus;
}

BinaryPureSolution solve_binary_pure(const BinaryPureProblem &pr) {
    pr.validate();
    const auto em = eps_pq(pr.eps_p, pr.eps_q).minus;
    auto sol = solve_binary_pure_plus(pr.xi, effective_eps_plus(pr.eps_p, pr.eps_q), pr.prior_p, pr.prior_q);
    sol.eps_minus = em;
    return sol;
}

BinaryPureSolution solve_binary_pure_plus(double xi, double ep, double prior_p, double prior_q) {
    check_unit(xi, "overlap");
    check_unit(ep, "eps_plus");
    check_priors(prior_p, prior_q);
    const BinaryPureProblem pr{xi, prior_p, prior_q, 0, 0};
    BinaryPureSolution sol{0.0, 0.0, 0.0, 0.0, ep};
    // Any overlap up to eps_plus is reachable by the inner measurement, so no
    // abstention is needed at all.
    if (xi <= ep) {
        return sol;
    }

    const double s2 = std::min(1.0, (xi * xi - ep * ep) / (1.0 - ep * ep));
    const double beta_lo = std::asin(std::sqrt(s2));
    // Smallest d with sin b sin d + ep cos b cos d >= xi. The left side is
    // r cos(d - phi), and ep cos b < xi always holds here.
    auto delta_star = [&](double b) {
        double sa = std::sin(b);
        double ca = ep * std::cos(b);
        double r = std::hypot(sa, ca);
        double phi = std::atan2(sa, ca);
        return std::clamp(phi - std::acos(std::min(1.0, xi / r)), 0.0, kHalfPi);
    };
    auto cost = [&](double b) {
        double sb = std::sin(b), sd = std::sin(delta_star(b));
        return pr.prior_p * sb * sb + pr.prior_q * sd * sd;
    };

    const double span = kHalfPi - beta_lo;
    int best = 0;
    double best_cost = cost(beta_lo);
    for (int k = 1; k < kScanPoints; k++) {
        double c = cost(beta_lo + span * k / (kScanPoints - 1));
        if (c < best_cost) {
            best_cost = c;
            best = k;
        }
    }
    double lo = beta_lo + span * std::max(0, best - 1) / (kScanPoints - 1);
    double hi = beta_lo + span * std::min(kScanPoints - 1, best + 1) / (kScanPoints - 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = cost(x1), f2 = cost(x2);
    for (int it = 0; it < kGoldenSteps && hi - lo > 1e-15; it++) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = cost(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = cost(x2);
        }
    }
    double b = f1 <= f2 ? x1 : x2;
    double c = std::min(f1, f2);
    if (best_cost < c) {
        b = beta_lo + span * best / (kScanPoints - 1);
        c = best_cost;
    }
    sol.beta_tilde = b;
    sol.delta_tilde = delta_star(b);
    double sb = std::sin(sol.beta_tilde), sd = std::sin(sol.delta_tilde);
    sol.p_fail = std::clamp(pr.prior_p * sb * sb + pr.prior_q * sd * sd, 0.0, 1.0);
    return sol;
}

double g_of_plus(double xi, double eps_plus, double prior_p, double prior_q, bool use_h) {
    if (!use_h) {
        return solve_binary_pure_plus(xi, eps_plus, prior_p, prior_q).p_fail;
    }
    check_unit(xi, "overlap");
    check_unit(eps_plus, "eps_plus");
    check_priors(prior_p, prior_q);
    if (eps_plus >= 1.0) {
        return 0.0;
    }
    return std::clamp(2.0 * std::sqrt(prior_p * prior_q) * (1.0 - (1.0 - xi) / (1.0 - eps_plus)), 0.0, 1.0);
}

double g(double xi, double eps_p, double eps_q, double prior_p, double prior_q) {
    return solve_binary_pure({xi, prior_p, prior_q, eps_p, eps_q}).p_fail;
}

double h(double xi, double eps_p, double eps_q, double prior_p, double prior_q) {
    check_unit(xi, "overlap");
    check_priors(prior_p, prior_q);
    const double ep = effective_eps_plus(eps_p, eps_q);
    if (ep >= 1.0) {
        throw ValidationError("h is undefined when eps_plus >= 1");
    }
    double raw = 2.0 * std::sqrt(prior_p * prior_q) * (1.0 - (1.0 - xi) / (1.0 - ep));
    return std::clamp(raw, 0.0, 1.0);
}

ToleranceVector rescaled_to_unrescaled(const ToleranceVector &eps_r, double p_fail) {
    if (eps_r.flavor != Flavor::kRescaled) {
        throw ValidationError("rescaled_to_unrescaled expects flavor R tolerances");
    }
    if (!(p_fail >= 0.0 && p_fail < 1.0)) {
        throw ValidationError("p_fail must lie in [0, 1) to convert tolerances");
    }
    std::vector<double> out;
    for (double e : eps_r.values) {
        out.push_back((1.0 - p_fail) * e);
    }
    return ToleranceVector(std::move(out), Flavor::kUnrescaled);
}

namespace {

using Cell = ToleranceLattice::Cell;

bool lower(const Cell &a, const Cell &b) { return a.value < b.value || (a.value == b.value && a.tag < b.tag); }
bool higher(const Cell &a, const Cell &b) { return a.value > b.value || (a.value == b.value && a.tag < b.tag); }

}  // namespace

ToleranceLattice::ToleranceLattice(int cells) : n_(cells) {
    if (cells < 1) {
        throw ValidationError("lattice needs at least one cell per axis");
    }
    const size_t size = static_cast<size_t>(n_ + 1) * (n_ + 1);
    min_.assign(size, {std::numeric_limits<double>::infinity(), -1});
    max_.assign(size, {-std::numeric_limits<double>::infinity(), -1});
}

// Min cells are indexed by ceil so that every point in cell c has tolerance
// <= c/n; max cells by floor so that every point in cell c has tolerance
// >= c/n.
void ToleranceLattice::add_min(double eps_p, double eps_q, double value, long tag) {
    if (eps_p < 0 || eps_q < 0 || eps_p > 1 || eps_q > 1) {
        return;
    }
    int i = static_cast<int>(std::ceil(eps_p * n_)), j = static_cast<int>(std::ceil(eps_q * n_));
    auto &cell = min_[static_cast<size_t>(i) * (n_ + 1) + j];
    if (lower({value, tag}, cell)) {
        cell = {value, tag};
    }
}

void ToleranceLattice::add_max(double eps_p, double eps_q, double value, long tag) {
    if (eps_p < 0 || eps_q < 0) {
        return;
    }
    int i = std::min(n_, static_cast<int>(std::floor(eps_p * n_)));
    int j = std::min(n_, static_cast<int>(std::floor(eps_q * n_)));
    auto &cell = max_[static_cast<size_t>(i) * (n_ + 1) + j];
    if (higher({value, tag}, cell)) {
        cell = {value, tag};
    }
}

void ToleranceLattice::merge(const ToleranceLattice &other) {
    if (other.n_ != n_) {
        throw ValidationError("cannot merge lattices of different sizes");
    }
    for (size_t k = 0; k < min_.size(); k++) {
        if (lower(other.min_[k], min_[k])) min_[k] = other.min_[k];
        if (higher(other.max_[k], max_[k])) max_[k] = other.max_[k];
    }
}

void ToleranceLattice::finalize() {
    const int w = n_ + 1;
    prefix_min_ = min_;
    suffix_max_ = max_;
    auto at = [w](std::vector<Cell> &v, int i, int j) -> Cell & { return v[static_cast<size_t>(i) * w + j]; };
    for (int i = 0; i < w; i++) {
        for (int j = 0; j < w; j++) {
            Cell &c = at(prefix_min_, i, j);
            if (i > 0 && lower(at(prefix_min_, i - 1, j), c)) c = at(prefix_min_, i - 1, j);
            if (j > 0 && lower(at(prefix_min_, i, j - 1), c)) c = at(prefix_min_, i, j - 1);
        }
    }
    for (int i = w - 1; i >= 0; i--) {
        for (int j = w - 1; j >= 0; j--) {
            Cell &c = at(suffix_max_, i, j);
            if (i + 1 < w && higher(at(suffix_max_, i + 1, j), c)) c = at(suffix_max_, i + 1, j);
            if (j + 1 < w && higher(at(suffix_max_, i, j + 1), c)) c = at(suffix_max_, i, j + 1);
        }
    }
}

ToleranceLattice::Cell ToleranceLattice::best_within(double eps_p, double eps_q) const {
    if (eps_p < 0 || eps_q < 0) {
        return {std::numeric_limits<double>::infinity(), -1};
    }
    int i = std::min(n_, static_cast<int>(std::floor(std::min(eps_p, 1.0) * n_)));
    int j = std::min(n_, static_cast<int>(std::floor(std::min(eps_q, 1.0) * n_)));
    return prefix_min_[static_cast<size_t>(i) * (n_ + 1) + j];
}

ToleranceLattice::Cell ToleranceLattice::best_beyond(double eps_p, double eps_q) const {
    int i = static_cast<int>(std::ceil(std::max(eps_p, 0.0) * n_));
    int j = static_cast<int>(std::ceil(std::max(eps_q, 0.0) * n_));
    if (i > n_ || j > n_) {
        return {-std::numeric_limits<double>::infinity(), -1};
    }
    return suffix_max_[static_cast<size_t>(i) * (n_ + 1) + j];
}

std::vector<OperatingPoint> unrescaled_curve(double xi, double prior_p, double prior_q, int grid) {
    if (grid < 2) {
        throw ValidationError("grid resolution must be at least 2");
    }
    BinaryPureProblem base{xi, prior_p, prior_q, 0, 0};
    base.validate();
    const auto values = kernels::g_grid(base, grid);
    const int n = grid - 1;
    const int w = n + 1;
    struct Best {
        double p_fail = std::numeric_limits<double>::infinity();
        double ep = 0, eq = 0;
    };
    std::vector<Best> cells(static_cast<size_t>(w) * w);
    for (int i = 0; i < grid; i++) {
        for (int j = 0; j < grid; j++) {
            double pf = values[static_cast<size_t>(i) * grid + j];
            double ep = (1.0 - pf) * i / n, eq = (1.0 - pf) * j / n;
            int ci = static_cast<int>(std::ceil(ep * n)), cj = static_cast<int>(std::ceil(eq * n));
            auto &c = cells[static_cast<size_t>(ci) * w + cj];
            if (pf < c.p_fail) {
                c = {pf, ep, eq};
            }
        }
    }
    std::vector<double> prefix(cells.size());
    std::vector<OperatingPoint> out;
    for (int i = 0; i < w; i++) {
        for (int j = 0; j < w; j++) {
            const size_t k = static_cast<size_t>(i) * w + j;
            double lower_left = std::numeric_limits<double>::infinity();
            if (i > 0) lower_left = std::min(lower_left, prefix[k - w]);
            if (j > 0) lower_left = std::min(lower_left, prefix[k - 1]);
            prefix[k] = std::min(lower_left, cells[k].p_fail);
            if (cells[k].p_fail < lower_left) {
                out.push_back({ToleranceVector({cells[k].ep, cells[k].eq}, Flavor::kUnrescaled), cells[k].p_fail});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const OperatingPoint &a, const OperatingPoint &b) {
        return a.eps.values < b.eps.values;
    });
    return out;
}

}  // namespace aud
