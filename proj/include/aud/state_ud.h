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

#ifndef AUD_STATE_UD_H
#define AUD_STATE_UD_H

#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "aud/qmath.h"
#include "aud/sdp.h"

namespace aud {

/// Two pure states with overlap xi = <p|q>, priors (p, q) and rescaled
/// tolerances (eps_p, eps_q).
struct BinaryPureProblem {
    double xi = 0;
    double prior_p = 0.5;
    double prior_q = 0.5;
    double eps_p = 0;
    double eps_q = 0;

    void validate() const;
};

struct BinaryPureSolution {
    double p_fail = 1;
    double beta_tilde = 0;
    double delta_tilde = 0;
    double eps_minus = 0;
    double eps_plus = 0;
};

struct EpsPair {
    double minus;
    double plus;
};

/// |sqrt(eps_p (1 - eps_q)) -/+ sqrt(eps_q (1 - eps_p))|.
EpsPair eps_pq(double eps_p, double eps_q);

/// eps_plus as seen by the optimizer: errors below the tolerances are allowed,
/// so this is the largest eps_plus over smaller pairs, which is 1 once
/// eps_p + eps_q >= 1 and eps_pq(...).plus otherwise.
double effective_eps_plus(double eps_p, double eps_q);

/// Minimum rescaled inconclusive probability for two pure states:
///
///     min p sin^2 b + q sin^2 d  s.t.  sin b sin d + eps_plus cos b cos d >= xi
///
/// over b, d in [0, pi/2]. For fixed b the smallest feasible d is available in
/// closed form, which leaves a one-dimensional search over b.
BinaryPureSolution solve_binary_pure(const BinaryPureProblem &problem);

/// The same minimum given eps_plus directly. g depends on the tolerances
/// only through effective_eps_plus and is non-increasing in it.
BinaryPureSolution solve_binary_pure_plus(double xi, double eps_plus, double prior_p, double prior_q);

/// solve_binary_pure_plus(...).p_fail, or with `use_h` the closed form h at
/// this eps_plus (read as 0 at eps_plus = 1).
double g_of_plus(double xi, double eps_plus, double prior_p, double prior_q, bool use_h = false);

/// Shorthand for solve_binary_pure(...).p_fail.
double g(double xi, double eps_p, double eps_q, double prior_p, double prior_q);

/// Closed-form lower bound 2 sqrt(pq) (1 - (1 - xi) / (1 - eps_plus)), clamped
/// to [0, 1]. Tight at equal priors. Throws when eps_plus >= 1.
double h(double xi, double eps_p, double eps_q, double prior_p, double prior_q);

/// eps^U = (1 - p_fail) eps^R.
ToleranceVector rescaled_to_unrescaled(const ToleranceVector &eps_r, double p_fail);

/// Un-rescaled tolerance and the matching inconclusive probability.
struct OperatingPoint {
    ToleranceVector eps;
    double p_fail;
};

/// Cells of a regular grid over un-rescaled tolerances [0, 1]^2, each holding
/// the extreme value of the operating points binned into it, with a caller
/// tag identifying the point (ties go to the smaller tag).
///
/// `best_within` answers "lowest value reachable with tolerances at most e"
/// and only uses points whose tolerances are certainly <= e. `best_beyond`
/// answers "highest value among points whose tolerances are all >= e" and
/// only uses points whose tolerances are certainly >= e. Both round toward the
/// looser answer.
class ToleranceLattice {
   public:
    struct Cell {
        double value;
        long tag;
    };

    explicit ToleranceLattice(int cells);

    void add_min(double eps_p, double eps_q, double value, long tag = -1);
    void add_max(double eps_p, double eps_q, double value, long tag = -1);
    /// Folds another lattice of the same size into this one.
    void merge(const ToleranceLattice &other);
    /// Builds the prefix-min and suffix-max tables. Call once after adding.
    void finalize();

    int cells() const { return n_; }
    Cell best_within(double eps_p, double eps_q) const;
    Cell best_beyond(double eps_p, double eps_q) const;

   private:
    int n_;
    std::vector<Cell> min_, max_, prefix_min_, suffix_max_;
};

/// Sweep eps^R over a grid x grid lattice on [0, 1]^2, map each point to
/// eps^U and keep the lower envelope: one point per eps^U cell, with any cell
/// beaten by a cell of smaller tolerances dropped. Sorted by (eps_p, eps_q).
std::vector<OperatingPoint> unrescaled_curve(double xi, double prior_p, double prior_q, int grid);

/// (1 - ||P_1 rho_1 - P_2 rho_2||_1) / 2.
double helstrom_binary(const StateEnsemble &ens);

struct FidelityBounds {
    double fidelity;
    double lb1;  // g(F; eps^R)
    double lb2;  // h(F; eps^R)
};

/// Lower bounds on the rescaled minimum for two mixed states through their
/// fidelity. Exact for pure states.
FidelityBounds fidelity_lower_bounds(const DensityMatrix &rho_p, const DensityMatrix &rho_q, double prior_p,
                                     double prior_q, double eps_p, double eps_q);

struct InvertedBound {
    double value;
    double eps_r_p;
    double eps_r_q;
};

/// Lower bound on the un-rescaled minimum for two states of fidelity F at
/// un-rescaled tolerances (eps_p, eps_q): the largest g(F; eps^R) over all
/// eps^R with (1 - g(F; eps^R)) eps^R >= (eps_p, eps_q) componentwise, and the
/// eps^R attaining it. Tolerances above 1 are allowed. Because g depends on
/// eps^R only through eps_plus, this is a monotone one-dimensional search,
/// solved by bisection from the feasible side. With `use_h` the closed form h
/// replaces g.
InvertedBound unrescaled_lower_bound(double fidelity, double prior_p, double prior_q, double eps_p, double eps_q,
                                     bool use_h = false);

/// Lower bound on the un-rescaled minimum at equal priors and symmetric
/// tolerance eps^U from the fidelity alone: h(F; t) at the smallest t with
/// (1 - h(F; t)) t >= eps^U.
double symmetric_unrescaled_lower_bound(double fidelity, double eps_u);

class VacuousBoundError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct ContinuityBounds {
    double lower;
    double upper;  // 1 for flavor R, which has no upper bound
};

/// Bounds on the minimum for an ensemble within trace distance delta_n of
/// `primed` (same priors), computed by solving `primed`.
///
/// U: [P*(eps + delta) - P.delta/2, P*(eps - delta) + P.delta/2].
/// R: P*(eps') - P.delta/2 with eps' = (delta + eps (1 - pf)) / (1 - pf -
/// P.delta/2), where pf is the minimum of the unprimed ensemble. Throws
/// VacuousBoundError when pf + P.delta/2 >= 1.
ContinuityBounds continuity_bounds(const StateEnsemble &primed, const ToleranceVector &eps,
                                   std::span<const double> delta,
                                   double p_fail_reference = std::numeric_limits<double>::quiet_NaN(),
                                   const SolveOptions &options = {});

/// eta psi_+ + (1 - eta) I/4 and eta psi_- + (1 - eta) I/4 with
/// psi_pm = (|00> +/- |11>)/sqrt 2, equal priors.
StateEnsemble depolarizing_pair_states(double eta);

/// (1 - eta + sqrt(1 + 2 eta - 3 eta^2)) / 2.
double depolarizing_pair_fidelity(double eta);

struct SymmetricPoint {
    double eps;
    double p_fail;
};

/// Two-stage measurement on the depolarizing pair: split on the Bell
/// subspace, abstain with probability a outside it, and inside it measure
/// {Pi_0, Pi_+, Pi_-} tilted by theta in [pi/2, pi].
SymmetricPoint depolarizing_pair_strategy(double eta, double a, double theta);
Povm depolarizing_pair_povm(double eta, double a, double theta);

/// eta |x><x| + (1 - eta) |2><2| for |p> = |0>, |q> = xi |0> + sqrt(1 - xi^2) |1>.
StateEnsemble erasure_pair_states(double eta, double xi, double prior_p = 0.5);

/// First measure {phi, I - phi}; on phi abstain with probability a or guess by
/// the prior, otherwise run the optimal pure-pair measurement at inner
/// tolerance eps_prime. A flavor-R eps_prime is exact through g; a flavor-U
/// one is solved by the SDP.
OperatingPoint erasure_pair_strategy(double eta, double xi, double prior_p, double a,
                                     const ToleranceVector &eps_prime);

struct HullPoint {
    double x;
    double y;
};

/// Lower convex hull, sorted by x.
std::vector<HullPoint> lower_convex_hull(std::vector<HullPoint> points);

/// min over x' <= x of the piecewise-linear hull. +inf left of the hull.
double hull_value(std::span<const HullPoint> hull, double x);

/// Upper bound curves for the two mixed-pair models (symmetric tolerance,
/// equal priors), as hulls over the strategy families plus (0, 1).
std::vector<HullPoint> depolarizing_upper_hull(double eta, int a_steps = 101, int theta_steps = 721);
std::vector<HullPoint> erasure_upper_hull(double eta, double xi, int a_steps = 101, int t_steps = 801);

}  // namespace aud

#endif
