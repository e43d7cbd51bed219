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

#ifndef AUD_CHANNEL_UD_H
#define AUD_CHANNEL_UD_H

#include <functional>
#include <vector>

#include "aud/qmath.h"
#include "aud/sdp.h"

namespace aud {

/// CPTP map rho -> sum_i K_i rho K_i^dag with K_i of shape dim_out x dim_in.
class KrausChannel {
   public:
    explicit KrausChannel(std::vector<ComplexMatrix> kraus);

    int dim_in() const { return static_cast<int>(kraus_.front().cols()); }
    int dim_out() const { return static_cast<int>(kraus_.front().rows()); }
    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }

    ComplexMatrix apply(const ComplexMatrix &rho) const;

   private:
    std::vector<ComplexMatrix> kraus_;
};

struct ChannelEnsemble {
    std::vector<KrausChannel> channels;
    std::vector<double> priors;
    /// Declared, not detected; see jointly_teleportation_covariant.
    bool tele_covariant_jointly = false;

    void validate() const;
};

/// (E x I) applied to the maximally entangled state, output leg first, on
/// dimension dim_out * dim_in.
DensityMatrix choi(const KrausChannel &channel);

/// Port-based teleportation simulation error 2 d (d - 1) / M.
double pbt_error_bound(int ports, int dim);

/// F^(u M).
double choi_fidelity_power(double fidelity, int rounds, int ports);

struct SimulationError {
    std::vector<double> per_channel;
    double uniform = 0;
    int ports = 1;
    int dim = 2;
};

/// Simulation error for a given port count.
using DeltaModel = std::function<SimulationError(int ports)>;

/// Both channels simulated with error pbt_error_bound(M, dim).
DeltaModel uniform_delta_model(int dim, int channels = 2);
/// Exact simulation at every M (teleportation-covariant channels).
DeltaModel zero_delta_model(int dim, int channels = 2);
/// Caller-supplied per-channel errors, table[M - 1] for M = 1, 2, ...
DeltaModel table_delta_model(std::vector<std::vector<double>> table, int dim);

struct ChannelBoundResult {
    double value = 0;  // clamped to [0, 1]
    double raw = 0;    // before clamping
    int rounds = 1;
    int ports = 1;
    std::vector<double> eps_u;
    std::vector<double> eps_r;
    bool classical = false;
    bool vacuous = false;   // raw < 0
    bool in_range = true;   // false when a grid scan never reached eps_u
};

enum class InversionMethod {
    kExact,    // monotone one-dimensional search over eps_plus
    kGridScan  // grid x grid scan over eps^R with conservative rounding
};

struct ChannelBoundOptions {
    InversionMethod method = InversionMethod::kExact;
    int grid = 400;
    /// Use the closed form h in place of g when the priors are equal.
    bool h_at_equal_priors = true;
};

/// Binary channel lower bound from the Choi fidelity F:
///
///     g(F^(uM); eps^R) - u (p delta_p + q delta_q) / 2
///
/// with eps^R solving (1 - g) eps^R = eps_u + u delta.
ChannelBoundResult lemma4_bound(double fidelity, int rounds, int ports, double delta_p, double delta_q,
                                double prior_p, const ToleranceVector &eps_u, const ChannelBoundOptions &options = {});

/// lemma4_bound for every M in [m_min, m_max].
std::vector<ChannelBoundResult> channel_bound_family(double fidelity, int rounds, const DeltaModel &model, double prior_p,
                                              const ToleranceVector &eps_u, int m_min = 1, int m_max = 200,
                                              bool parallel = true);

/// The best member of channel_bound_family (smallest M on ties).
ChannelBoundResult optimize_over_M(double fidelity, int rounds, const DeltaModel &model, double prior_p,
                                   const ToleranceVector &eps_u, int m_min = 1, int m_max = 200,
                                   bool parallel = true);

/// P^U*(eps + u delta; Choi^(uM)) - u delta_bar / 2 by the SDP, clamped to
/// [0, 1]. Throws when (dim_out dim_in)^(uM) exceeds the solver limit.
double theorem1_bound_sdp(const ChannelEnsemble &ensemble, int rounds, int ports, const ToleranceVector &eps_u,
                          const SimulationError &error, const SolveOptions &options = {});

enum class PauliGate { kI, kZ };

/// eta sigma rho sigma + (1 - eta) I/2.
KrausChannel pauli_gate_channel(PauliGate gate, double eta);

/// eta |e_k><e_k| + (1 - eta) rho on a 4-dimensional output: the input qubit
/// spans |0>, |1>, and e_1 = |2>, e_2 = o|2> + sqrt(1 - o^2)|3>.
KrausChannel erasure_channel(int k, double eta, double overlap);

/// K_0 = |0><0| + sqrt(1 - r)|1><1|, K_1 = sqrt(r)|0><1|.
KrausChannel amplitude_damping_channel(double r);

/// [1 + sqrt((1 - r_q)(1 - r_p)) + sqrt(r_q r_p)] / 2.
double amplitude_damping_choi_fidelity(double r_p, double r_q);

ChannelEnsemble pauli_gate_pair(double eta, double prior_p = 0.5);
ChannelEnsemble erasure_channel_pair(double eta, double overlap, double prior_p = 0.5);
ChannelEnsemble amplitude_damping_pair(double r_p, double r_q, double prior_p = 0.5);

/// Checks that for every qubit Pauli U there is one Pauli V with
/// E(U rho U^dag) = V E(rho) V^dag for all channels of the ensemble. Qubit
/// inputs only; wider outputs take V = Pauli (+) identity.
bool jointly_teleportation_covariant(const ChannelEnsemble &ensemble, double tol = 1e-9);

/// Unentangled input |+> to the Pauli pair: output fidelity sqrt(1 - eta^2).
double classical_pauli_fidelity(double eta);
/// Unentangled input |0> to the erasure pair: output fidelity eta o + 1 - eta.
double classical_erasure_fidelity(double eta, double overlap);

/// Fidelity bound over u uses of the unentangled strategy, equal priors.
ChannelBoundResult classical_baseline_pauli(double eta, int rounds, const ToleranceVector &eps_u);
ChannelBoundResult classical_baseline_erasure(double eta, double overlap, int rounds, const ToleranceVector &eps_u);

}  // namespace aud

#endif
