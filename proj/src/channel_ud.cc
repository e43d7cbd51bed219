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

#include "aud/channel_ud.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "aud/kernels.h"
#include "aud/state_ud.h"

namespace aud {

namespace {

constexpr double kTracePreservingTolerance = 1e-10;

void check_unit(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(std::string(what) + " must lie in [0, 1]");
    }
}

void check_binary_eps(const ToleranceVector &eps) {
    if (eps.flavor != Flavor::kUnrescaled || eps.values.size() != 2) {
        throw ValidationError("channel bounds take two un-rescaled tolerances");
    }
}

bool equal_priors(double p) { return std::abs(p - 0.5) < 1e-15; }

std::array<ComplexMatrix, 4> paulis() {
    ComplexMatrix i = ComplexMatrix::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    return {i, x, y, z};
}

ChannelBoundResult finish(double raw, int rounds, int ports, const ToleranceVector &eps_u, double eps_r_p,
                          double eps_r_q) {
    ChannelBoundResult out;
    out.raw = raw;
    out.value = std::clamp(raw, 0.0, 1.0);
    out.vacuous = raw < 0;
    out.rounds = rounds;
    out.ports = ports;
    out.eps_u = eps_u.values;
    out.eps_r = {eps_r_p, eps_r_q};
    return out;
}

void check_rounds(int rounds, int ports) {
    if (rounds < 1 || ports < 1) {
        throw ValidationError("rounds and ports must be at least 1");
    }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw ValidationError("a channel needs at least one Kraus operator");
    }
    const auto rows = kraus_.front().rows(), cols = kraus_.front().cols();
    if (rows == 0 || cols == 0) {
        throw ValidationError("Kraus operators must be non-empty");
    }
    ComplexMatrix total = ComplexMatrix::Zero(cols, cols);
    for (const auto &k : kraus_) {
        if (k.rows() != rows || k.cols() != cols || !all_finite(k)) {
            throw ValidationError("Kraus operators must share one shape and be finite");
        }
        total += k.adjoint() * k;
    }
    if ((total - ComplexMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff() > kTracePreservingTolerance) {
        throw ValidationError("channel is not trace preserving");
    }
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix &rho) const {
    if (rho.rows() != dim_in() || rho.cols() != dim_in()) {
        throw ValidationError("input dimension does not match the channel");
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_out(), dim_out());
    for (const auto &k : kraus_) {
        out += k * rho * k.adjoint();
    }
    return out;
}

void ChannelEnsemble::validate() const {
    if (channels.size() < 2 || channels.size() != priors.size()) {
        throw ValidationError("need at least two channels and one prior each");
    }
    double total = 0;
    for (size_t n = 0; n < channels.size(); n++) {
        if (channels[n].dim_in() != channels[0].dim_in() || channels[n].dim_out() != channels[0].dim_out()) {
            throw ValidationError("channels must share dimensions");
        }
        if (!(priors[n] >= 0)) {
            throw ValidationError("priors must be non-negative");
        }
        total += priors[n];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError("priors must sum to 1");
    }
}

DensityMatrix choi(const KrausChannel &channel) {
    const int din = channel.dim_in(), dout = channel.dim_out();
    const ComplexVector zeta = max_entangled(din).amplitudes();
    const ComplexMatrix ident = ComplexMatrix::Identity(din, din);
    ComplexMatrix out = ComplexMatrix::Zero(dout * din, dout * din);
    for (const auto &k : channel.kraus()) {
        ComplexVector v = kron(k, ident) * zeta;
        out += v * v.adjoint();
    }
    return DensityMatrix(out);
}

double pbt_error_bound(int ports, int dim) {
    if (ports < 1 || dim < 2) {
        throw ValidationError("need M >= 1 and d >= 2");
    }
    return 2.0 * dim * (dim - 1) / ports;
}

double choi_fidelity_power(double fidelity, int rounds, int ports) {
    check_unit(fidelity, "fidelity");
    check_rounds(rounds, ports);
    return std::pow(fidelity, static_cast<double>(rounds) * ports);
}

DeltaModel uniform_delta_model(int dim, int channels) {
    return [dim, channels](int ports) {
        const double d = pbt_error_bound(ports, dim);
        return SimulationError{std::vector<double>(channels, d), d, ports, dim};
    };
}

DeltaModel zero_delta_model(int dim, int channels) {
    return [dim, channels](int ports) { return SimulationError{std::vector<double>(channels, 0.0), 0.0, ports, dim}; };
}

DeltaModel table_delta_model(std::vector<std::vector<double>> table, int dim) {
    return [table = std::move(table), dim](int ports) {
        if (ports < 1 || ports > static_cast<int>(table.size())) {
            throw ValidationError("no simulation error tabulated for this M");
        }
        const auto &row = table[ports - 1];
        return SimulationError{row, *std::max_element(row.begin(), row.end()), ports, dim};
    };
}

ChannelBoundResult lemma4_bound(double fidelity, int rounds, int ports, double delta_p, double delta_q,
                                double prior_p, const ToleranceVector &eps_u, const ChannelBoundOptions &options) {
    check_unit(fidelity, "fidelity");
    check_unit(prior_p, "prior");
    check_rounds(rounds, ports);
    check_binary_eps(eps_u);
    if (!(delta_p >= 0) || !(delta_q >= 0)) {
        throw ValidationError("simulation errors must be non-negative");
    }
    const double prior_q = 1.0 - prior_p;
    const double f = choi_fidelity_power(fidelity, rounds, ports);
    const bool use_h = options.h_at_equal_priors && equal_priors(prior_p);
    const double penalty = rounds * (prior_p * delta_p + prior_q * delta_q) / 2.0;

    if (options.method == InversionMethod::kExact) {
        auto b = unrescaled_lower_bound(f, prior_p, prior_q, eps_u.values[0] + rounds * delta_p,
                                        eps_u.values[1] + rounds * delta_q, use_h);
        return finish(b.value - penalty, rounds, ports, eps_u, b.eps_r_p, b.eps_r_q);
    }

    kernels::InversionScan scan;
    scan.fidelity = f;
    scan.u = rounds;
    scan.delta_p = delta_p;
    scan.delta_q = delta_q;
    scan.prior_p = prior_p;
    scan.prior_q = prior_q;
    scan.use_h = use_h;
    scan.grid = options.grid;
    auto lattice = kernels::inversion_lattice(scan);
    auto cell = lattice.best_beyond(eps_u.values[0], eps_u.values[1]);
    if (cell.tag < 0) {
        auto out = finish(0.0, rounds, ports, eps_u, 1.0, 1.0);
        out.in_range = false;
        return out;
    }
    const double n = options.grid - 1;
    return finish(cell.value, rounds, ports, eps_u, (cell.tag / options.grid) / n, (cell.tag % options.grid) / n);
}

std::vector<ChannelBoundResult> channel_bound_family(double fidelity, int rounds, const DeltaModel &model, double prior_p,
                                              const ToleranceVector &eps_u, int m_min, int m_max, bool parallel) {
    check_unit(fidelity, "fidelity");
    check_unit(prior_p, "prior");
    check_rounds(rounds, std::max(1, m_min));
    check_binary_eps(eps_u);
    if (m_min < 1 || m_max < m_min) {
        throw ValidationError("M range is empty");
    }
    kernels::MSweep sweep;
    sweep.fidelity = fidelity;
    sweep.u = rounds;
    sweep.prior_p = prior_p;
    sweep.prior_q = 1.0 - prior_p;
    sweep.eps_p = eps_u.values[0];
    sweep.eps_q = eps_u.values[1];
    sweep.use_h = equal_priors(prior_p);
    for (int m = m_min; m <= m_max; m++) {
        auto err = model(m);
        if (err.per_channel.size() != 2) {
            throw ValidationError("simulation error model must give two channels");
        }
        sweep.ms.push_back(m);
        sweep.delta_p.push_back(err.per_channel[0]);
        sweep.delta_q.push_back(err.per_channel[1]);
    }
    auto bounds = parallel ? kernels::m_sweep(sweep) : kernels::serial::m_sweep(sweep);
    std::vector<ChannelBoundResult> out;
    for (size_t k = 0; k < bounds.size(); k++) {
        out.push_back(finish(bounds[k].value, rounds, sweep.ms[k], eps_u, bounds[k].eps_r_p, bounds[k].eps_r_q));
    }
    return out;
}

ChannelBoundResult optimize_over_M(double fidelity, int rounds, const DeltaModel &model, double prior_p,
                                   const ToleranceVector &eps_u, int m_min, int m_max, bool parallel) {
    auto family = channel_bound_family(fidelity, rounds, model, prior_p, eps_u, m_min, m_max, parallel);
    size_t best = 0;
    for (size_t k = 1; k < family.size(); k++) {
        if (family[k].raw > family[best].raw) {
            best = k;
        }
    }
    return family[best];
}

double theorem1_bound_sdp(const ChannelEnsemble &ensemble, int rounds, int ports, const ToleranceVector &eps_u,
                          const SimulationError &error, const SolveOptions &options) {
    ensemble.validate();
    check_rounds(rounds, ports);
    const int m = static_cast<int>(ensemble.channels.size());
    if (eps_u.flavor != Flavor::kUnrescaled || static_cast<int>(eps_u.values.size()) != m ||
        static_cast<int>(error.per_channel.size()) != m) {
        throw ValidationError("need one un-rescaled tolerance and one simulation error per channel");
    }
    const int copies = rounds * ports;
    const double base = static_cast<double>(ensemble.channels[0].dim_in()) * ensemble.channels[0].dim_out();
    if (std::pow(base, copies) > kMaxSolverDim) {
        throw ValidationError("Choi tensor power exceeds the solver limit; use lemma4_bound");
    }
    std::vector<DensityMatrix> states;
    std::vector<double> eps;
    double penalty = 0;
    for (int n = 0; n < m; n++) {
        states.push_back(tensor_power(choi(ensemble.channels[n]), copies));
        eps.push_back(std::min(1.0, eps_u.values[n] + rounds * error.per_channel[n]));
        penalty += ensemble.priors[n] * error.per_channel[n];
    }
    StateEnsemble choi_states(std::move(states), ensemble.priors);
    auto sol = solve_min_fail(choi_states, ToleranceVector(eps, Flavor::kUnrescaled), options);
    return std::clamp(sol.p_fail - rounds * penalty / 2.0, 0.0, 1.0);
}

KrausChannel pauli_gate_channel(PauliGate gate, double eta) {
    check_unit(eta, "eta");
    const auto p = paulis();
    std::vector<ComplexMatrix> kraus{std::sqrt(eta) * (gate == PauliGate::kZ ? p[3] : p[0])};
    for (const auto &s : p) {
        kraus.push_back(std::sqrt((1.0 - eta) / 4.0) * s);
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel erasure_channel(int k, double eta, double overlap) {
    check_unit(eta, "eta");
    check_unit(overlap, "overlap");
    if (k != 1 && k != 2) {
        throw ValidationError("erasure channel index must be 1 or 2");
    }
    ComplexVector e = ComplexVector::Zero(4);
    if (k == 1) {
        e(2) = 1;
    } else {
        e(2) = overlap;
        e(3) = std::sqrt(1.0 - overlap * overlap);
    }
    ComplexMatrix embed = ComplexMatrix::Zero(4, 2);
    embed(0, 0) = 1;
    embed(1, 1) = 1;
    std::vector<ComplexMatrix> kraus{std::sqrt(1.0 - eta) * embed};
    for (int j = 0; j < 2; j++) {
        ComplexMatrix op = ComplexMatrix::Zero(4, 2);
        op.col(j) = std::sqrt(eta) * e;
        kraus.push_back(op);
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel amplitude_damping_channel(double r) {
    check_unit(r, "damping");
    ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1.0 - r);
    k1(0, 1) = std::sqrt(r);
    return KrausChannel({k0, k1});
}

double amplitude_damping_choi_fidelity(double r_p, double r_q) {
    check_unit(r_p, "damping");
    check_unit(r_q, "damping");
    return (1.0 + std::sqrt((1.0 - r_q) * (1.0 - r_p)) + std::sqrt(r_q * r_p)) / 2.0;
}

ChannelEnsemble pauli_gate_pair(double eta, double prior_p) {
    check_unit(prior_p, "prior");
    return {{pauli_gate_channel(PauliGate::kZ, eta), pauli_gate_channel(PauliGate::kI, eta)},
            {prior_p, 1.0 - prior_p},
            true};
}

ChannelEnsemble erasure_channel_pair(double eta, double overlap, double prior_p) {
    check_unit(prior_p, "prior");
    return {{erasure_channel(1, eta, overlap), erasure_channel(2, eta, overlap)}, {prior_p, 1.0 - prior_p}, true};
}

ChannelEnsemble amplitude_damping_pair(double r_p, double r_q, double prior_p) {
    check_unit(prior_p, "prior");
    return {{amplitude_damping_channel(r_p), amplitude_damping_channel(r_q)}, {prior_p, 1.0 - prior_p}, false};
}

bool jointly_teleportation_covariant(const ChannelEnsemble &ensemble, double tol) {
    ensemble.validate();
    if (ensemble.channels[0].dim_in() != 2) {
        throw ValidationError("the covariance check handles qubit inputs only");
    }
    const auto p = paulis();
    // Larger outputs embed the qubit in the first two levels; V acts as
    // identity on the rest.
    const int d_out = ensemble.channels[0].dim_out();
    std::vector<ComplexMatrix> outs;
    for (const auto &s : p) {
        ComplexMatrix v = ComplexMatrix::Identity(d_out, d_out);
        v.topLeftCorner(2, 2) = s;
        outs.push_back(v);
    }
    for (const auto &u : p) {
        bool found = false;
        for (const auto &v : outs) {
            bool all = true;
            for (const auto &ch : ensemble.channels) {
                std::vector<ComplexMatrix> twisted, conjugated;
                for (const auto &k : ch.kraus()) {
                    twisted.push_back(k * u);
                    conjugated.push_back(v * k);
                }
                auto lhs = choi(KrausChannel(twisted)).mat();
                auto rhs = choi(KrausChannel(conjugated)).mat();
                all = all && (lhs - rhs).cwiseAbs().maxCoeff() <= tol;
            }
            if (all) {
                found = true;
                break;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

double classical_pauli_fidelity(double eta) {
    check_unit(eta, "eta");
    return std::sqrt(1.0 - eta * eta);
}

double classical_erasure_fidelity(double eta, double overlap) {
    check_unit(eta, "eta");
    check_unit(overlap, "overlap");
    return eta * overlap + 1.0 - eta;
}

ChannelBoundResult classical_baseline_pauli(double eta, int rounds, const ToleranceVector &eps_u) {
    auto out = lemma4_bound(classical_pauli_fidelity(eta), rounds, 1, 0, 0, 0.5, eps_u);
    out.classical = true;
    return out;
}

ChannelBoundResult classical_baseline_erasure(double eta, double overlap, int rounds, const ToleranceVector &eps_u) {
    auto out = lemma4_bound(classical_erasure_fidelity(eta, overlap), rounds, 1, 0, 0, 0.5, eps_u);
    out.classical = true;
    return out;
}

}  // namespace aud
