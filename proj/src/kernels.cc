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

#include "aud/kernels.h"

#include <cmath>
#include <optional>

namespace aud::kernels {

namespace {

void check_grid(int grid) {
    if (grid < 2) {
        throw ValidationError("grid resolution must be at least 2");
    }
}

double g_node(const BinaryPureProblem &base, int i, int j, int grid) {
    const double n = grid - 1;
    return g(base.xi, i / n, j / n, base.prior_p, base.prior_q);
}

void scan_node(const InversionScan &s, long node, ToleranceLattice &lattice) {
    const int i = static_cast<int>(node / s.grid), j = static_cast<int>(node % s.grid);
    const double n = s.grid - 1;
    const double ep = i / n, eq = j / n;
    const double big_g = g_of_plus(s.fidelity, effective_eps_plus(ep, eq), s.prior_p, s.prior_q, s.use_h);
    const double penalty = s.u * (s.prior_p * s.delta_p + s.prior_q * s.delta_q) / 2.0;
    lattice.add_max((1.0 - big_g) * ep - s.u * s.delta_p, (1.0 - big_g) * eq - s.u * s.delta_q, big_g - penalty,
                    node);
}

void check_scan(const InversionScan &s) {
    check_grid(s.grid);
    if (!(s.fidelity >= 0 && s.fidelity <= 1) || s.u < 0 || s.delta_p < 0 || s.delta_q < 0) {
        throw ValidationError("invalid scan parameters");
    }
}

InvertedBound m_point(const MSweep &s, size_t k) {
    const int m = s.ms[k];
    const double f = std::pow(s.fidelity, static_cast<double>(s.u) * m);
    auto b = unrescaled_lower_bound(f, s.prior_p, s.prior_q, s.eps_p + s.u * s.delta_p[k],
                                    s.eps_q + s.u * s.delta_q[k], s.use_h);
    b.value -= s.u * (s.prior_p * s.delta_p[k] + s.prior_q * s.delta_q[k]) / 2.0;
    return b;
}

void check_sweep(const MSweep &s) {
    if (s.ms.empty()) {
        throw ValidationError("M range is empty");
    }
    if (s.delta_p.size() != s.ms.size() || s.delta_q.size() != s.ms.size()) {
        throw ValidationError("need one simulation error per M");
    }
    for (int m : s.ms) {
        if (m < 1) {
            throw ValidationError("M must be at least 1");
        }
    }
}

void check_batch(std::span<const StateEnsemble> ens, std::span<const ToleranceVector> tol) {
    if (ens.size() != tol.size()) {
        throw ValidationError("need one tolerance vector per ensemble");
    }
}

std::vector<DiscriminationSolution> unwrap(std::vector<std::optional<DiscriminationSolution>> &slots) {
    std::vector<DiscriminationSolution> out;
    out.reserve(slots.size());
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

}  // namespace

std::vector<double> g_grid(const BinaryPureProblem &base, int grid) {
    check_grid(grid);
    base.validate();
    std::vector<double> out(static_cast<size_t>(grid) * grid);
    const long total = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long k = 0; k < total; k++) {
        out[k] = g_node(base, static_cast<int>(k / grid), static_cast<int>(k % grid), grid);
    }
    return out;
}

ToleranceLattice inversion_lattice(const InversionScan &scan) {
    check_scan(scan);
    ToleranceLattice result(scan.grid);
    const long total = static_cast<long>(scan.grid) * scan.grid;
#pragma omp parallel
    {
        ToleranceLattice local(scan.grid);
#pragma omp for schedule(dynamic, 256) nowait
        for (long k = 0; k < total; k++) {
            scan_node(scan, k, local);
        }
#pragma omp critical
        result.merge(local);
    }
    result.finalize();
    return result;
}

std::vector<InvertedBound> m_sweep(const MSweep &sweep) {
    check_sweep(sweep);
    std::vector<InvertedBound> out(sweep.ms.size());
    const long total = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < total; k++) {
        out[k] = m_point(sweep, k);
    }
    return out;
}

std::vector<DiscriminationSolution> solve_batch(std::span<const StateEnsemble> ensembles,
                                                std::span<const ToleranceVector> tolerances,
                                                const SolveOptions &options) {
    check_batch(ensembles, tolerances);
    std::vector<std::optional<DiscriminationSolution>> slots(ensembles.size());
    const long total = static_cast<long>(slots.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < total; k++) {
        slots[k].emplace(solve_min_fail(ensembles[k], tolerances[k], options));
    }
    return unwrap(slots);
}

namespace serial {

std::vector<double> g_grid(const BinaryPureProblem &base, int grid) {
    check_grid(grid);
    base.validate();
    std::vector<double> out(static_cast<size_t>(grid) * grid);
    for (int i = 0; i < grid; i++) {
        for (int j = 0; j < grid; j++) {
            out[static_cast<size_t>(i) * grid + j] = g_node(base, i, j, grid);
        }
    }
    return out;
}

ToleranceLattice inversion_lattice(const InversionScan &scan) {
    check_scan(scan);
    ToleranceLattice result(scan.grid);
    const long total = static_cast<long>(scan.grid) * scan.grid;
    for (long k = 0; k < total; k++) {
        scan_node(scan, k, result);
    }
    result.finalize();
    return result;
}

std::vector<InvertedBound> m_sweep(const MSweep &sweep) {
    check_sweep(sweep);
    std::vector<InvertedBound> out;
    for (size_t k = 0; k < sweep.ms.size(); k++) {
        out.push_back(m_point(sweep, k));
    }
    return out;
}

std::vector<DiscriminationSolution> solve_batch(std::span<const StateEnsemble> ensembles,
                                                std::span<const ToleranceVector> tolerances,
                                                const SolveOptions &options) {
    check_batch(ensembles, tolerances);
    std::vector<DiscriminationSolution> out;
    for (size_t k = 0; k < ensembles.size(); k++) {
        out.push_back(solve_min_fail(ensembles[k], tolerances[k], options));
    }
    return out;
}

}  // namespace serial

}  // namespace aud::kernels
