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

// Data-parallel sweeps. Each kernel has an OpenMP version here and a plain
// loop in `serial`; both produce identical results.

#ifndef AUD_KERNELS_H
#define AUD_KERNELS_H

#include <span>
#include <vector>

#include "aud/sdp.h"
#include "aud/state_ud.h"

namespace aud::kernels {

/// g over rescaled tolerances (i, j) / (grid - 1), row-major in eps_p. The
/// tolerances in `base` are ignored.
std::vector<double> g_grid(const BinaryPureProblem &base, int grid);

/// Grid scan behind the channel bound: every eps^R node of a grid x grid
/// lattice is mapped to the implied tolerance (1 - G) eps^R - u delta and the
/// value G - u (p delta_p + q delta_q) / 2, with G = g(fidelity; eps^R) (or h).
struct InversionScan {
    double fidelity = 1;  // already raised to the power uM
    double u = 1;
    double delta_p = 0;
    double delta_q = 0;
    double prior_p = 0.5;
    double prior_q = 0.5;
    bool use_h = false;
    int grid = 400;
};

/// Lattice of max values over implied tolerances, tagged with the node index
/// i * grid + j.
ToleranceLattice inversion_lattice(const InversionScan &scan);

/// Exact channel bound for each M: unrescaled_lower_bound at F^(uM) and
/// targets eps + u delta(M), minus u delta_bar(M) / 2.
struct MSweep {
    double fidelity = 1;
    int u = 1;
    double prior_p = 0.5;
    double prior_q = 0.5;
    double eps_p = 0;
    double eps_q = 0;
    bool use_h = false;
    std::vector<int> ms;
    std::vector<double> delta_p;  // one per entry of ms
    std::vector<double> delta_q;
};

std::vector<InvertedBound> m_sweep(const MSweep &sweep);

std::vector<DiscriminationSolution> solve_batch(std::span<const StateEnsemble> ensembles,
                                                std::span<const ToleranceVector> tolerances,
                                                const SolveOptions &options = {});

namespace serial {

std::vector<double> g_grid(const BinaryPureProblem &base, int grid);
ToleranceLattice inversion_lattice(const InversionScan &scan);
std::vector<InvertedBound> m_sweep(const MSweep &sweep);
std::vector<DiscriminationSolution> solve_batch(std::span<const StateEnsemble> ensembles,
                                                std::span<const ToleranceVector> tolerances,
                                                const SolveOptions &options = {});

}  // namespace serial

}  // namespace aud::kernels

#endif
