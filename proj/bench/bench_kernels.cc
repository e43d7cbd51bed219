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

// Serial reference against OpenMP kernel for each sweep.

#include <benchmark/benchmark.h>

#include <cmath>

#include "aud/channel_ud.h"
#include "aud/kernels.h"
#include "aud/state_ud.h"

namespace {

using namespace aud;

void BM_GGridSerial(benchmark::State &state) {
    BinaryPureProblem base{0.3, 1.0 / 3, 2.0 / 3, 0, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::g_grid(base, static_cast<int>(state.range(0))));
    }
}

void BM_GGridParallel(benchmark::State &state) {
    BinaryPureProblem base{0.3, 1.0 / 3, 2.0 / 3, 0, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::g_grid(base, static_cast<int>(state.range(0))));
    }
}

kernels::InversionScan scan(int grid) {
    kernels::InversionScan s;
    s.fidelity = std::pow(0.994975, 40);
    s.delta_p = s.delta_q = pbt_error_bound(40, 2);
    s.grid = grid;
    s.use_h = true;
    return s;
}

void BM_InversionScanSerial(benchmark::State &state) {
    auto s = scan(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::inversion_lattice(s));
    }
}

void BM_InversionScanParallel(benchmark::State &state) {
    auto s = scan(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::inversion_lattice(s));
    }
}

kernels::MSweep sweep() {
    kernels::MSweep s;
    s.fidelity = amplitude_damping_choi_fidelity(0.9, 0.8);
    s.eps_p = s.eps_q = 0.05;
    s.use_h = false;
    for (int m = 1; m <= 200; m++) {
        s.ms.push_back(m);
        s.delta_p.push_back(pbt_error_bound(m, 2));
        s.delta_q.push_back(pbt_error_bound(m, 2));
    }
    return s;
}

void BM_MSweepSerial(benchmark::State &state) {
    auto s = sweep();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::m_sweep(s));
    }
}

void BM_MSweepParallel(benchmark::State &state) {
    auto s = sweep();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::m_sweep(s));
    }
}

std::pair<std::vector<StateEnsemble>, std::vector<ToleranceVector>> batch() {
    std::vector<StateEnsemble> ens;
    std::vector<ToleranceVector> tol;
    for (int k = 0; k < 16; k++) {
        ens.push_back(depolarizing_pair_states(0.3 + 0.04 * k));
        tol.emplace_back(std::vector<double>{0.05, 0.05}, Flavor::kUnrescaled);
    }
    return {ens, tol};
}

void BM_SolveBatchSerial(benchmark::State &state) {
    auto [ens, tol] = batch();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::solve_batch(ens, tol));
    }
}

void BM_SolveBatchParallel(benchmark::State &state) {
    auto [ens, tol] = batch();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::solve_batch(ens, tol));
    }
}

}  // namespace

BENCHMARK(BM_GGridSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GGridParallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InversionScanSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InversionScanParallel)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MSweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveBatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveBatchParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
