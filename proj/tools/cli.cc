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

#include "cli.h"

#include <omp.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

#include "CLI11.hpp"
#include "aud/channel_ud.h"
#include "aud/kernels.h"
#include "aud/state_ud.h"
#include "json.hpp"

namespace aud::cli {

namespace {

constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

using io::Value;

void require(bool ok, const char *message) {
    if (!ok) {
        throw ValidationError(message);
    }
}

double axis(int k, int grid, double max) { return grid == 1 ? 0.0 : max * k / (grid - 1); }

StateEnsemble pure_pair(double xi, double prior_p) {
    ComplexVector p = ComplexVector::Zero(2), q = ComplexVector::Zero(2);
    p(0) = 1;
    q(0) = xi;
    q(1) = std::sqrt(std::max(0.0, 1.0 - xi * xi));
    return StateEnsemble({DensityMatrix::from_pure(PureState(p)), DensityMatrix::from_pure(PureState(q))},
                         {prior_p, 1.0 - prior_p});
}

// Conditional errors of the minimum-error measurement of a binary ensemble.
std::vector<double> helstrom_errors(const StateEnsemble &ens) {
    const ComplexMatrix diff = ens.prior(0) * ens.state(0).mat() - ens.prior(1) * ens.state(1).mat();
    const auto eig = hermitian_eigen(diff);
    const int d = ens.dim();
    ComplexMatrix first = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; k++) {
        if (eig.values[k] >= 0) {
            first += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
        }
    }
    Povm povm = Povm::unchecked({ComplexMatrix::Zero(d, d), first, ComplexMatrix::Identity(d, d) - first});
    return conditional_errors(povm, ens);
}

}  // namespace

Output state_binary(const StateBinaryConfig &c) {
    require(c.grid >= 2 && c.envelope_grid >= 2, "grid resolutions must be at least 2");
    require(c.eps_max > 0 && c.eps_max <= 1, "eps-max must lie in (0, 1]");
    BinaryPureProblem{c.xi, c.prior_p, 1.0 - c.prior_p, 0, 0}.validate();
    const double p = c.prior_p, q = 1.0 - p;
    const std::string flag = c.xi >= 1.0 ? "identical-states" : "";
    Output out{io::Table({"kind", "xi", "prior_p", "eps_p", "eps_q", "g", "h", "sdp", "sdp_status", "eps_u_p",
                          "eps_u_q", "p_fail", "flag"})};

    std::vector<StateEnsemble> ensembles;
    std::vector<ToleranceVector> tolerances;
    for (int i = 0; i < c.grid; i++) {
        for (int j = 0; j < c.grid; j++) {
            ensembles.push_back(pure_pair(c.xi, p));
            tolerances.emplace_back(std::vector<double>{axis(i, c.grid, c.eps_max), axis(j, c.grid, c.eps_max)},
                                    Flavor::kRescaled);
        }
    }
    std::vector<DiscriminationSolution> sdp;
    if (c.sdp) {
        SolveOptions opts;
        opts.conditioning = Conditioning::kPerHypothesis;
        sdp = c.parallel ? kernels::solve_batch(ensembles, tolerances, opts)
                         : kernels::serial::solve_batch(ensembles, tolerances, opts);
    }
    for (size_t k = 0; k < tolerances.size(); k++) {
        const double ep = tolerances[k].values[0], eq = tolerances[k].values[1];
        const double gv = g(c.xi, ep, eq, p, q);
        const double plus = effective_eps_plus(ep, eq);
        Value hv = plus < 1.0 ? Value(h(c.xi, ep, eq, p, q)) : Value();
        Value sv, st;
        if (c.sdp) {
            sv = sdp[k].p_fail;
            st = std::string(solver_status_name(sdp[k].status));
            if (sdp[k].status != SolverStatus::kOptimal) {
                out.code = kNonConvergence;
            }
        }
        Value eu_p, eu_q;
        if (gv < 1.0) {
            eu_p = (1.0 - gv) * ep;
            eu_q = (1.0 - gv) * eq;
        }
        out.table.add({std::string("grid"), c.xi, p, ep, eq, gv, hv, sv, st, eu_p, eu_q, gv, flag});
    }
    for (const auto &pt : unrescaled_curve(c.xi, p, q, c.envelope_grid)) {
        out.table.add({std::string("envelope"), c.xi, p, Value(), Value(), Value(), Value(), Value(), Value(),
                       pt.eps.values[0], pt.eps.values[1], pt.p_fail, flag});
    }
    const double g0 = g(c.xi, 0, 0, p, q);
    out.table.add({std::string("exact-ud"), c.xi, p, 0.0, 0.0, g0, Value(), Value(), Value(), 0.0, 0.0, g0, flag});
    const auto pair = pure_pair(c.xi, p);
    const auto he = helstrom_errors(pair);
    out.table.add({std::string("helstrom"), c.xi, p, Value(), Value(), Value(), Value(), Value(), Value(),
                   std::max(0.0, he[0]), std::max(0.0, he[1]), 0.0,
                   "P_H=" + io::format_number(helstrom_binary(pair))});
    out.table.sort();
    return out;
}

Output state_mixed(const StateMixedConfig &c) {
    require(c.model == "depolarizing" || c.model == "erasure", "model must be depolarizing or erasure");
    require(c.grid >= 2 && c.family_steps >= 2, "grid resolutions must be at least 2");
    require(c.eps_max > 0 && c.eps_max <= 1, "eps-max must lie in (0, 1]");
    const bool depol = c.model == "depolarizing";
    const StateEnsemble ens = depol ? depolarizing_pair_states(c.eta) : erasure_pair_states(c.eta, c.xi);
    const double f = fidelity(ens.state(0), ens.state(1));
    const auto hull = depol ? depolarizing_upper_hull(c.eta) : erasure_upper_hull(c.eta, c.xi);
    Output out{io::Table({"kind", "model", "eta", "xi", "a", "param", "eps", "p_fail"})};
    const Value xi = depol ? Value() : Value(c.xi);

    for (int k = 0; k < c.grid; k++) {
        const double e = axis(k, c.grid, c.eps_max);
        out.table.add({std::string("lower"), c.model, c.eta, xi, Value(), Value(), e,
                       symmetric_unrescaled_lower_bound(f, e)});
        out.table.add({std::string("upper"), c.model, c.eta, xi, Value(), Value(), e, hull_value(hull, e)});
    }
    for (int ia = 0; ia <= 10; ia++) {
        const double a = ia / 10.0;
        for (int k = 0; k < c.family_steps; k++) {
            const double s = static_cast<double>(k) / (c.family_steps - 1);
            if (depol) {
                const double theta = std::numbers::pi / 2 * (1.0 + s);
                auto pt = depolarizing_pair_strategy(c.eta, a, theta);
                out.table.add({std::string("family"), c.model, c.eta, xi, a, theta, pt.eps, pt.p_fail});
            } else {
                const double t = 0.5 * s;
                auto pt = erasure_pair_strategy(c.eta, c.xi, 0.5, a, ToleranceVector({t, t}, Flavor::kRescaled));
                out.table.add({std::string("family"), c.model, c.eta, xi, a, t, pt.eps.values[0], pt.p_fail});
            }
        }
    }
    out.table.add({std::string("helstrom"), c.model, c.eta, xi, Value(), Value(), helstrom_binary(ens), 0.0});
    out.table.add({std::string("fidelity"), c.model, c.eta, xi, Value(), Value(), 0.0, f});
    out.table.sort();
    return out;
}

Output channel(const ChannelConfig &c) {
    const std::string &m = c.model;
    require(m == "pauli" || m == "erasure" || m == "ad" || m == "classical-pauli" || m == "classical-erasure",
            "model must be pauli, erasure, ad, classical-pauli or classical-erasure");
    require(c.grid >= 2, "grid resolution must be at least 2");
    require(c.u_min >= 1 && c.u_max >= c.u_min, "round range is empty");
    require(c.m_min >= 1 && c.m_max >= c.m_min, "M range is empty");
    require(c.eps_max >= 0 && c.eps_max <= 1, "eps-max must lie in [0, 1]");

    ChannelEnsemble ens = m == "ad" ? amplitude_damping_pair(c.r_p, c.r_q)
                          : (m == "erasure" || m == "classical-erasure") ? erasure_channel_pair(c.eta, c.overlap)
                                                                         : pauli_gate_pair(c.eta);
    const double f_choi = fidelity(choi(ens.channels[0]), choi(ens.channels[1]));
    Output out{io::Table({"kind", "model", "u", "M", "eps_p", "eps_q", "value", "raw", "eps_r_p", "eps_r_q",
                          "vacuous", "classical", "fidelity"})};
    bool any_valid = false;
    auto emit = [&](const char *kind, const ChannelBoundResult &r, double f) {
        any_valid = any_valid || !r.vacuous;
        out.table.add({std::string(kind), m, static_cast<long>(r.rounds), static_cast<long>(r.ports), r.eps_u[0],
                       r.eps_u[1], r.value, r.raw, r.eps_r[0], r.eps_r[1], r.vacuous, r.classical, f});
    };

    std::vector<std::pair<double, double>> points;
    for (int i = 0; i < c.grid; i++) {
        if (c.asymmetric) {
            for (int j = 0; j < c.grid; j++) {
                points.emplace_back(axis(i, c.grid, c.eps_max), axis(j, c.grid, c.eps_max));
            }
        } else {
            points.emplace_back(axis(i, c.grid, c.eps_max), axis(i, c.grid, c.eps_max));
        }
    }
    for (int u = c.u_min; u <= c.u_max; u++) {
        for (const auto &[ep, eq] : points) {
            ToleranceVector eps({ep, eq}, Flavor::kUnrescaled);
            if (m == "classical-pauli") {
                emit("bound", classical_baseline_pauli(c.eta, u, eps), classical_pauli_fidelity(c.eta));
            } else if (m == "classical-erasure") {
                emit("bound", classical_baseline_erasure(c.eta, c.overlap, u, eps),
                     classical_erasure_fidelity(c.eta, c.overlap));
            } else if (m == "ad") {
                auto family = channel_bound_family(f_choi, u, uniform_delta_model(2), 0.5, eps, c.m_min, c.m_max, c.parallel);
                size_t best = 0;
                for (size_t k = 0; k < family.size(); k++) {
                    if (family[k].raw > family[best].raw) best = k;
                    if (c.per_m) emit("per-M", family[k], f_choi);
                }
                emit("optimum", family[best], f_choi);
            } else {
                emit("bound", lemma4_bound(f_choi, u, 1, 0, 0, 0.5, eps), f_choi);
            }
        }
    }
    if (!any_valid) {
        out.code = kVacuousOnly;
    }
    out.table.sort();
    return out;
}

namespace {

// Keys of a JSON config fill options that were not given on the command line.
void apply_config(CLI::App *sub, const std::string &path) {
    const auto j = nlohmann::json::parse(io::read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ValidationError("config must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (key == "command") {
            continue;
        }
        CLI::Option *opt = nullptr;
        try {
            opt = sub->get_option("--" + key);
        } catch (const CLI::OptionNotFound &) {
            throw ValidationError("unknown config key: " + key);
        }
        if (opt->count() > 0) {
            continue;
        }
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_boolean()) {
            text = value.get<bool>() ? "true" : "false";
        } else {
            text = value.dump();
        }
        opt->add_result(text);
        opt->run_callback();
    }
}

void write(const io::Table &table, const std::string &path, const std::string &format) {
    std::ofstream file;
    std::ostream *os = &std::cout;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file) {
            throw ValidationError("cannot write " + path);
        }
        os = &file;
    }
    if (format == "json") {
        table.write_json(*os);
    } else {
        table.write_csv(*os);
    }
}

}  // namespace

int run(int argc, char **argv) {
    CLI::App app{"Approximate unambiguous discrimination of quantum states and channels"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string out_path, format = "csv", config;
    int threads = 0;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", config, "JSON file of option values");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--parallel", threads, "worker threads; 1 runs the serial kernels");
    };

    StateBinaryConfig sb;
    auto *cmd_sb = app.add_subcommand("state-binary", "g, h and SDP values for two pure states");
    common(cmd_sb);
    cmd_sb->add_option("--xi", sb.xi, "overlap <p|q>");
    cmd_sb->add_option("--prior", sb.prior_p, "prior of |p>");
    cmd_sb->add_option("--grid", sb.grid, "points per tolerance axis");
    cmd_sb->add_option("--eps-max", sb.eps_max, "largest rescaled tolerance on the grid");
    cmd_sb->add_option("--envelope-grid", sb.envelope_grid, "resolution of the un-rescaled envelope sweep");
    cmd_sb->add_flag("--sdp", sb.sdp, "also solve every grid point by SDP");

    StateMixedConfig sm;
    auto *cmd_sm = app.add_subcommand("state-mixed", "bounds for the depolarizing and erasure state pairs");
    common(cmd_sm);
    cmd_sm->add_option("--model", sm.model, "depolarizing or erasure");
    cmd_sm->add_option("--eta", sm.eta, "noise parameter");
    cmd_sm->add_option("--xi", sm.xi, "pure-part overlap (erasure)");
    cmd_sm->add_option("--grid", sm.grid, "points on the tolerance axis");
    cmd_sm->add_option("--eps-max", sm.eps_max, "largest tolerance");
    cmd_sm->add_option("--family-steps", sm.family_steps, "points per strategy family");

    ChannelConfig ch;
    auto *cmd_ch = app.add_subcommand("channel", "adaptive lower bounds for channel pairs");
    common(cmd_ch);
    cmd_ch->add_option("--model", ch.model, "pauli, erasure, ad, classical-pauli or classical-erasure");
    cmd_ch->add_option("--eta", ch.eta, "noise parameter");
    cmd_ch->add_option("--overlap", ch.overlap, "<e_1|e_2> (erasure)");
    cmd_ch->add_option("--rp", ch.r_p, "damping of channel p (ad)");
    cmd_ch->add_option("--rq", ch.r_q, "damping of channel q (ad)");
    cmd_ch->add_option("--u-min", ch.u_min, "first round count");
    cmd_ch->add_option("--u-max", ch.u_max, "last round count");
    cmd_ch->add_option("--grid", ch.grid, "points per tolerance axis");
    cmd_ch->add_option("--eps-max", ch.eps_max, "largest un-rescaled tolerance");
    cmd_ch->add_flag("--asymmetric", ch.asymmetric, "2-D tolerance grid instead of the diagonal");
    cmd_ch->add_option("--m-min", ch.m_min, "smallest port count (ad)");
    cmd_ch->add_option("--m-max", ch.m_max, "largest port count (ad)");
    cmd_ch->add_flag("--per-m", ch.per_m, "emit the bound for every M (ad)");

    std::string ensemble_path, povm_path, flavor = "U", conditioning = "ensemble";
    std::vector<double> eps;
    auto *cmd_solve = app.add_subcommand("solve", "solve one ensemble by SDP, or evaluate a given POVM");
    common(cmd_solve);
    cmd_solve->add_option("--ensemble", ensemble_path, "ensemble JSON file")->required();
    cmd_solve->add_option("--eps", eps, "one tolerance per hypothesis")->delimiter(',');
    cmd_solve->add_option("--flavor", flavor, "U or R")->check(CLI::IsMember({"U", "R"}));
    cmd_solve->add_option("--conditioning", conditioning, "ensemble or per-hypothesis (flavor R)")
        ->check(CLI::IsMember({"ensemble", "per-hypothesis"}));
    cmd_solve->add_option("--povm", povm_path, "evaluate this POVM instead of solving");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kSuccess : kValidation;
    }

    try {
        CLI::App *sub = app.get_subcommands().front();
        if (!config.empty()) {
            apply_config(sub, config);
        }
        if (threads < 0) {
            throw ValidationError("--parallel must be non-negative");
        }
        if (threads > 0) {
            omp_set_num_threads(threads);
        }
        const bool parallel = threads != 1;

        if (sub == cmd_solve) {
            auto ens = io::ensemble_from_json(io::read_file(ensemble_path));
            if (!povm_path.empty()) {
                auto povm = io::povm_from_json(io::read_file(povm_path));
                io::Table t({"p_fail", "errors"});
                std::string errs;
                for (double e : conditional_errors(povm, ens)) {
                    errs += (errs.empty() ? "" : ";") + io::format_number(e);
                }
                t.add({p_fail_of(povm, ens), errs});
                write(t, out_path, format);
                return kSuccess;
            }
            if (eps.empty()) {
                eps.assign(ens.size(), 0.0);
            }
            SolveOptions opts;
            opts.conditioning =
                conditioning == "ensemble" ? Conditioning::kEnsemble : Conditioning::kPerHypothesis;
            auto sol = solve_min_fail(ens, ToleranceVector(eps, flavor == "U" ? Flavor::kUnrescaled : Flavor::kRescaled),
                                      opts);
            std::ofstream file;
            std::ostream *os = &std::cout;
            if (!out_path.empty() && out_path != "-") {
                file.open(out_path);
                os = &file;
            }
            *os << io::solution_to_json(sol) << '\n';
            return sol.status == SolverStatus::kOptimal ? kSuccess : kNonConvergence;
        }

        Output result{io::Table({})};
        if (sub == cmd_sb) {
            sb.parallel = parallel;
            result = state_binary(sb);
        } else if (sub == cmd_sm) {
            result = state_mixed(sm);
        } else {
            ch.parallel = parallel;
            result = channel(ch);
        }
        write(result.table, out_path, format);
        return result.code;
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const VacuousBoundError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVacuousOnly;
    } catch (const CLI::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
}

}  // namespace aud::cli
