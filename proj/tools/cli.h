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

#ifndef AUD_TOOLS_CLI_H
#define AUD_TOOLS_CLI_H

#include <string>

#include "aud/io.h"

namespace aud::cli {

enum ExitCode { kSuccess = 0, kValidation = 2, kNonConvergence = 3, kVacuousOnly = 4 };

struct StateBinaryConfig {
    double xi = 0.3;
    double prior_p = 0.5;
    int grid = 41;
    double eps_max = 0.2;
    int envelope_grid = 201;
    bool sdp = false;
    bool parallel = true;
};

struct StateMixedConfig {
    std::string model = "depolarizing";
    double eta = 0.6;
    double xi = 0.3;
    int grid = 50;
    double eps_max = 0.3;
    int family_steps = 61;
};

struct ChannelConfig {
    std::string model = "pauli";
    double eta = 0.6;
    double overlap = 0.3;
    double r_p = 0.9;
    double r_q = 0.8;
    int u_min = 1;
    int u_max = 3;
    int grid = 31;
    double eps_max = 0.3;
    bool asymmetric = false;
    int m_min = 1;
    int m_max = 200;
    bool per_m = false;
    bool parallel = true;
};

struct Output {
    io::Table table;
    ExitCode code = kSuccess;
};

Output state_binary(const StateBinaryConfig &config);
Output state_mixed(const StateMixedConfig &config);
Output channel(const ChannelConfig &config);

/// Parses the command line, runs a subcommand and writes its output.
int run(int argc, char **argv);

}  // namespace aud::cli

#endif
