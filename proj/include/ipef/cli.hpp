// Copyright (c) 2026 The ipef Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IPEF_CLI_HPP
#define IPEF_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ipef {

// Configuration for one CLI run; filled by the argument parser, validated
// before dispatch. Exit codes: 0 success, 2 validation error, 3 runtime
// error.
struct RunConfig {
    std::string command; // gof, gof-estimated, two-sample, k-sample,
                         // changepoint, power, rate, lil, localtime, limits
    int p = 0;
    std::vector<int> p_list;
    int q = 1;
    double r = 2.0;
    double alpha = 0.05;
    int n = 20;
    std::vector<int> n_list;
    std::uint64_t seed = 0;
    long reps = 10000;     // null MC / power / bootstrap replications
    int m_grid = 2048;     // limiting-law grid
    int threads = 0;       // 0 = hardware concurrency
    int paths = 20;        // lil / localtime paths
    bool weighted = false; // change-point weight
    std::string stat = "ks";
    std::string method = "null-mc";
    std::string dist = "uniform";
    std::string family = "exponential";
    std::vector<std::string> inputs;
    std::string csv_column;
    std::vector<std::string> alternatives;
    std::string output; // file or prefix; empty = stdout
};

// Empty iff the config satisfies all module preconditions; each violation
// names the field and the rule.
std::vector<std::string> validate(const RunConfig& config);

// Runs the selected study and writes its artifacts. Returns the exit status.
int dispatch(const RunConfig& config);

// Parse argv into a RunConfig and run it (the `ipef` binary's whole logic).
int run_cli(int argc, char** argv);

} // namespace ipef

#endif // IPEF_CLI_HPP
