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
//
// Seeded, replicate-parallel Monte Carlo: the uniformity alternatives of the
// power study, null critical values (valid for every continuous null by
// distribution freeness), the power tables, convergence-rate diagnostics and
// the iterated-logarithm diagnostic. Every replicate draws from a substream
// keyed by (seed, cell, replicate), so results are bit-identical for any
// thread count.

#ifndef IPEF_MONTECARLO_HPP
#define IPEF_MONTECARLO_HPP

#include "ipef/dist.hpp"
#include "ipef/rng.hpp"
#include "ipef/sample.hpp"
#include "ipef/stats.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ipef {

// Chunked parallel loop; fn(i) must only touch state owned by index i.
void parallel_for(long count, int n_threads, const std::function<void(long)>& fn);

int resolve_threads(int requested);

// fn(i) -> double for i in [0, count), collected in index order.
template <typename F>
std::vector<double> parallel_map(long count, int n_threads, F&& fn) {
    std::vector<double> out(static_cast<std::size_t>(count));
    parallel_for(count, n_threads, [&](long i) { out[static_cast<std::size_t>(i)] = fn(i); });
    return out;
}

// --- alternatives -------------------------------------------------------------

// The uniformity alternatives A_k, B_k, C_k (Stephens' families). The B and C
// upper branches are the monotone continuous completions 1 - 2^(k-1)(1-x)^k
// and 0.5 + 2^(k-1)(x-0.5)^k; see the README for why the literal displays
// are not usable as printed.
struct Alternative {
    enum class Kind { A, B, C, Custom };
    Kind kind = Kind::A;
    double k = 1.0;
    DistSpec custom;
    std::string label() const;
};

Alternative parse_alternative(const std::string& text); // "A2", "B1.5", "C3", ...

DistSpec alternative_dist(const Alternative& alt);

// n i.i.d. draws by inverse-cdf sampling.
Sample sample_alternative(const Alternative& alt, int n, RngStream& rng);

// --- statistics under study ------------------------------------------------------

enum class StatKind { ks, cvm, omega };

struct StatSpec {
    StatKind kind = StatKind::ks;
    int p = 0;
    double r = 2.0; // omega only
};

std::string stat_name(const StatSpec& spec);

double compute_statistic(const StatSpec& spec, const Sample& sample,
                         const DistSpec& f0);

// One draw from the statistic's limiting law on an m-point grid.
double sample_limit_statistic(const StatSpec& spec, int m, RngStream& rng);

// --- calibration ------------------------------------------------------------------

// ceil(M(1-alpha))-th order statistic of M null draws (uniform data).
// Requires M * alpha >= 5.
double null_critical_value(const StatSpec& spec, int n, double alpha, long M,
                           RngStream base, int n_threads = 0);

// TestReport for a simple null; method selects finite-sample null MC or the
// limiting law (with grid size m_limit) as the reference distribution.
TestReport gof_report(const Sample& sample, const DistSpec& f0, const StatSpec& spec,
                      double alpha, Method method, long M, std::uint64_t seed,
                      int n_threads = 0, int m_limit = 2048);

// --- power study -------------------------------------------------------------------

struct PowerStudyConfig {
    int n = 20;
    std::vector<int> p_list{0, 1, 2, 3};
    std::vector<Alternative> alternatives;
    double alpha = 0.05;
    long M_null = 10000;
    long M_power = 10000;
    std::uint64_t seed = 0;
    int threads = 0;
    StatKind stat = StatKind::ks;
};

struct PowerTable {
    std::vector<std::string> row_labels;
    std::vector<int> p_list;
    std::vector<std::vector<double>> rates; // percent, [row][p-index]
    std::vector<double> critical_values;    // per p-index
    PowerStudyConfig config;
};

// Fresh null critical values per order p, then rejection frequencies per
// (alternative, p) cell. Rates are kept at full precision; export rounds.
PowerTable power_study(const PowerStudyConfig& config);

// --- diagnostics --------------------------------------------------------------------

// Kolmogorov distance between the empirical laws of two draw sets.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

struct RatePoint {
    int n = 0;
    double ks_distance = 0.0;
};

// Distance between M finite-sample null draws of S_n^(p) and M draws of the
// limiting sup, per sample size.
std::vector<RatePoint> rate_study(int p, const std::vector<int>& n_list, long M,
                                  int m_grid, std::uint64_t seed, int n_threads = 0);

struct LilDiagnostic {
    std::vector<int> n_list;
    std::vector<std::vector<double>> trajectories; // [path][n-index]
    double reference_constant = 0.0;
};

// sup_t |alpha_n^(p)| / sqrt(loglog n) along nested samples, plus the
// limsup constant (p+1/2)^(p+1/2) / (p! (p+1)^(p+1)). Diagnostic only.
LilDiagnostic lil_diagnostic(int p, const std::vector<int>& n_list, int n_paths,
                             std::uint64_t seed, int n_threads = 0);

double lil_reference_constant(int p);

} // namespace ipef

#endif // IPEF_MONTECARLO_HPP
