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
// Grid simulation of the Gaussian processes that arise as limits of the
// integrated empirical statistics: the Brownian bridge B, its weighted
// transform u^p B(u)/p!, the Kiefer sheet (partial sums of independent
// bridges), and the tied-down Kiefer sheet of the change-point limit.
// Bridges are built increment-then-tilt, W(u) - u W(1), which gives the
// exact finite-dimensional law on the grid.

#ifndef IPEF_GAUSSPROC_HPP
#define IPEF_GAUSSPROC_HPP

#include "ipef/rng.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ipef {

struct PathGrid {
    std::vector<double> grid;   // ascending u in [0,1], endpoints 0 and 1
    std::vector<double> values; // process values at grid points
    std::string meta;
};

// K(k, u) for k = 1..n_steps as running sums of independent bridges.
struct KieferSheet {
    int n_steps = 0;
    std::vector<double> grid;
    std::vector<std::vector<double>> levels; // levels[k-1] = K(k, .)
};

// Uniform m-point grid on [0,1]; bridge endpoints are exactly zero.
PathGrid simulate_bridge(int m, RngStream& rng);

// Pointwise multiply by u^p/p!; p = 0 is the identity.
PathGrid bp_transform(const PathGrid& path, int p);

// One draw of sup_u |u^p B(u)|/p!.
double sample_limit_ks(int p, int m, RngStream& rng);

// One draw of the trapezoid integral of [u^p B(u)/p!]^2 over [0,1].
double sample_limit_cvm(int p, int m, RngStream& rng);

// One draw of (int |u^p B(u)/p!|^r du)^(1/r), the omega-statistic limit.
double sample_limit_omega(int p, double r, int m, RngStream& rng);

// One draw of sup_u c u^a |B(u)|; covers the two-sample limit with
// c = (p+1)q/(p+1)!^q and a = pq + q - 1, since the bridge combination
// sqrt(n/(m+n)) B1 - sqrt(m/(m+n)) B2 is itself a bridge.
double sample_limit_weighted_bridge_sup(double a, double c, int m, RngStream& rng);

// Companion quadratic functional: one draw of int [c u^a B(u)]^2 du.
double sample_limit_weighted_bridge_cvm(double a, double c, int m, RngStream& rng);

struct SupAndIntegral {
    double sup = 0.0;
    double integral = 0.0;
};

// K-sample limit functionals from given bridges; the bracket
// sum B_k^2 - (sum w_k B_k)^2 is formed pointwise and scaled by u^(2p)/p!^2.
// Exposed separately so tests can force degenerate bridge configurations.
SupAndIntegral ksample_limit_functionals(const std::vector<PathGrid>& bridges,
                                         const std::vector<double>& weights, int p);

// Simulates K independent bridges and applies the functional above.
// weights w_k must satisfy sum w_k^2 = 1.
SupAndIntegral sample_limit_ksample(int p, const std::vector<double>& weights,
                                    int m, RngStream& rng);

KieferSheet simulate_kiefer(int n_steps, int m, RngStream& rng);

// Szyszkowicz weight w(t) = sqrt(t(1-t) loglog 1/(t(1-t))), with the inner
// log clamped below at e so the radicand stays positive at t = 1/2.
double changepoint_weight(double t);

// One draw of sup_{s,u} |u^p K0(s,u)|/p! where K0(s,u) is the tied-down
// sheet (1/sqrt(n))[K(floor(ns), u) - s K(n, u)], evaluated at s = k/n.
// With a weight, each s-slice is divided by weight(k/n) for k = 1..n-1.
double sample_limit_changepoint(int p, int n_steps, int m,
                                const std::optional<std::function<double(double)>>& weight,
                                RngStream& rng);

// Quantile-table export: one row per functional.
struct QuantileRow {
    std::string functional;
    int p = 0;
    int m = 0;
    long n_draws = 0;
    std::uint64_t seed = 0;
    double q90 = 0.0, q95 = 0.0, q99 = 0.0;
};

void write_quantile_csv(const std::string& path, const std::vector<QuantileRow>& rows);

// Empirical quantile (order statistic at ceil(q * N)).
double empirical_quantile(std::vector<double> draws, double q);

} // namespace ipef

#endif // IPEF_GAUSSPROC_HPP
