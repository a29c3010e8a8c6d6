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

#include "ipef/gaussproc.hpp"

#include "ipef/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ipef {

PathGrid simulate_bridge(int m, RngStream& rng) {
    if (m < 2) throw std::invalid_argument("simulate_bridge: grid size must be >= 2");
    PathGrid path;
    path.grid.resize(m);
    path.values.resize(m);
    path.meta = "brownian-bridge";
    double step = 1.0 / (m - 1);
    double sd = std::sqrt(step);
    for (int i = 0; i < m; ++i) path.grid[i] = i * step;
    path.grid[m - 1] = 1.0;
    double w = 0.0;
    path.values[0] = 0.0;
    for (int i = 1; i < m; ++i) {
        w += sd * rng.normal();
        path.values[i] = w;
    }
    double w1 = path.values[m - 1];
    for (int i = 1; i < m; ++i) path.values[i] -= path.grid[i] * w1;
    path.values[m - 1] = 0.0;
    return path;
}

PathGrid bp_transform(const PathGrid& path, int p) {
    if (p == 0) return path;
    PathGrid out = path;
    double c = 1.0 / factorial(p);
    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        out.values[i] *= c * std::pow(out.grid[i], p);
    }
    out.meta = path.meta + "^( " + std::to_string(p) + ")";
    return out;
}

double sample_limit_ks(int p, int m, RngStream& rng) {
    PathGrid b = simulate_bridge(m, rng);
    double c = 1.0 / factorial(p);
    double sup = 0.0;
    for (std::size_t i = 0; i < b.grid.size(); ++i) {
        double v = std::abs(b.values[i]) * (p == 0 ? 1.0 : std::pow(b.grid[i], p));
        sup = std::max(sup, v);
    }
    return c * sup;
}

double sample_limit_cvm(int p, int m, RngStream& rng) {
    PathGrid b = simulate_bridge(m, rng);
    double c = 1.0 / factorial(p);
    double prev = 0.0, total = 0.0;
    for (std::size_t i = 1; i < b.grid.size(); ++i) {
        double fi = c * std::pow(b.grid[i], p) * b.values[i];
        total += 0.5 * (prev * prev + fi * fi) * (b.grid[i] - b.grid[i - 1]);
        prev = fi;
    }
    return total;
}

double sample_limit_omega(int p, double r, int m, RngStream& rng) {
    if (r < 1.0) throw std::invalid_argument("sample_limit_omega: r >= 1");
    PathGrid b = simulate_bridge(m, rng);
    double c = 1.0 / factorial(p);
    double prev = 0.0, total = 0.0;
    for (std::size_t i = 1; i < b.grid.size(); ++i) {
        double fi = std::pow(std::abs(c * std::pow(b.grid[i], p) * b.values[i]), r);
        total += 0.5 * (prev + fi) * (b.grid[i] - b.grid[i - 1]);
        prev = fi;
    }
    return std::pow(total, 1.0 / r);
}

double sample_limit_weighted_bridge_sup(double a, double c, int m, RngStream& rng) {
    if (a < 0.0 || c <= 0.0) {
        throw std::invalid_argument("weighted bridge sup: need a >= 0, c > 0");
    }
    PathGrid b = simulate_bridge(m, rng);
    double sup = 0.0;
    for (std::size_t i = 0; i < b.grid.size(); ++i) {
        double w = a == 0.0 ? 1.0 : std::pow(b.grid[i], a);
        sup = std::max(sup, c * w * std::abs(b.values[i]));
    }
    return sup;
}

double sample_limit_weighted_bridge_cvm(double a, double c, int m, RngStream& rng) {
    if (a < 0.0 || c <= 0.0) {
        throw std::invalid_argument("weighted bridge cvm: need a >= 0, c > 0");
    }
    PathGrid b = simulate_bridge(m, rng);
    double prev = 0.0, total = 0.0;
    for (std::size_t i = 1; i < b.grid.size(); ++i) {
        double f = c * std::pow(b.grid[i], a) * b.values[i];
        total += 0.5 * (prev + f * f) * (b.grid[i] - b.grid[i - 1]);
        prev = f * f;
    }
    return total;
}

SupAndIntegral ksample_limit_functionals(const std::vector<PathGrid>& bridges,
                                         const std::vector<double>& weights, int p) {
    if (bridges.size() < 2 || bridges.size() != weights.size()) {
        throw std::invalid_argument("ksample limit: need K >= 2 bridges with weights");
    }
    double wsq = 0.0;
    for (double w : weights) wsq += w * w;
    if (std::abs(wsq - 1.0) > 1e-9) {
        throw std::invalid_argument("ksample limit: weights must satisfy sum w^2 = 1");
    }
    const auto& grid = bridges.front().grid;
    double c = 1.0 / (factorial(p) * factorial(p));
    SupAndIntegral out;
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double sq = 0.0, lin = 0.0;
        for (std::size_t k = 0; k < bridges.size(); ++k) {
            double v = bridges[k].values[i];
            sq += v * v;
            lin += weights[k] * v;
        }
        double val = c * std::pow(grid[i], 2 * p) * (sq - lin * lin);
        out.sup = std::max(out.sup, val);
        if (i > 0) out.integral += 0.5 * (prev + val) * (grid[i] - grid[i - 1]);
        prev = val;
    }
    return out;
}

SupAndIntegral sample_limit_ksample(int p, const std::vector<double>& weights,
                                    int m, RngStream& rng) {
    std::vector<PathGrid> bridges;
    bridges.reserve(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        bridges.push_back(simulate_bridge(m, rng));
    }
    return ksample_limit_functionals(bridges, weights, p);
}

KieferSheet simulate_kiefer(int n_steps, int m, RngStream& rng) {
    if (n_steps < 1) throw std::invalid_argument("simulate_kiefer: n_steps >= 1");
    KieferSheet sheet;
    sheet.n_steps = n_steps;
    std::vector<double> running(m, 0.0);
    sheet.levels.reserve(n_steps);
    for (int k = 0; k < n_steps; ++k) {
        PathGrid b = simulate_bridge(m, rng);
        if (k == 0) sheet.grid = b.grid;
        for (int i = 0; i < m; ++i) running[i] += b.values[i];
        sheet.levels.push_back(running);
    }
    return sheet;
}

double changepoint_weight(double t) {
    if (!(t > 0.0 && t < 1.0)) {
        throw std::domain_error("changepoint_weight: t must lie in (0,1)");
    }
    double q = t * (1.0 - t);
    double inner = std::max(std::exp(1.0), std::log(1.0 / q));
    return std::sqrt(q * std::log(inner));
}

double sample_limit_changepoint(int p, int n_steps, int m,
                                const std::optional<std::function<double(double)>>& weight,
                                RngStream& rng) {
    if (n_steps < 2) throw std::invalid_argument("changepoint limit: n_steps >= 2");
    KieferSheet sheet = simulate_kiefer(n_steps, m, rng);
    const auto& top = sheet.levels.back(); // K(n, .)
    double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_steps));
    double c = 1.0 / factorial(p);
    double sup = 0.0;
    for (int k = 1; k < n_steps; ++k) {
        double s = static_cast<double>(k) / n_steps;
        double w = 1.0;
        if (weight) {
            w = (*weight)(s);
            if (!(w > 0.0) || !std::isfinite(w)) {
                throw std::domain_error("changepoint limit: weight must be positive finite");
            }
        }
        const auto& level = sheet.levels[k - 1];
        for (int i = 0; i < m; ++i) {
            double tied = inv_sqrt_n * (level[i] - s * top[i]);
            double v = c * std::pow(sheet.grid[i], p) * std::abs(tied) / w;
            sup = std::max(sup, v);
        }
    }
    return sup;
}

double empirical_quantile(std::vector<double> draws, double q) {
    if (draws.empty()) throw std::invalid_argument("empirical_quantile: no draws");
    std::sort(draws.begin(), draws.end());
    auto idx = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(draws.size())));
    if (idx == 0) idx = 1;
    idx = std::min(idx, draws.size());
    return draws[idx - 1];
}

void write_quantile_csv(const std::string& path, const std::vector<QuantileRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "functional,p,m,n_draws,seed,q90,q95,q99\n";
    out.precision(10);
    for (const auto& r : rows) {
        out << r.functional << ',' << r.p << ',' << r.m << ',' << r.n_draws << ','
            << r.seed << ',' << r.q90 << ',' << r.q95 << ',' << r.q99 << '\n';
    }
}

} // namespace ipef
