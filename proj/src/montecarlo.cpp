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

#include "ipef/montecarlo.hpp"

#include "ipef/gaussproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipef {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(long count, int n_threads, const std::function<void(long)>& fn) {
    int threads = std::min<long>(resolve_threads(n_threads), count);
    if (threads <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    long chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        long lo = t * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// --- alternatives ---------------------------------------------------------------

namespace {

std::string shape_suffix(double k) {
    // "2" for integers, "1.5" otherwise
    if (k == std::floor(k)) return std::to_string(static_cast<long>(k));
    std::string s = std::to_string(k);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

} // namespace

std::string Alternative::label() const {
    switch (kind) {
        case Kind::A: return "A" + shape_suffix(k);
        case Kind::B: return "B" + shape_suffix(k);
        case Kind::C: return "C" + shape_suffix(k);
        case Kind::Custom: return custom.label;
    }
    return "";
}

Alternative parse_alternative(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty alternative");
    Alternative alt;
    switch (text[0]) {
        case 'A': alt.kind = Alternative::Kind::A; break;
        case 'B': alt.kind = Alternative::Kind::B; break;
        case 'C': alt.kind = Alternative::Kind::C; break;
        default:
            throw std::invalid_argument("unknown alternative: " + text);
    }
    alt.k = std::stod(text.substr(1));
    if (!(alt.k > 0.0)) throw std::invalid_argument("alternative shape must be > 0");
    return alt;
}

DistSpec alternative_dist(const Alternative& alt) {
    if (alt.kind == Alternative::Kind::Custom) return alt.custom;
    double k = alt.k;
    if (!(k > 0.0)) throw std::invalid_argument("alternative shape must be > 0");
    DistSpec d;
    double pow2 = std::pow(2.0, k - 1.0);
    double inv_pow2 = std::pow(2.0, 1.0 - k);
    switch (alt.kind) {
        case Alternative::Kind::A:
            d.cdf = [k](double x) {
                if (x <= 0.0) return 0.0;
                if (x >= 1.0) return 1.0;
                return 1.0 - std::pow(1.0 - x, k);
            };
            d.inv_cdf = [k](double u) { return 1.0 - std::pow(1.0 - u, 1.0 / k); };
            break;
        case Alternative::Kind::B:
            d.cdf = [k, pow2](double x) {
                if (x <= 0.0) return 0.0;
                if (x >= 1.0) return 1.0;
                return x < 0.5 ? pow2 * std::pow(x, k)
                               : 1.0 - pow2 * std::pow(1.0 - x, k);
            };
            d.inv_cdf = [k, inv_pow2](double u) {
                return u < 0.5 ? std::pow(u * inv_pow2, 1.0 / k)
                               : 1.0 - std::pow((1.0 - u) * inv_pow2, 1.0 / k);
            };
            break;
        case Alternative::Kind::C:
            d.cdf = [k, pow2](double x) {
                if (x <= 0.0) return 0.0;
                if (x >= 1.0) return 1.0;
                return x < 0.5 ? 0.5 - pow2 * std::pow(0.5 - x, k)
                               : 0.5 + pow2 * std::pow(x - 0.5, k);
            };
            d.inv_cdf = [k, inv_pow2](double u) {
                return u < 0.5 ? 0.5 - std::pow((0.5 - u) * inv_pow2, 1.0 / k)
                               : 0.5 + std::pow((u - 0.5) * inv_pow2, 1.0 / k);
            };
            break;
        case Alternative::Kind::Custom:
            break;
    }
    d.label = alt.label();
    return d;
}

Sample sample_alternative(const Alternative& alt, int n, RngStream& rng) {
    DistSpec d = alternative_dist(alt);
    std::vector<double> v(n);
    for (auto& x : v) x = d.inv_cdf(rng.uniform01());
    return Sample(std::move(v));
}

// --- statistics --------------------------------------------------------------------

std::string stat_name(const StatSpec& spec) {
    switch (spec.kind) {
        case StatKind::ks: return "S(" + std::to_string(spec.p) + ")";
        case StatKind::cvm: return "T(" + std::to_string(spec.p) + ")";
        case StatKind::omega:
            return "omega(" + std::to_string(spec.p) + "," + std::to_string(spec.r) + ")";
    }
    return "?";
}

double compute_statistic(const StatSpec& spec, const Sample& sample,
                         const DistSpec& f0) {
    switch (spec.kind) {
        case StatKind::ks: return ks_integrated(sample, f0, spec.p);
        case StatKind::cvm: return cvm_integrated(sample, f0, spec.p);
        case StatKind::omega: return omega_integrated(sample, f0, spec.p, spec.r);
    }
    throw std::logic_error("unreachable");
}

double sample_limit_statistic(const StatSpec& spec, int m, RngStream& rng) {
    switch (spec.kind) {
        case StatKind::ks: return sample_limit_ks(spec.p, m, rng);
        case StatKind::cvm: return sample_limit_cvm(spec.p, m, rng);
        case StatKind::omega: return sample_limit_omega(spec.p, spec.r, m, rng);
    }
    throw std::logic_error("unreachable");
}

// --- calibration ---------------------------------------------------------------------

namespace {

Sample uniform_sample(int n, RngStream& rng) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform01();
    return Sample(std::move(v));
}

std::vector<double> null_draws(const StatSpec& spec, int n, long M,
                               const RngStream& base, int n_threads) {
    DistSpec f0 = uniform_dist();
    return parallel_map(M, n_threads, [&](long i) {
        RngStream sub = base.fork(i);
        Sample s = uniform_sample(n, sub);
        return compute_statistic(spec, s, f0);
    });
}

} // namespace

double null_critical_value(const StatSpec& spec, int n, double alpha, long M,
                           RngStream base, int n_threads) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("null_critical_value: alpha in (0,1)");
    }
    if (M * alpha < 5.0) {
        throw std::invalid_argument("null_critical_value: need M * alpha >= 5");
    }
    auto draws = null_draws(spec, n, M, base, n_threads);
    std::sort(draws.begin(), draws.end());
    auto idx = static_cast<std::size_t>(std::ceil(M * (1.0 - alpha)));
    idx = std::min(std::max<std::size_t>(idx, 1), draws.size());
    return draws[idx - 1];
}

TestReport gof_report(const Sample& sample, const DistSpec& f0, const StatSpec& spec,
                      double alpha, Method method, long M, std::uint64_t seed,
                      int n_threads, int m_limit) {
    if (method == Method::parametric_bootstrap) {
        throw std::invalid_argument("gof_report: bootstrap calibration is the "
                                    "estimated-parameter path");
    }
    double stat = compute_statistic(spec, sample, f0);
    RngStream base = RngStream::seeded(seed);
    std::vector<double> ref;
    if (method == Method::null_mc) {
        ref = null_draws(spec, static_cast<int>(sample.size()), M, base, n_threads);
    } else {
        ref = parallel_map(M, n_threads, [&](long i) {
            RngStream sub = base.fork(i);
            return sample_limit_statistic(spec, m_limit, sub);
        });
    }
    std::sort(ref.begin(), ref.end());
    auto idx = static_cast<std::size_t>(std::ceil(M * (1.0 - alpha)));
    idx = std::min(std::max<std::size_t>(idx, 1), ref.size());
    double cv = ref[idx - 1];
    long ge = static_cast<long>(ref.end() -
                                std::lower_bound(ref.begin(), ref.end(), stat));
    TestReport report;
    report.statistic_name = stat_name(spec);
    report.statistic = stat;
    report.p = spec.p;
    report.alpha = alpha;
    report.critical_value = cv;
    report.p_value = static_cast<double>(1 + ge) / static_cast<double>(M + 1);
    report.reject = stat > cv;
    report.method = method;
    report.seed = seed;
    report.n_replications = M;
    report.dist_label = f0.label;
    return report;
}

// --- power study ------------------------------------------------------------------------

PowerTable power_study(const PowerStudyConfig& config) {
    if (config.alternatives.empty()) {
        throw std::invalid_argument("power_study: no alternatives");
    }
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        throw std::invalid_argument("power_study: alpha in (0,1)");
    }
    if (config.M_null < 1 || config.M_power < 1) {
        throw std::invalid_argument("power_study: replication counts must be >= 1");
    }
    RngStream master = RngStream::seeded(config.seed);
    PowerTable table;
    table.p_list = config.p_list;
    table.config = config;

    // Critical values: fresh null MC per order.
    for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
        StatSpec spec{config.stat, config.p_list[pi], 2.0};
        table.critical_values.push_back(null_critical_value(
            spec, config.n, config.alpha, config.M_null, master.fork(0, pi),
            config.threads));
    }

    for (std::size_t a = 0; a < config.alternatives.size(); ++a) {
        const auto& alt = config.alternatives[a];
        DistSpec dist = alternative_dist(alt);
        table.row_labels.push_back(dist.label);
        std::vector<double> row;
        for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
            StatSpec spec{config.stat, config.p_list[pi], 2.0};
            double cv = table.critical_values[pi];
            std::uint64_t cell = a * config.p_list.size() + pi;
            DistSpec f0 = uniform_dist();
            // std::vector<char> keeps the aggregation order independent of
            // the thread schedule: booleans land by index, the count is a
            // sequential integer sum.
            std::vector<char> rejected(static_cast<std::size_t>(config.M_power), 0);
            parallel_for(config.M_power, config.threads, [&](long i) {
                RngStream sub = master.fork(1, cell, static_cast<std::uint64_t>(i));
                Sample s = sample_alternative(alt, config.n, sub);
                rejected[static_cast<std::size_t>(i)] =
                    compute_statistic(spec, s, f0) > cv ? 1 : 0;
            });
            long count = 0;
            for (char c : rejected) count += c;
            row.push_back(100.0 * static_cast<double>(count) /
                          static_cast<double>(config.M_power));
        }
        table.rates.push_back(std::move(row));
    }
    return table;
}

// --- diagnostics ---------------------------------------------------------------------------

double ks_distance_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        // advance both past the current atom so ties across the samples are
        // compared at the same point
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

std::vector<RatePoint> rate_study(int p, const std::vector<int>& n_list, long M,
                                  int m_grid, std::uint64_t seed, int n_threads) {
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) {
            throw std::invalid_argument("rate_study: n_list must be ascending");
        }
    }
    RngStream master = RngStream::seeded(seed);
    StatSpec spec{StatKind::ks, p, 2.0};
    auto limit = parallel_map(M, n_threads, [&](long i) {
        RngStream sub = master.fork(0, static_cast<std::uint64_t>(i));
        return sample_limit_ks(p, m_grid, sub);
    });
    std::vector<RatePoint> out;
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        auto finite = null_draws(spec, n_list[ni], M, master.fork(1, ni), n_threads);
        out.push_back({n_list[ni], ks_distance_two_sample(finite, limit)});
    }
    return out;
}

double lil_reference_constant(int p) {
    double ph = p + 0.5;
    return std::pow(ph, ph) / (factorial(p) * std::pow(p + 1.0, p + 1));
}

LilDiagnostic lil_diagnostic(int p, const std::vector<int>& n_list, int n_paths,
                             std::uint64_t seed, int n_threads) {
    if (n_list.empty() || n_list.front() < 16) {
        throw std::invalid_argument("lil_diagnostic: need min(n_list) >= 16");
    }
    LilDiagnostic out;
    out.n_list = n_list;
    out.reference_constant = lil_reference_constant(p);
    out.trajectories.assign(n_paths, {});
    RngStream master = RngStream::seeded(seed);
    DistSpec f0 = uniform_dist();
    parallel_for(n_paths, n_threads, [&](long path) {
        RngStream sub = master.fork(static_cast<std::uint64_t>(path));
        std::vector<double> grown;
        grown.reserve(n_list.back());
        std::vector<double> traj;
        for (int n : n_list) {
            while (static_cast<int>(grown.size()) < n) grown.push_back(sub.uniform01());
            Sample s(grown);
            double sup = ks_integrated(s, f0, p);
            traj.push_back(sup / std::sqrt(std::log(std::log(static_cast<double>(n)))));
        }
        out.trajectories[static_cast<std::size_t>(path)] = std::move(traj);
    });
    return out;
}

} // namespace ipef
