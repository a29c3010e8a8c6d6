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

#include "ipef/stats.hpp"

#include "ipef/gaussproc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ipef {

namespace {

// Distinct jump locations of F_n with both one-sided counts, mapped through
// the null d.f.
struct PitJump {
    double t = 0.0;
    double u = 0.0;
    long le = 0;
    long lt = 0;
};

std::vector<PitJump> pit_jumps(const Sample& sample, const DistSpec& f0) {
    const auto& xs = sample.sorted();
    std::vector<PitJump> jumps;
    jumps.reserve(xs.size());
    long i = 0, n = static_cast<long>(xs.size());
    while (i < n) {
        long j = i;
        while (j < n && xs[j] == xs[i]) ++j;
        PitJump jp;
        jp.t = xs[i];
        jp.u = f0.cdf(xs[i]);
        jp.lt = i;
        jp.le = j;
        jumps.push_back(jp);
        i = j;
    }
    return jumps;
}

// int_a^b (v - u^(p+1)/c)^2 du with c = (p+1)!.
double cvm_piece(double a, double b, double v, int p, double c) {
    double d1 = std::pow(b, p + 2) - std::pow(a, p + 2);
    double d2 = std::pow(b, 2 * p + 3) - std::pow(a, 2 * p + 3);
    return v * v * (b - a) - 2.0 * v / c * d1 / (p + 2) + d2 / (c * c * (2 * p + 3));
}

const std::vector<std::pair<double, double>>& gauss_legendre_32() {
    static const std::vector<std::pair<double, double>> table = [] {
        // Newton iteration on the Legendre recurrence (nodes on [-1,1]).
        const int n = 32;
        std::vector<std::pair<double, double>> nw(n);
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double w = 2.0 / ((1.0 - x * x) * pp * pp);
            nw[i] = {-x, w};
            nw[n - 1 - i] = {x, w};
        }
        return nw;
    }();
    return table;
}

double integrate_abs_pow(double a, double b, double v, int p, double c, double r) {
    // int_a^b |v - u^(p+1)/c|^r du by GL32; the integrand is smooth when the
    // difference keeps one sign on [a,b].
    if (b <= a) return 0.0;
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double total = 0.0;
    for (const auto& [node, weight] : gauss_legendre_32()) {
        double u = mid + half * node;
        total += weight * std::pow(std::abs(v - std::pow(u, p + 1) / c), r);
    }
    return total * half;
}

// Single crossing of u^(p+1)/c through level v on [a,b], assuming
// g(a) <= v <= g(b); bisection to 1e-12.
double crossing(double a, double b, double v, int p, double c) {
    double lo = a, hi = b;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (std::pow(mid, p + 1) / c < v) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double ks_integrated(const Sample& sample, const DistSpec& f0, int p) {
    long n = static_cast<long>(sample.size());
    if (n == 0) throw std::invalid_argument("ks_integrated: empty sample");
    double c = factorial(p + 1);
    auto v = integrated_edf_value_table(n, p);
    double best = std::abs(v[n] - 1.0 / c);
    for (const auto& jp : pit_jumps(sample, f0)) {
        double g = std::pow(jp.u, p + 1) / c;
        best = std::max({best, std::abs(v[jp.le] - g), std::abs(v[jp.lt] - g)});
    }
    return std::sqrt(static_cast<double>(n)) * best;
}

double cvm_integrated(const Sample& sample, const DistSpec& f0, int p) {
    long n = static_cast<long>(sample.size());
    double c = factorial(p + 1);
    auto v = integrated_edf_value_table(n, p);
    auto jumps = pit_jumps(sample, f0);
    double total = 0.0;
    double u_prev = 0.0;
    for (const auto& jp : jumps) {
        total += cvm_piece(u_prev, jp.u, v[jp.lt], p, c);
        u_prev = jp.u;
    }
    total += cvm_piece(u_prev, 1.0, v[n], p, c);
    return static_cast<double>(n) * total;
}

double omega_integrated(const Sample& sample, const DistSpec& f0, int p, double r) {
    if (r < 1.0) throw std::invalid_argument("omega_integrated: r must be >= 1");
    long n = static_cast<long>(sample.size());
    double sqrt_n = std::sqrt(static_cast<double>(n));
    if (p == 0) {
        // Closed form: on [u_{i-1}, u_i] the e.d.f. sits at (i-1)/n and the
        // antiderivative of |u - c|^r is (u-c)|u-c|^r/(r+1).
        const auto& xs = sample.sorted();
        auto anti = [r](double x, double c) {
            double d = x - c;
            return d * std::pow(std::abs(d), r) / (r + 1.0);
        };
        double total = 0.0;
        double u_prev = 0.0;
        for (long i = 1; i <= n + 1; ++i) {
            double u_i = i <= n ? f0.cdf(xs[i - 1]) : 1.0;
            double level = static_cast<double>(i - 1) / n;
            total += anti(u_i, level) - anti(u_prev, level);
            u_prev = u_i;
        }
        return sqrt_n * std::pow(total, 1.0 / r);
    }
    double c = factorial(p + 1);
    auto table = integrated_edf_value_table(n, p);
    auto jumps = pit_jumps(sample, f0);
    double total = 0.0;
    double u_prev = 0.0;
    long count_prev = 0;
    auto add_piece = [&](double a, double b, long count) {
        if (b <= a) return;
        double v = table[count];
        double ga = std::pow(a, p + 1) / c, gb = std::pow(b, p + 1) / c;
        if (v <= ga || v >= gb) {
            total += integrate_abs_pow(a, b, v, p, c, r);
        } else {
            double star = crossing(a, b, v, p, c);
            total += integrate_abs_pow(a, star, v, p, c, r);
            total += integrate_abs_pow(star, b, v, p, c, r);
        }
    };
    for (const auto& jp : jumps) {
        add_piece(u_prev, jp.u, count_prev);
        u_prev = jp.u;
        count_prev = jp.le;
    }
    add_piece(u_prev, 1.0, n);
    return sqrt_n * std::pow(total, 1.0 / r);
}

// --- two-sample --------------------------------------------------------------

double two_sample_process(const Sample& x, const Sample& y, int p, int q, double t) {
    if (q < 1) throw std::invalid_argument("two_sample_process: q must be >= 1");
    double m = static_cast<double>(x.size());
    double n = static_cast<double>(y.size());
    double scale = std::sqrt(m * n / (m + n));
    double fx = integrated_edf(x, p, t).value;
    double gy = integrated_edf(y, p, t).value;
    return scale * (std::pow(fx, q) - std::pow(gy, q));
}

namespace {

std::vector<double> pooled_distinct(const Sample& x, const Sample& y) {
    std::vector<double> z;
    z.reserve(x.size() + y.size());
    std::merge(x.sorted().begin(), x.sorted().end(), y.sorted().begin(),
               y.sorted().end(), std::back_inserter(z));
    z.erase(std::unique(z.begin(), z.end()), z.end());
    return z;
}

struct TwoSampleScan {
    double S = 0.0;
    std::vector<double> xi_right; // xi at each pooled distinct value, right side
    std::vector<double> z;        // the pooled distinct values
};

TwoSampleScan two_sample_scan(const Sample& x, const Sample& y, int p, int q) {
    if (q < 1) throw std::invalid_argument("two_sample_statistics: q must be >= 1");
    long m = static_cast<long>(x.size()), n = static_cast<long>(y.size());
    double scale = std::sqrt(static_cast<double>(m) * n / (m + n));
    auto vx = integrated_edf_value_table(m, p);
    auto vy = integrated_edf_value_table(n, p);
    TwoSampleScan scan;
    scan.z = pooled_distinct(x, y);
    scan.xi_right.reserve(scan.z.size());
    for (double t : scan.z) {
        double xi_r = scale * (std::pow(vx[x.count_le(t)], q) -
                               std::pow(vy[y.count_le(t)], q));
        double xi_l = scale * (std::pow(vx[x.count_lt(t)], q) -
                               std::pow(vy[y.count_lt(t)], q));
        scan.S = std::max({scan.S, std::abs(xi_r), std::abs(xi_l)});
        scan.xi_right.push_back(xi_r);
    }
    return scan;
}

} // namespace

TwoSampleStats two_sample_statistics(const Sample& x, const Sample& y, int p, int q) {
    auto scan = two_sample_scan(x, y, p, q);
    // int xi^2 dH with H the pooled e.d.f.: average of xi^2 over pooled atoms.
    long m = static_cast<long>(x.size()), n = static_cast<long>(y.size());
    double total = 0.0;
    for (std::size_t j = 0; j < scan.z.size(); ++j) {
        long mult = (x.count_le(scan.z[j]) - x.count_lt(scan.z[j])) +
                    (y.count_le(scan.z[j]) - y.count_lt(scan.z[j]));
        total += scan.xi_right[j] * scan.xi_right[j] * mult;
    }
    return {scan.S, total / static_cast<double>(m + n)};
}

TwoSampleStats two_sample_statistics_f0(const Sample& x, const Sample& y, int p,
                                        int q, const DistSpec& f0) {
    auto scan = two_sample_scan(x, y, p, q);
    // xi is a step function; integrate xi^2 dF0 piece by piece.
    double total = 0.0;
    for (std::size_t j = 0; j < scan.z.size(); ++j) {
        double u_a = f0.cdf(scan.z[j]);
        double u_b = j + 1 < scan.z.size() ? f0.cdf(scan.z[j + 1]) : 1.0;
        total += scan.xi_right[j] * scan.xi_right[j] * (u_b - u_a);
    }
    return {scan.S, total};
}

// --- K-sample ------------------------------------------------------------------

KSampleResult ksample_statistics(const std::vector<Sample>& samples,
                                 const DistSpec& f0, int p) {
    if (samples.size() < 2) throw std::invalid_argument("ksample_statistics: K >= 2");
    const std::size_t K = samples.size();
    long total_n = 0;
    for (const auto& s : samples) total_n += static_cast<long>(s.size());

    std::vector<double> z;
    for (const auto& s : samples) {
        z.insert(z.end(), s.sorted().begin(), s.sorted().end());
    }
    std::sort(z.begin(), z.end());
    z.erase(std::unique(z.begin(), z.end()), z.end());

    std::vector<std::vector<double>> tables;
    tables.reserve(K);
    for (const auto& s : samples) {
        tables.push_back(integrated_edf_value_table(static_cast<long>(s.size()), p));
    }
    auto xi_at_counts = [&](const std::vector<long>& counts) {
        double d = 0.0;
        std::vector<double> v(K);
        for (std::size_t k = 0; k < K; ++k) {
            v[k] = tables[k][counts[k]];
            d += static_cast<double>(samples[k].size()) * v[k];
        }
        d /= static_cast<double>(total_n);
        double xi = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            double diff = v[k] - d;
            xi += static_cast<double>(samples[k].size()) * diff * diff;
        }
        return xi;
    };

    KSampleResult out;
    std::vector<long> le(K), lt(K);
    std::vector<double> xi_right(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        for (std::size_t k = 0; k < K; ++k) {
            le[k] = samples[k].count_le(z[j]);
            lt[k] = samples[k].count_lt(z[j]);
        }
        xi_right[j] = xi_at_counts(le);
        out.S = std::max({out.S, xi_right[j], xi_at_counts(lt)});
    }
    double total = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        double u_a = f0.cdf(z[j]);
        double u_b = j + 1 < z.size() ? f0.cdf(z[j + 1]) : 1.0;
        total += xi_right[j] * (u_b - u_a);
    }
    out.T = total;

    auto samples_copy = samples;
    int order = p;
    out.process = [samples_copy, order](double t) {
        long total_n2 = 0;
        for (const auto& s : samples_copy) total_n2 += static_cast<long>(s.size());
        double d = 0.0;
        std::vector<double> v(samples_copy.size());
        for (std::size_t k = 0; k < samples_copy.size(); ++k) {
            v[k] = integrated_edf(samples_copy[k], order, t).value;
            d += static_cast<double>(samples_copy[k].size()) * v[k];
        }
        d /= static_cast<double>(total_n2);
        double xi = 0.0;
        for (std::size_t k = 0; k < samples_copy.size(); ++k) {
            double diff = v[k] - d;
            xi += static_cast<double>(samples_copy[k].size()) * diff * diff;
        }
        return xi;
    };
    return out;
}

// --- change-point ----------------------------------------------------------------

namespace {

class Fenwick {
public:
    explicit Fenwick(int n) : tree_(n + 1, 0) {}
    void add(int i) { // 1-based
        for (; i < static_cast<int>(tree_.size()); i += i & (-i)) ++tree_[i];
    }
    long prefix(int i) const { // count of inserted ranks <= i
        long s = 0;
        for (; i > 0; i -= i & (-i)) s += tree_[i];
        return s;
    }

private:
    std::vector<long> tree_;
};

} // namespace

ChangePointResult changepoint_scan(const Sample& sample, int p, bool weighted) {
    long n = static_cast<long>(sample.size());
    if (n < 2) throw std::invalid_argument("changepoint_scan: n >= 2 required");
    if (weighted && n < 4) {
        throw std::invalid_argument("changepoint_scan: weighted scan needs n >= 4");
    }
    std::vector<double> distinct = sample.sorted();
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const int D = static_cast<int>(distinct.size());

    // Full-sample cumulative counts at each distinct value.
    std::vector<long> total_le(D), total_lt(D);
    for (int j = 0; j < D; ++j) {
        total_le[j] = sample.count_le(distinct[j]);
        total_lt[j] = sample.count_lt(distinct[j]);
    }

    Fenwick prefix_counts(D);
    auto rank_of = [&](double v) {
        return static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), v) -
                                distinct.begin()) + 1; // 1-based
    };

    ChangePointResult out;
    out.weighted = weighted;
    out.argmax_k = 1;
    out.argmax_t = distinct.front();
    double n32 = std::pow(static_cast<double>(n), 1.5);
    for (long k = 1; k <= n - 1; ++k) {
        prefix_counts.add(rank_of(sample.values()[k - 1]));
        auto v_pre = integrated_edf_value_table(k, p);
        auto v_suf = integrated_edf_value_table(n - k, p);
        double scale = static_cast<double>(k) * (n - k) / n32;
        if (weighted) scale /= changepoint_weight(static_cast<double>(k) / n);
        double best_k = -1.0;
        double best_t = distinct.front();
        for (int j = 0; j < D; ++j) {
            long pre_le = prefix_counts.prefix(j + 1);
            long pre_lt = j > 0 ? prefix_counts.prefix(j) : 0;
            double d_right = std::abs(v_pre[pre_le] - v_suf[total_le[j] - pre_le]);
            double d_left = std::abs(v_pre[pre_lt] - v_suf[total_lt[j] - pre_lt]);
            double d = std::max(d_right, d_left);
            if (d > best_k) {
                best_k = d;
                best_t = distinct[j];
            }
        }
        double value = scale * best_k;
        out.profile.push_back({static_cast<int>(k), best_t, value});
        if (value > out.statistic) {
            out.statistic = value;
            out.argmax_k = static_cast<int>(k);
            out.argmax_t = best_t;
        }
    }
    return out;
}

// --- estimated parameters ----------------------------------------------------------

ParametricFamily exponential_family() {
    ParametricFamily fam;
    fam.dim = 1;
    fam.label = "exponential";
    fam.cdf = [](double t, const std::vector<double>& th) {
        return t <= 0.0 ? 0.0 : -std::expm1(-th[0] * t);
    };
    fam.inv_cdf = [](double u, const std::vector<double>& th) {
        return -std::log1p(-u) / th[0];
    };
    fam.grad_theta_cdf = [](double t, const std::vector<double>& th) {
        return std::vector<double>{t <= 0.0 ? 0.0 : t * std::exp(-th[0] * t)};
    };
    fam.estimate = [](const Sample& s) {
        double mean = std::accumulate(s.values().begin(), s.values().end(), 0.0) /
                      static_cast<double>(s.size());
        if (!(mean > 0.0)) throw std::runtime_error("exponential MLE needs positive mean");
        return std::vector<double>{1.0 / mean};
    };
    fam.sample = [](const std::vector<double>& th, int n, RngStream& rng) {
        std::vector<double> v(n);
        for (auto& x : v) x = -std::log(rng.uniform01_open_left()) / th[0];
        return Sample(std::move(v));
    };
    return fam;
}

ParametricFamily uniform_scale_family() {
    ParametricFamily fam;
    fam.dim = 1;
    fam.label = "uniform-scale";
    fam.cdf = [](double t, const std::vector<double>& th) {
        if (t <= 0.0) return 0.0;
        return t >= th[0] ? 1.0 : t / th[0];
    };
    fam.inv_cdf = [](double u, const std::vector<double>& th) { return u * th[0]; };
    fam.estimate = [](const Sample& s) { return std::vector<double>{s.max()}; };
    fam.sample = [](const std::vector<double>& th, int n, RngStream& rng) {
        std::vector<double> v(n);
        for (auto& x : v) x = th[0] * rng.uniform01();
        return Sample(std::move(v));
    };
    return fam;
}

ParametricFamily normal_family() {
    ParametricFamily fam;
    fam.dim = 2;
    fam.label = "normal";
    fam.cdf = [](double t, const std::vector<double>& th) {
        return 0.5 * std::erfc(-(t - th[0]) / (th[1] * 1.4142135623730950488));
    };
    fam.inv_cdf = [](double u, const std::vector<double>& th) {
        return th[0] + th[1] * normal_quantile(u);
    };
    fam.estimate = [](const Sample& s) {
        double n = static_cast<double>(s.size());
        double mean = std::accumulate(s.values().begin(), s.values().end(), 0.0) / n;
        double ss = 0.0;
        for (double x : s.values()) ss += (x - mean) * (x - mean);
        double sd = std::sqrt(ss / n);
        if (!(sd > 0.0)) throw std::runtime_error("normal MLE needs spread");
        return std::vector<double>{mean, sd};
    };
    fam.sample = [](const std::vector<double>& th, int n, RngStream& rng) {
        std::vector<double> v(n);
        for (auto& x : v) x = th[0] + th[1] * rng.normal();
        return Sample(std::move(v));
    };
    return fam;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::null_mc: return "null-mc";
        case Method::limiting_law: return "limiting-law";
        case Method::parametric_bootstrap: return "parametric-bootstrap";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    if (name == "null-mc") return Method::null_mc;
    if (name == "limiting-law") return Method::limiting_law;
    if (name == "parametric-bootstrap") return Method::parametric_bootstrap;
    throw std::invalid_argument("unknown method: " + name);
}

namespace {

double sup_scan_estimated(const Sample& sample, const ParametricFamily& family,
                          const std::vector<double>& theta, int p) {
    DistSpec fhat;
    fhat.cdf = [&family, theta](double t) { return family.cdf(t, theta); };
    fhat.label = family.label;
    return ks_integrated(sample, fhat, p);
}

} // namespace

TestReport estimated_gof(const Sample& sample, const ParametricFamily& family,
                         int p, long B, double alpha, RngStream rng) {
    if (B < 99) throw std::invalid_argument("estimated_gof: B must be >= 99");
    if (!family.estimate || !family.sample) {
        throw std::invalid_argument("estimated_gof: family needs estimate and sample");
    }
    auto theta_hat = family.estimate(sample);
    double stat = sup_scan_estimated(sample, family, theta_hat, p);

    std::vector<double> boot;
    boot.reserve(B);
    long dropped = 0;
    int n = static_cast<int>(sample.size());
    for (long b = 0; b < B; ++b) {
        RngStream sub = rng.fork(b);
        Sample resample = family.sample(theta_hat, n, sub);
        try {
            auto theta_star = family.estimate(resample);
            boot.push_back(sup_scan_estimated(resample, family, theta_star, p));
        } catch (const std::exception&) {
            ++dropped;
        }
    }
    if (dropped * 10 > B) {
        throw std::runtime_error("estimated_gof: more than 10% of bootstrap "
                                 "replicates failed to refit");
    }
    std::sort(boot.begin(), boot.end());
    long kept = static_cast<long>(boot.size());
    long ge = static_cast<long>(boot.end() -
                                std::lower_bound(boot.begin(), boot.end(), stat));
    double p_value = static_cast<double>(1 + ge) / static_cast<double>(kept + 1);
    long j = static_cast<long>(std::floor(alpha * (kept + 1)));
    double cv = j == 0 ? std::numeric_limits<double>::infinity() : boot[kept - j];

    TestReport report;
    report.statistic_name = "S";
    report.statistic = stat;
    report.p = p;
    report.alpha = alpha;
    report.critical_value = cv;
    report.p_value = p_value;
    report.reject = stat > cv;
    report.method = Method::parametric_bootstrap;
    report.seed = rng.key();
    report.n_replications = kept;
    report.dist_label = family.label;
    return report;
}

EstimatedLimitDraw simulate_estimated_limit_path(
    const ParametricFamily& family, const std::vector<double>& theta0,
    const std::function<std::vector<double>(double)>& score, int p, int m,
    int n_steps, RngStream& rng) {
    if (!family.grad_theta_cdf) {
        throw std::invalid_argument("simulate_estimated_limit: gradient required");
    }
    if (!family.inv_cdf) {
        throw std::invalid_argument("simulate_estimated_limit: quantile required");
    }
    KieferSheet sheet = simulate_kiefer(n_steps, m, rng);
    const auto& K_n = sheet.levels.back();
    const auto& grid = sheet.grid;
    const int d = family.dim;

    // W(n) = sum l(Q(u)) dK(n, u), with l evaluated at segment midpoints so
    // that quantiles stay interior.
    std::vector<double> W(d, 0.0);
    for (int i = 0; i + 1 < m; ++i) {
        double u_mid = 0.5 * (grid[i] + grid[i + 1]);
        double t_mid = family.inv_cdf(u_mid, theta0);
        auto l = score(t_mid);
        double dK = K_n[i + 1] - K_n[i];
        for (int k = 0; k < d; ++k) W[k] += l[k] * dK;
    }

    double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_steps));
    double c = 1.0 / factorial(p);
    EstimatedLimitDraw draw;
    draw.grid = grid;
    draw.values.assign(grid.size(), 0.0);
    for (int i = 1; i + 1 < m; ++i) {
        double t = family.inv_cdf(grid[i], theta0);
        auto grad = family.grad_theta_cdf(t, theta0);
        double drift = 0.0;
        for (int k = 0; k < d; ++k) drift += W[k] * grad[k];
        double g = inv_sqrt_n * (K_n[i] - drift);
        draw.values[i] = c * std::pow(grid[i], p) * g;
    }
    draw.score_integral.resize(d);
    for (int k = 0; k < d; ++k) draw.score_integral[k] = W[k] * inv_sqrt_n;
    return draw;
}

double simulate_estimated_limit(const ParametricFamily& family,
                                const std::vector<double>& theta0,
                                const std::function<std::vector<double>(double)>& score,
                                int p, int m, int n_steps, RngStream& rng) {
    auto draw = simulate_estimated_limit_path(family, theta0, score, p, m, n_steps, rng);
    double sup = 0.0;
    for (double v : draw.values) sup = std::max(sup, std::abs(v));
    return sup;
}

} // namespace ipef
