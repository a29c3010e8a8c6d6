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

#include "ipef/localtime.hpp"

#include "ipef/empirical.hpp"
#include "ipef/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipef {

WalkPath walk(int p, long n, RngStream& rng) {
    if (p < 1) throw std::invalid_argument("walk: p must be >= 1");
    if (n < 1) throw std::invalid_argument("walk: n must be >= 1");
    WalkPath path;
    path.p = p;
    path.steps.resize(n);
    double c = 1.0 / factorial(p);
    double centering = 1.0 / (p + 1);
    double s = 0.0;
    for (long i = 0; i < n; ++i) {
        double u = rng.uniform01();
        s += c * (std::pow(1.0 - u, p) - centering);
        path.steps[i] = s;
    }
    return path;
}

long local_time(const WalkPath& path, double x, long n) {
    if (n > path.n()) throw std::invalid_argument("local_time: horizon beyond path");
    long count = 0;
    for (long i = 0; i < n; ++i) {
        if (std::abs(path.steps[i] - x) <= 0.5) ++count;
    }
    return count;
}

double self_intersection(const WalkPath& path, double t) {
    long q = static_cast<long>(std::floor(static_cast<double>(path.n()) * t));
    if (q < 2) throw std::invalid_argument("self_intersection: floor(nt) >= 2 required");
    std::vector<double> s(path.steps.begin(), path.steps.begin() + q);
    std::sort(s.begin(), s.end());
    // Pairs within distance 1 form a sliding window; the kernel sum over the
    // window is cnt*(1 - s_j) + sum of window values.
    double total = 0.0, window_sum = 0.0;
    std::size_t lo = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        while (s[j] - s[lo] >= 1.0) {
            window_sum -= s[lo];
            ++lo;
        }
        double cnt = static_cast<double>(j - lo);
        total += cnt * (1.0 - s[j]) + window_sum;
        window_sum += s[j];
    }
    return total;
}

double self_intersection_naive(const WalkPath& path, double t) {
    long q = static_cast<long>(std::floor(static_cast<double>(path.n()) * t));
    if (q < 2) throw std::invalid_argument("self_intersection: floor(nt) >= 2 required");
    double total = 0.0;
    for (long i = 0; i < q; ++i) {
        for (long j = i + 1; j < q; ++j) {
            total += std::max(0.0, 1.0 - std::abs(path.steps[i] - path.steps[j]));
        }
    }
    return total;
}

double loglog_slope(const std::vector<long>& n_list, const std::vector<double>& L) {
    if (n_list.size() != L.size() || n_list.size() < 2) {
        throw std::invalid_argument("loglog_slope: need matching lists, length >= 2");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double m = static_cast<double>(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        double x = std::log(static_cast<double>(n_list[i]));
        double y = std::log(L[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double growth_exponent(int p, const std::vector<long>& n_list, int n_paths,
                       std::uint64_t seed, int n_threads) {
    if (n_list.size() < 2) throw std::invalid_argument("growth_exponent: short n_list");
    double span = std::log10(static_cast<double>(n_list.back())) -
                  std::log10(static_cast<double>(n_list.front()));
    if (span < 1.0) {
        throw std::invalid_argument("growth_exponent: n_list must span >= 2 decades "
                                    "(factor >= 10)");
    }
    RngStream master = RngStream::seeded(seed);
    long n_max = n_list.back();
    auto slopes = parallel_map(n_paths, n_threads, [&](long path_idx) {
        RngStream sub = master.fork(static_cast<std::uint64_t>(path_idx));
        WalkPath path = walk(p, n_max, sub);
        std::vector<double> L;
        L.reserve(n_list.size());
        for (long n : n_list) {
            WalkPath head;
            head.p = p;
            head.steps.assign(path.steps.begin(), path.steps.begin() + n);
            L.push_back(self_intersection(head, 1.0));
        }
        return loglog_slope(n_list, L);
    });
    double mean = 0.0;
    for (double s : slopes) mean += s;
    return mean / static_cast<double>(n_paths);
}

namespace {

std::complex<double> integrand(int p, double z, double u) {
    double phase = z * (std::pow(u, p) - 1.0 / (p + 1));
    return {std::cos(phase), std::sin(phase)};
}

std::complex<double> simpson(double a, double b, std::complex<double> fa,
                             std::complex<double> fm, std::complex<double> fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

std::complex<double> adaptive(int p, double z, double a, double b,
                              std::complex<double> fa, std::complex<double> fm,
                              std::complex<double> fb, std::complex<double> whole,
                              double tol, int depth) {
    double m = 0.5 * (a + b);
    std::complex<double> fl = integrand(p, z, 0.5 * (a + m));
    std::complex<double> fr = integrand(p, z, 0.5 * (m + b));
    std::complex<double> left = simpson(a, m, fa, fl, fm);
    std::complex<double> right = simpson(m, b, fm, fr, fb);
    std::complex<double> delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive(p, z, a, m, fa, fl, fm, left, tol / 2.0, depth - 1) +
           adaptive(p, z, m, b, fm, fr, fb, right, tol / 2.0, depth - 1);
}

} // namespace

std::complex<double> char_fn(int p, double z) {
    if (p < 1) throw std::invalid_argument("char_fn: p must be >= 1");
    auto fa = integrand(p, z, 0.0);
    auto fm = integrand(p, z, 0.5);
    auto fb = integrand(p, z, 1.0);
    auto whole = simpson(0.0, 1.0, fa, fm, fb);
    return adaptive(p, z, 0.0, 1.0, fa, fm, fb, whole, 1e-10, 48);
}

} // namespace ipef
