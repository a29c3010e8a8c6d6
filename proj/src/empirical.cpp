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

#include "ipef/empirical.hpp"

#include <cmath>
#include <stdexcept>

namespace ipef {

double factorial(int k) {
    static const double table[] = {
        1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0,
        3628800.0, 39916800.0, 479001600.0, 6227020800.0, 87178291200.0,
        1307674368000.0, 20922789888000.0, 355687428096000.0,
        6402373705728000.0, 121645100408832000.0, 2432902008176640000.0};
    if (k < 0) throw std::domain_error("factorial: negative argument");
    if (k <= 20) return table[k];
    return std::exp(std::lgamma(static_cast<double>(k) + 1.0));
}

double edf_eval(const Sample& sample, double t, Side side) {
    long c = side == Side::right ? sample.count_le(t) : sample.count_lt(t);
    return static_cast<double>(c) / static_cast<double>(sample.size());
}

double integrated_edf_from_count(long n, long count, int p) {
    if (n < 1) throw std::domain_error("integrated_edf: n must be >= 1");
    if (p < 0) throw std::domain_error("integrated_edf: p must be >= 0");
    if (count < 0 || count > n) throw std::domain_error("integrated_edf: bad count");
    if (count == 0) return 0.0;
    if (n + p <= 60) {
        // C(count+p, p+1) exactly; C(60+p, p+1) <= C(60,30) < 2^127.
        unsigned __int128 binom = 1;
        for (int i = 0; i <= p; ++i) {
            binom = binom * static_cast<unsigned long long>(count + i) /
                    static_cast<unsigned long long>(i + 1);
        }
        return static_cast<double>(binom) /
               std::pow(static_cast<double>(n), p + 1);
    }
    double m = static_cast<double>(count);
    double log_binom = std::lgamma(m + p + 1) - std::lgamma(m) - std::lgamma(p + 2.0);
    return std::exp(log_binom - (p + 1) * std::log(static_cast<double>(n)));
}

IntegratedEdfValue integrated_edf(const Sample& sample, int p, double t, Side side) {
    long c = side == Side::right ? sample.count_le(t) : sample.count_lt(t);
    IntegratedEdfValue out;
    out.u_count = c;
    out.p = p;
    out.value = integrated_edf_from_count(static_cast<long>(sample.size()), c, p);
    return out;
}

std::vector<double> integrated_edf_value_table(long n, int p) {
    if (n < 1) throw std::domain_error("integrated_edf_value_table: n >= 1");
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    v[0] = 0.0;
    if (n + p <= 60) {
        for (long m = 1; m <= n; ++m) v[m] = integrated_edf_from_count(n, m, p);
        return v;
    }
    v[1] = std::pow(static_cast<double>(n), -(p + 1));
    for (long m = 1; m < n; ++m) {
        v[m + 1] = v[m] * static_cast<double>(m + p + 1) / static_cast<double>(m);
    }
    return v;
}

namespace {

// #{(i_1,...,i_depth) : lo <= i_1 <= ... <= i_depth <= m}, by enumeration.
long count_tuples(int depth, long lo, long m) {
    if (depth == 0) return 1;
    long total = 0;
    for (long i = lo; i <= m; ++i) total += count_tuples(depth - 1, i, m);
    return total;
}

} // namespace

double integrated_edf_oracle(const Sample& sample, int p, double t) {
    long n = static_cast<long>(sample.size());
    if (n > 12 || p > 4 || p < 0) {
        throw std::domain_error("integrated_edf_oracle: guarded to n <= 12, p <= 4");
    }
    long m = sample.count_le(t);
    long tuples = count_tuples(p + 1, 1, m);
    return static_cast<double>(tuples) / std::pow(static_cast<double>(n), p + 1);
}

double theoretical_integrated(double u, int p) {
    if (u < 0.0 || u > 1.0) throw std::domain_error("theoretical_integrated: u in [0,1]");
    return std::pow(u, p + 1) / factorial(p + 1);
}

double alpha_np(const Sample& sample, const DistSpec& f0, int p, double t) {
    double emp = integrated_edf(sample, p, t).value;
    double theo = theoretical_integrated(f0.cdf(t), p);
    return std::sqrt(static_cast<double>(sample.size())) * (emp - theo);
}

namespace {

double power_sum(long from, long to, int p) {
    double s = 0.0;
    for (long i = from; i <= to; ++i) s += std::pow(static_cast<double>(i), p);
    return s;
}

} // namespace

double tilde_integrated_edf(const Sample& sample, int p, double t, Side side) {
    long n = static_cast<long>(sample.size());
    long m = side == Side::right ? sample.count_le(t) : sample.count_lt(t);
    return power_sum(1, m, p) / std::pow(static_cast<double>(n), p + 1);
}

double breve_integrated_edf(const Sample& sample, int p, double t, Side side) {
    long n = static_cast<long>(sample.size());
    long m = side == Side::right ? sample.count_le(t) : sample.count_lt(t);
    return power_sum(0, m - 1, p) / std::pow(static_cast<double>(n), p + 1);
}

double tilde_theoretical(double u, int p) {
    return std::pow(u, p + 1) / (p + 1);
}

double poly_integrated_edf(const Sample& sample, const PolyCoeffs& coeffs, double t,
                           Side side) {
    double fn = edf_eval(sample, t, side);
    double total = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        double tilde_i = tilde_integrated_edf(sample, static_cast<int>(i), t, side);
        for (std::size_t j = 0; j < coeffs[i].size(); ++j) {
            if (coeffs[i][j] != 0.0) {
                total += coeffs[i][j] * std::pow(fn, static_cast<double>(j)) * tilde_i;
            }
        }
    }
    return total;
}

double poly_theoretical(const PolyCoeffs& coeffs, double u) {
    double total = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (std::size_t j = 0; j < coeffs[i].size(); ++j) {
            if (coeffs[i][j] != 0.0) {
                total += coeffs[i][j] / static_cast<double>(i + 1) *
                         std::pow(u, static_cast<double>(i + j + 1));
            }
        }
    }
    return total;
}

std::vector<double> edf_correction_coefficients(int p) {
    if (p < 0) throw std::domain_error("edf_correction_coefficients: p >= 0");
    // Expand x (x+1) ... (x+p); poly[k] is the coefficient of x^k.
    std::vector<double> poly{0.0, 1.0};
    for (int i = 1; i <= p; ++i) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * i;
            next[k + 1] += poly[k];
        }
        poly.swap(next);
    }
    double c = factorial(p + 1);
    std::vector<double> a(p);
    for (int k = 1; k <= p; ++k) a[k - 1] = poly[k] / c;
    return a;
}

double edf_correction_bound(int p) {
    return 1.0 - 1.0 / factorial(p + 1);
}

std::vector<double> process_expansion_coefficients(int p) {
    std::vector<double> b;
    double c = factorial(p + 1);
    for (int k = 2; k <= p + 1; ++k) {
        double binom = 1.0;
        for (int i = 0; i < k; ++i) binom = binom * (p + 1 - i) / (i + 1);
        b.push_back(binom / c);
    }
    return b;
}

} // namespace ipef
