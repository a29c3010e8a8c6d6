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
// The p-fold integrated empirical distribution function and its relatives.
//
// The iterated integral of the e.d.f. against itself collapses to a binomial
// coefficient: with m = n*F_n(t),
//
//     F_n^(p)(t) = C(m + p, p + 1) / n^(p+1),
//
// which counts nondecreasing (p+1)-tuples of indices below m. Its theoretical
// counterpart is F(t)^(p+1)/(p+1)!. Two variant families replace the tuple
// count by power sums (tilde/breve), and a polynomial-indexed family combines
// them. All evaluators here are pure functions of (n, count, p), so every
// statistic downstream is distribution free under a continuous null.

#ifndef IPEF_EMPIRICAL_HPP
#define IPEF_EMPIRICAL_HPP

#include "ipef/dist.hpp"
#include "ipef/sample.hpp"

#include <vector>

namespace ipef {

// Evaluation side at a jump point of a step function.
enum class Side { right, left };

struct IntegratedEdfValue {
    long u_count = 0;   // n * F_n(t), the only way the sample enters
    double value = 0.0; // F_n^(p)(t) in [0,1]
    int p = 0;
};

double factorial(int k);

// F_n(t) = count/n.
double edf_eval(const Sample& sample, double t, Side side = Side::right);

// Closed-form C(count + p, p + 1)/n^(p+1) given the count directly. Exact
// integer arithmetic while C(n+p, p+1) fits (n + p <= 60), log-gamma beyond.
double integrated_edf_from_count(long n, long count, int p);

IntegratedEdfValue integrated_edf(const Sample& sample, int p, double t,
                                  Side side = Side::right);

// All n+1 closed-form values at once (index = count). The statistic scans
// evaluate every level anyway; the table uses the exact ratio recurrence
// v[m+1] = v[m] (m+p+1)/m, which avoids per-call log-gamma at large n.
std::vector<double> integrated_edf_value_table(long n, int p);

// Test oracle: enumerates the tuples 1 <= i_1 <= ... <= i_{p+1} <= n*F_n(t)
// one by one. Guarded to n <= 12, p <= 4.
double integrated_edf_oracle(const Sample& sample, int p, double t);

// F^(p) at u = F(t): u^(p+1)/(p+1)!.
double theoretical_integrated(double u, int p);

// sqrt(n) (F_n^(p)(t) - F0^(p)(t)).
double alpha_np(const Sample& sample, const DistSpec& f0, int p, double t);

// Power-sum families: sum_{i=1}^{m} i^p / n^(p+1) and the shifted
// sum_{i=0}^{m-1} i^p / n^(p+1). Their common theoretical d.f. is
// u^(p+1)/(p+1).
double tilde_integrated_edf(const Sample& sample, int p, double t,
                            Side side = Side::right);
double breve_integrated_edf(const Sample& sample, int p, double t,
                            Side side = Side::right);
double tilde_theoretical(double u, int p);

// Family indexed by a two-variable polynomial P(x,y) = sum a[i][j] x^i y^j:
// evaluates sum_ij a[i][j] F_n(t)^j tilde_i(t) and its theoretical
// counterpart sum_ij a[i][j]/(i+1) u^(i+j+1).
using PolyCoeffs = std::vector<std::vector<double>>;
double poly_integrated_edf(const Sample& sample, const PolyCoeffs& coeffs, double t,
                           Side side = Side::right);
double poly_theoretical(const PolyCoeffs& coeffs, double u);

// Coefficients a_k (k = 1..p) of the exact finite-n representation
//   F_n^(p) = F_n^(p+1)/(p+1)! + sum_k a_k F_n^k / n^(p-k+1),
// obtained by expanding x (x+1) ... (x+p) / (p+1)!. Their sum, which bounds
// |F_n^(p) - F_n^(p+1)/(p+1)!| by (1 - 1/(p+1)!)/n, is available in closed
// form for any p.
std::vector<double> edf_correction_coefficients(int p);
double edf_correction_bound(int p);

// Coefficients b_k = C(p+1, k)/(p+1)! (k = 2..p+1) of the expansion of
// alpha_n^(p) around F(t)^p alpha_n(t)/p!.
std::vector<double> process_expansion_coefficients(int p);

} // namespace ipef

#endif // IPEF_EMPIRICAL_HPP
