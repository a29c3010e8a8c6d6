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
// Partial-sum representation of the integrated uniform empirical process at
// u = 1: the random walk with increments ((1-U)^p - 1/(p+1))/p!, its
// neighborhood local time over I = [-1/2, 1/2], and the self-intersection
// local time whose pair kernel is the overlap length max(0, 1 - |S_i - S_j|).

#ifndef IPEF_LOCALTIME_HPP
#define IPEF_LOCALTIME_HPP

#include "ipef/rng.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace ipef {

struct WalkPath {
    int p = 1;
    std::vector<double> steps; // partial sums S_1..S_n
    long n() const { return static_cast<long>(steps.size()); }
};

// Path of S_j = (1/p!) sum_{i<=j} ((1-U_i)^p - 1/(p+1)), p >= 1.
WalkPath walk(int p, long n, RngStream& rng);

// #{i <= n : |S_i - x| <= 1/2} (closed interval).
long local_time(const WalkPath& path, double x, long n);

// L^(p)(t) = sum_{i<j<=floor(nt)} max(0, 1 - |S_i - S_j|), exactly, via a
// sorted two-pointer sweep in O(n log n).
double self_intersection(const WalkPath& path, double t);

// O(n^2) reference implementation (test oracle).
double self_intersection_naive(const WalkPath& path, double t);

// Least-squares slope of log L_n(1) against log n over n_list, averaged over
// independent paths. The paper-scale answer is 3/2 + o(1).
double growth_exponent(int p, const std::vector<long>& n_list, int n_paths,
                       std::uint64_t seed, int n_threads = 0);

// Slope of log L vs log n for one path's precomputed values (exposed for the
// degenerate-path checks).
double loglog_slope(const std::vector<long>& n_list, const std::vector<double>& L);

// chi^(p)(z) = int_0^1 exp(i z (u^p - 1/(p+1))) du, adaptive quadrature to
// absolute tolerance 1e-10.
std::complex<double> char_fn(int p, double z);

} // namespace ipef

#endif // IPEF_LOCALTIME_HPP
