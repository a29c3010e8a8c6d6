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

#ifndef IPEF_DIST_HPP
#define IPEF_DIST_HPP

#include <functional>
#include <string>
#include <vector>

namespace ipef {

// A continuous distribution given by its d.f. and quantile function.
struct DistSpec {
    std::function<double(double)> cdf;     // t -> [0,1], nondecreasing
    std::function<double(double)> inv_cdf; // u in (0,1) -> t
    std::string label;
};

DistSpec uniform_dist();                        // U(0,1)
DistSpec exponential_dist(double rate);         // F(t) = 1 - exp(-rate t)
DistSpec normal_dist(double mu, double sigma);

// Piecewise-linear d.f. through (t, F(t)) knots; knots must be strictly
// increasing in t and nondecreasing in F with F spanning [0,1].
DistSpec table_dist(const std::vector<std::pair<double, double>>& knots,
                    const std::string& label = "table");

// Load (t, F) knots from a two-column text/CSV file.
DistSpec table_dist_from_file(const std::string& path);

// Parse a registry spec: "uniform", "exponential:<rate>" (alias "exp"),
// "normal:<mu>,<sigma>", "table:<path>".
DistSpec parse_dist(const std::string& spec);

// Standard normal quantile, accurate to full double precision (rational
// initial guess refined with one Halley step against erfc).
double normal_quantile(double u);

} // namespace ipef

#endif // IPEF_DIST_HPP
