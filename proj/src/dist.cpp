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

#include "ipef/dist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ipef {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

double normal_cdf_standard(double z) {
    return 0.5 * std::erfc(-z / kSqrt2);
}

} // namespace

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("normal_quantile: u must lie in (0,1)");
    }
    // Acklam's rational approximation, |rel err| < 1.15e-9.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (u < plow) {
        double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - plow) {
        double q = u - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Halley step against the exact cdf brings the guess to ~1 ulp.
    double e = normal_cdf_standard(x) - u;
    double pdf = std::exp(-0.5 * x * x) * 0.3989422804014326779399460599344;
    double w = e / pdf;
    return x - w / (1.0 + 0.5 * x * w);
}

DistSpec uniform_dist() {
    DistSpec d;
    d.cdf = [](double t) { return t <= 0.0 ? 0.0 : (t >= 1.0 ? 1.0 : t); };
    d.inv_cdf = [](double u) { return u; };
    d.label = "uniform";
    return d;
}

DistSpec exponential_dist(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential_dist: rate must be > 0");
    DistSpec d;
    d.cdf = [rate](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-rate * t); };
    d.inv_cdf = [rate](double u) { return -std::log1p(-u) / rate; };
    d.label = "exponential(" + std::to_string(rate) + ")";
    return d;
}

DistSpec normal_dist(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("normal_dist: sigma must be > 0");
    DistSpec d;
    d.cdf = [mu, sigma](double t) { return normal_cdf_standard((t - mu) / sigma); };
    d.inv_cdf = [mu, sigma](double u) { return mu + sigma * normal_quantile(u); };
    d.label = "normal(" + std::to_string(mu) + "," + std::to_string(sigma) + ")";
    return d;
}

DistSpec table_dist(const std::vector<std::pair<double, double>>& knots,
                    const std::string& label) {
    if (knots.size() < 2) throw std::invalid_argument("table_dist: need >= 2 knots");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i].first > knots[i - 1].first) ||
            knots[i].second < knots[i - 1].second) {
            throw std::invalid_argument("table_dist: knots must be increasing in t "
                                        "and nondecreasing in F");
        }
    }
    if (std::abs(knots.front().second) > 1e-12 ||
        std::abs(knots.back().second - 1.0) > 1e-12) {
        throw std::invalid_argument("table_dist: F must span [0,1]");
    }
    auto pts = knots;
    pts.front().second = 0.0;
    pts.back().second = 1.0;
    DistSpec d;
    d.cdf = [pts](double t) {
        if (t <= pts.front().first) return 0.0;
        if (t >= pts.back().first) return 1.0;
        auto it = std::upper_bound(pts.begin(), pts.end(), t,
                                   [](double v, const auto& k) { return v < k.first; });
        auto hi = *it, lo = *(it - 1);
        double w = (t - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
    };
    d.inv_cdf = [pts](double u) {
        if (u <= 0.0) return pts.front().first;
        if (u >= 1.0) return pts.back().first;
        auto it = std::upper_bound(pts.begin(), pts.end(), u,
                                   [](double v, const auto& k) { return v < k.second; });
        if (it == pts.begin()) return pts.front().first;
        if (it == pts.end()) return pts.back().first;
        auto hi = *it, lo = *(it - 1);
        if (hi.second <= lo.second) return lo.first; // flat piece
        double w = (u - lo.second) / (hi.second - lo.second);
        return lo.first + w * (hi.first - lo.first);
    };
    d.label = label;
    return d;
}

DistSpec table_dist_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open distribution table: " + path);
    std::vector<std::pair<double, double>> knots;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (auto& ch : line) {
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        }
        std::istringstream ss(line);
        double t, F;
        if (ss >> t >> F) knots.emplace_back(t, F);
    }
    return table_dist(knots, "table(" + path + ")");
}

DistSpec parse_dist(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "uniform") return uniform_dist();
    if (name == "exponential" || name == "exp") {
        return exponential_dist(args.empty() ? 1.0 : std::stod(args));
    }
    if (name == "normal") {
        double mu = 0.0, sigma = 1.0;
        if (!args.empty()) {
            auto comma = args.find(',');
            mu = std::stod(args.substr(0, comma));
            if (comma != std::string::npos) sigma = std::stod(args.substr(comma + 1));
        }
        return normal_dist(mu, sigma);
    }
    if (name == "table") {
        if (args.empty()) throw std::invalid_argument("table distribution needs a path");
        return table_dist_from_file(args);
    }
    throw std::invalid_argument("unknown distribution: " + spec);
}

} // namespace ipef
