#include "ipef/stats.hpp"

#include "ipef/gaussproc.hpp"
#include "ipef/montecarlo.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ipef;

TEST_SUITE_BEGIN("stats");

namespace {

Sample random_sample(int n, RngStream& rng) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform01();
    return Sample(std::move(v));
}

// Adaptive Simpson of f on [a,b] (smooth segments only).
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double fl = f(0.5 * (a + m)), fr = f(0.5 * (m + b));
    double left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, m, fa, fl, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, fr, fb, right, tol / 2, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Quadrature oracle for n int (F_n^(p) - g)^2 dF0: integrate segment by
// segment between jump points, evaluating the step function directly.
double cvm_quadrature_oracle(const Sample& s, const DistSpec& f0, int p) {
    long n = static_cast<long>(s.size());
    std::vector<double> us{0.0, 1.0};
    for (double x : s.sorted()) us.push_back(f0.cdf(x));
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    double c = factorial(p + 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < us.size(); ++i) {
        double a = us[i], b = us[i + 1];
        // level on (a, b): count of sample u-values <= midpoint
        double mid = 0.5 * (a + b);
        long count = 0;
        for (double x : s.sorted()) {
            if (f0.cdf(x) <= mid) ++count;
        }
        double v = integrated_edf_from_count(n, count, p);
        auto f = [&](double u) {
            double d = v - std::pow(u, p + 1) / c;
            return d * d;
        };
        total += adaptive_simpson(f, a, b, 1e-13);
    }
    return static_cast<double>(n) * total;
}

double omega_quadrature_oracle(const Sample& s, const DistSpec& f0, int p, double r) {
    long n = static_cast<long>(s.size());
    std::vector<double> us{0.0, 1.0};
    for (double x : s.sorted()) us.push_back(f0.cdf(x));
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    double c = factorial(p + 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < us.size(); ++i) {
        double a = us[i], b = us[i + 1];
        double mid = 0.5 * (a + b);
        long count = 0;
        for (double x : s.sorted()) {
            if (f0.cdf(x) <= mid) ++count;
        }
        double v = integrated_edf_from_count(n, count, p);
        // split at the crossing so each sub-piece is smooth
        double ga = std::pow(a, p + 1) / c, gb = std::pow(b, p + 1) / c;
        auto f = [&](double u) {
            return std::pow(std::abs(v - std::pow(u, p + 1) / c), r);
        };
        if (v > ga && v < gb) {
            double star = std::pow(v * c, 1.0 / (p + 1));
            total += adaptive_simpson(f, a, star, 1e-13);
            total += adaptive_simpson(f, star, b, 1e-13);
        } else {
            total += adaptive_simpson(f, a, b, 1e-13);
        }
    }
    return std::sqrt(static_cast<double>(n)) * std::pow(total, 1.0 / r);
}

} // namespace

TEST_CASE("ks_integrated worked examples") {
    DistSpec u01 = uniform_dist();
    Sample s({0.1, 0.5, 0.9});
    double expect = std::sqrt(3.0) * (2.0 / 3.0 - 0.9 + 0.9 - 2.0 / 3.0);
    // hand scan: max gap is |1/3 - 0.1|? no: gaps are .2333 at (i=1 post? ...)
    expect = std::sqrt(3.0) * (7.0 / 30.0);
    CHECK(ks_integrated(s, u01, 0) == doctest::Approx(expect).epsilon(1e-12));

    Sample one({0.5});
    CHECK(ks_integrated(one, u01, 1) == doctest::Approx(7.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("sup scan is invariant under joint monotone transforms") {
    RngStream rng = RngStream::seeded(20);
    DistSpec u01 = uniform_dist();
    DistSpec logn;
    logn.cdf = [](double t) {
        if (t <= 0.0) return 0.0;
        double v = std::log(t);
        return v <= 0.0 ? 0.0 : (v >= 1.0 ? 1.0 : v);
    };
    logn.label = "exp-transformed-uniform";
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng.next_u64() % 12);
        Sample s = random_sample(n, rng);
        std::vector<double> ex;
        for (double x : s.values()) ex.push_back(std::exp(x));
        Sample se(ex);
        for (int p = 0; p <= 3; ++p) {
            CHECK(ks_integrated(s, u01, p) ==
                  doctest::Approx(ks_integrated(se, logn, p)).epsilon(1e-12));
            CHECK(cvm_integrated(s, u01, p) ==
                  doctest::Approx(cvm_integrated(se, logn, p)).epsilon(1e-10));
        }
        CHECK(omega_integrated(s, u01, 1, 1.5) ==
              doctest::Approx(omega_integrated(se, logn, 1, 1.5)).epsilon(1e-9));
    }
}

TEST_CASE("scan completeness: no interior point beats the jump scan") {
    RngStream rng = RngStream::seeded(21);
    DistSpec u01 = uniform_dist();
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + static_cast<int>(rng.next_u64() % 10);
        Sample s = random_sample(n, rng);
        for (int p = 0; p <= 2; ++p) {
            double sup = ks_integrated(s, u01, p);
            double root_n = std::sqrt(static_cast<double>(n));
            for (int probe = 0; probe < 1000; ++probe) {
                double t = rng.uniform01() * 1.2 - 0.1;
                double g = theoretical_integrated(u01.cdf(std::clamp(t, 0.0, 1.0)), p);
                double right = integrated_edf(s, p, t).value;
                double left = integrated_edf(s, p, t, Side::left).value;
                double v = root_n * std::max(std::abs(right - g), std::abs(left - g));
                CHECK(v <= sup + 1e-12);
            }
        }
    }
}

TEST_CASE("cvm_integrated: classical p = 0 identity and worked example") {
    DistSpec u01 = uniform_dist();
    Sample one({0.5});
    CHECK(cvm_integrated(one, u01, 0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));

    RngStream rng = RngStream::seeded(22);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng.next_u64() % 20);
        Sample s = random_sample(n, rng);
        double identity = 1.0 / (12.0 * n);
        const auto& xs = s.sorted();
        for (int i = 1; i <= n; ++i) {
            double d = xs[i - 1] - (2.0 * i - 1.0) / (2.0 * n);
            identity += d * d;
        }
        CHECK(cvm_integrated(s, u01, 0) == doctest::Approx(identity).epsilon(1e-12));
    }
}

TEST_CASE("cvm_integrated equals the quadrature oracle") {
    RngStream rng = RngStream::seeded(23);
    DistSpec u01 = uniform_dist();
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + static_cast<int>(rng.next_u64() % 50);
        int p = static_cast<int>(rng.next_u64() % 4);
        Sample s = random_sample(n, rng);
        double exact = cvm_integrated(s, u01, p);
        double oracle = cvm_quadrature_oracle(s, u01, p);
        CHECK(exact == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("omega_integrated: identities and oracles") {
    DistSpec u01 = uniform_dist();
    Sample one({0.5});
    CHECK(omega_integrated(one, u01, 0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));

    RngStream rng = RngStream::seeded(24);
    // r = 2 equals sqrt of the quadratic statistic
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng.next_u64() % 20);
        int p = static_cast<int>(rng.next_u64() % 4);
        Sample s = random_sample(n, rng);
        CHECK(omega_integrated(s, u01, p, 2.0) ==
              doctest::Approx(std::sqrt(cvm_integrated(s, u01, p))).epsilon(1e-10));
    }
    // p = 0 closed form vs quadrature
    for (double r : {1.0, 1.5, 3.0}) {
        for (int trial = 0; trial < 10; ++trial) {
            int n = 1 + static_cast<int>(rng.next_u64() % 20);
            Sample s = random_sample(n, rng);
            CHECK(omega_integrated(s, u01, 0, r) ==
                  doctest::Approx(omega_quadrature_oracle(s, u01, 0, r)).epsilon(1e-8));
        }
    }
    // p >= 1 piecewise route vs quadrature
    for (double r : {1.0, 1.5, 3.0}) {
        for (int trial = 0; trial < 10; ++trial) {
            int n = 1 + static_cast<int>(rng.next_u64() % 15);
            int p = 1 + static_cast<int>(rng.next_u64() % 3);
            Sample s = random_sample(n, rng);
            CHECK(omega_integrated(s, u01, p, r) ==
                  doctest::Approx(omega_quadrature_oracle(s, u01, p, r)).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS((void)omega_integrated(one, u01, 0, 0.5), std::invalid_argument);
}

TEST_CASE("two_sample_process: worked example and q = 1 reduction") {
    Sample x({0.3}), y({0.7});
    CHECK(two_sample_process(x, y, 0, 1, 0.5) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    Sample same({0.1, 0.6});
    for (double t : {0.05, 0.1, 0.3, 0.6, 0.9}) {
        CHECK(two_sample_process(same, same, 1, 2, t) == 0.0);
    }
    // q = 1 is the plain difference of integrated e.d.f.s
    RngStream rng = RngStream::seeded(25);
    Sample a = random_sample(5, rng), b = random_sample(7, rng);
    for (double t : {0.2, 0.5, 0.8}) {
        double scale = std::sqrt(5.0 * 7.0 / 12.0);
        double expect = scale * (integrated_edf(a, 2, t).value -
                                 integrated_edf(b, 2, t).value);
        CHECK(two_sample_process(a, b, 2, 1, t) == doctest::Approx(expect));
    }
}

TEST_CASE("two_sample_statistics: worked example, symmetry, antisymmetry") {
    Sample x({0.3}), y({0.7});
    auto st = two_sample_statistics(x, y, 0, 1);
    CHECK(st.S == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(st.T == doctest::Approx(0.25).epsilon(1e-12));

    RngStream rng = RngStream::seeded(26);
    for (int trial = 0; trial < 20; ++trial) {
        Sample a = random_sample(4 + static_cast<int>(rng.next_u64() % 8), rng);
        Sample b = random_sample(4 + static_cast<int>(rng.next_u64() % 8), rng);
        int p = static_cast<int>(rng.next_u64() % 3);
        int q = 1 + static_cast<int>(rng.next_u64() % 3);
        auto ab = two_sample_statistics(a, b, p, q);
        auto ba = two_sample_statistics(b, a, p, q);
        CHECK(ab.S == doctest::Approx(ba.S).epsilon(1e-12));
        CHECK(ab.T == doctest::Approx(ba.T).epsilon(1e-12));
        // pointwise antisymmetry
        double t = rng.uniform01();
        CHECK(two_sample_process(a, b, p, q, t) ==
              doctest::Approx(-two_sample_process(b, a, p, q, t)).epsilon(1e-12));
        // identical samples give identically zero statistics
        auto self_stats = two_sample_statistics(a, a, p, q);
        CHECK(self_stats.S == 0.0);
        CHECK(self_stats.T == 0.0);
    }
}

TEST_CASE("ksample_statistics: zero case, nonnegativity, K = 2 identities") {
    DistSpec u01 = uniform_dist();
    RngStream rng = RngStream::seeded(27);
    Sample a = random_sample(6, rng);
    auto zero = ksample_statistics({a, a, a}, u01, 1);
    CHECK(zero.S == 0.0);
    CHECK(zero.T == 0.0);

    for (int trial = 0; trial < 30; ++trial) {
        int n1 = 2 + static_cast<int>(rng.next_u64() % 10);
        int n2 = 2 + static_cast<int>(rng.next_u64() % 10);
        int p = static_cast<int>(rng.next_u64() % 3);
        Sample x = random_sample(n1, rng);
        Sample y = random_sample(n2, rng);
        auto k2 = ksample_statistics({x, y}, u01, p);
        auto ts = two_sample_statistics_f0(x, y, p, 1, u01);
        CHECK(k2.S == doctest::Approx(ts.S * ts.S).epsilon(1e-10));
        CHECK(k2.T == doctest::Approx(ts.T).epsilon(1e-10));
        // pointwise: xi_2 = xi^2, and nonnegative
        for (int probe = 0; probe < 10; ++probe) {
            double t = rng.uniform01();
            double xi2 = k2.process(t);
            double xi = two_sample_process(x, y, p, 1, t);
            CHECK(xi2 >= 0.0);
            CHECK(xi2 == doctest::Approx(xi * xi).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS((void)ksample_statistics({a}, u01, 1), std::invalid_argument);
}

TEST_CASE("changepoint_scan: two-point case and invariances") {
    Sample two({0.8, 0.2});
    auto res = changepoint_scan(two, 0, false);
    CHECK(res.statistic == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));
    CHECK(res.argmax_k == 1);

    RngStream rng = RngStream::seeded(28);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 5 + static_cast<int>(rng.next_u64() % 20);
        std::vector<double> v(n);
        for (auto& x : v) x = rng.uniform01();
        Sample s(v);
        std::vector<double> ex;
        for (double x : v) ex.push_back(std::exp(2.0 * x) + 1.0);
        Sample se(ex);
        for (int p = 0; p <= 2; ++p) {
            auto r1 = changepoint_scan(s, p, false);
            auto r2 = changepoint_scan(se, p, false);
            CHECK(r1.statistic == doctest::Approx(r2.statistic).epsilon(1e-12));
            CHECK(r1.argmax_k == r2.argmax_k);
            auto w1 = changepoint_scan(s, p, true);
            auto w2 = changepoint_scan(se, p, true);
            CHECK(w1.statistic == doctest::Approx(w2.statistic).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS((void)changepoint_scan(two, 0, true), std::invalid_argument);
}

TEST_CASE("changepoint_scan picks up a mid-sample break") {
    // two uniform regimes split at n/2; argmax_k should land near the middle
    RngStream rng = RngStream::seeded(29);
    const int n = 200, reps = 100;
    int hits = 0;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<double> v(n);
        for (int i = 0; i < n / 2; ++i) v[i] = 0.5 * rng.uniform01();
        for (int i = n / 2; i < n; ++i) v[i] = 0.5 + 0.5 * rng.uniform01();
        auto res = changepoint_scan(Sample(v), 1, false);
        if (res.argmax_k >= 60 && res.argmax_k <= 140) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("changepoint profile rows match the reported maximum") {
    RngStream rng = RngStream::seeded(30);
    Sample s = random_sample(12, rng);
    auto res = changepoint_scan(s, 1, false);
    REQUIRE(res.profile.size() == 11);
    double best = 0.0;
    for (const auto& row : res.profile) best = std::max(best, row.value);
    CHECK(res.statistic == doctest::Approx(best));
}

TEST_CASE("estimated_gof: scale equivariance and the Lilliefors reduction") {
    RngStream rng = RngStream::seeded(31);
    std::vector<double> base(40);
    for (auto& x : base) x = rng.uniform01() * 3.0;
    Sample s1(base);
    std::vector<double> scaled;
    for (double x : base) scaled.push_back(7.5 * x);
    Sample s2(scaled);

    auto fam = uniform_scale_family();
    auto r1 = estimated_gof(s1, fam, 1, 199, 0.05, RngStream::seeded(5));
    auto r2 = estimated_gof(s2, fam, 1, 199, 0.05, RngStream::seeded(5));
    CHECK(r1.statistic == doctest::Approx(r2.statistic).epsilon(1e-12));
    CHECK(r1.p_value == doctest::Approx(r2.p_value));
    CHECK(r1.reject == r2.reject);
    CHECK(r1.method == Method::parametric_bootstrap);

    // p = 0 statistic is the classical estimated-parameter KS statistic
    auto expfam = exponential_family();
    std::vector<double> expdata;
    RngStream erng = RngStream::seeded(32);
    for (int i = 0; i < 30; ++i) expdata.push_back(-std::log(erng.uniform01_open_left()));
    Sample es(expdata);
    auto theta = expfam.estimate(es);
    DistSpec fitted = exponential_dist(theta[0]);
    auto report = estimated_gof(es, expfam, 0, 99, 0.05, RngStream::seeded(6));
    CHECK(report.statistic == doctest::Approx(ks_integrated(es, fitted, 0)));
    CHECK_THROWS_AS(
        (void)estimated_gof(es, expfam, 0, 50, 0.05, RngStream::seeded(7)),
        std::invalid_argument);
}

TEST_CASE("estimated_gof: TestReport invariants hold across alphas") {
    RngStream rng = RngStream::seeded(33);
    std::vector<double> data(25);
    for (auto& x : data) x = -std::log(rng.uniform01_open_left()) / 2.0;
    Sample s(data);
    auto fam = exponential_family();
    for (double alpha : {0.01, 0.05, 0.2, 0.5}) {
        auto rep = estimated_gof(s, fam, 1, 199, alpha, RngStream::seeded(8));
        CHECK(rep.reject == (rep.statistic > rep.critical_value));
        CHECK(rep.p_value > 0.0);
        CHECK(rep.p_value <= 1.0);
        if (rep.p_value <= alpha) CHECK(rep.reject);
        if (rep.p_value > alpha + 1.0 / 200.0) CHECK(!rep.reject);
    }
}

TEST_CASE("estimated_gof: estimator failures are dropped, too many is an error") {
    RngStream rng = RngStream::seeded(34);
    std::vector<double> data(20);
    for (auto& x : data) x = 0.2 + 0.6 * rng.uniform01();
    Sample s(data);

    ParametricFamily flaky = uniform_scale_family();
    flaky.estimate = [](const Sample& smp) {
        if (smp.min() < 5e-4) throw std::runtime_error("refit failed");
        return std::vector<double>{smp.max()};
    };
    // ~1% of resamples hit the failure window; the report must still build
    auto rep = estimated_gof(s, flaky, 0, 400, 0.05, RngStream::seeded(9));
    CHECK(rep.n_replications <= 400);
    CHECK(rep.n_replications >= 360);

    ParametricFamily broken = uniform_scale_family();
    broken.estimate = [](const Sample& smp) -> std::vector<double> {
        if (smp.size() == 20) return {smp.max()}; // fits the original only
        throw std::runtime_error("refit failed");
    };
    broken.sample = [](const std::vector<double>& th, int, RngStream& r) {
        std::vector<double> v(5);
        for (auto& x : v) x = th[0] * r.uniform01();
        return Sample(v);
    };
    CHECK_THROWS_AS(
        (void)estimated_gof(s, broken, 0, 200, 0.05, RngStream::seeded(10)),
        std::runtime_error);
}

TEST_CASE("simulate_estimated_limit: null score reduces to the plain limit") {
    auto fam = exponential_family();
    std::vector<double> theta0{1.0};
    auto zero_score = [](double) { return std::vector<double>{0.0}; };
    RngStream rng = RngStream::seeded(35);
    const int N = 1500;
    std::vector<double> est(N), plain(N);
    for (int i = 0; i < N; ++i) {
        est[i] = simulate_estimated_limit(fam, theta0, zero_score, 1, 129, 4, rng);
        plain[i] = sample_limit_ks(1, 129, rng);
    }
    CHECK(ks_distance_two_sample(est, plain) < 0.07);
}

TEST_CASE("estimated limit: score integral variance matches E l^2") {
    // exponential at rate 1, MLE influence l(x) = 1 - x, E l^2 = Var X = 1
    auto fam = exponential_family();
    std::vector<double> theta0{1.0};
    auto score = [](double x) { return std::vector<double>{1.0 - x}; };
    RngStream rng = RngStream::seeded(36);
    const int N = 8000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < N; ++i) {
        auto draw = simulate_estimated_limit_path(fam, theta0, score, 0, 257, 3, rng);
        double w = draw.score_integral[0];
        sum += w;
        sum2 += w * w;
    }
    double mean = sum / N;
    double var = sum2 / N - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    // grid truncation loses a little tail mass of E l^2; allow MC + bias slack
    CHECK(var == doctest::Approx(1.0).epsilon(0.06));
}

TEST_CASE("estimated limit: pointwise variance matches the covariance formula") {
    // Var G(t) = F(1-F) - (E l 1_{X<=t})^2 / Var(l) for the unit-variance
    // exponential score; at t = 1, F = 1 - 1/e and E l 1 = e^{-1}.
    auto fam = exponential_family();
    std::vector<double> theta0{1.0};
    auto score = [](double x) { return std::vector<double>{1.0 - x}; };
    RngStream rng = RngStream::seeded(37);
    const int N = 8000, m = 257;
    double t_probe = 1.0;
    double u_probe = 1.0 - std::exp(-1.0);
    double sum2 = 0.0;
    for (int i = 0; i < N; ++i) {
        auto draw = simulate_estimated_limit_path(fam, theta0, score, 0, m, 3, rng);
        // nearest grid point to u_probe
        std::size_t idx = static_cast<std::size_t>(u_probe * (m - 1) + 0.5);
        sum2 += draw.values[idx] * draw.values[idx];
    }
    double var = sum2 / N;
    double expect = u_probe * (1.0 - u_probe) - std::exp(-2.0 * t_probe);
    CHECK(var == doctest::Approx(expect).epsilon(0.08));
}

TEST_CASE("simulate_estimated_limit requires gradient and quantile") {
    auto fam = exponential_family();
    fam.grad_theta_cdf = nullptr;
    RngStream rng = RngStream::seeded(38);
    auto score = [](double) { return std::vector<double>{0.0}; };
    CHECK_THROWS_AS(
        (void)simulate_estimated_limit(fam, {1.0}, score, 0, 65, 2, rng),
        std::invalid_argument);
}

TEST_SUITE_END();
