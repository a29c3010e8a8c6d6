#include "ipef/localtime.hpp"

#include "ipef/empirical.hpp"

#include <doctest.h>

#include <cmath>

using namespace ipef;

TEST_SUITE_BEGIN("localtime");

TEST_CASE("walk increments: p = 1 form, bounds, centering") {
    RngStream a = RngStream::seeded(50);
    RngStream b = RngStream::seeded(50);
    WalkPath path = walk(1, 5000, a);
    double s = 0.0;
    for (long i = 0; i < path.n(); ++i) {
        double increment = path.steps[i] - (i > 0 ? path.steps[i - 1] : 0.0);
        CHECK(increment == doctest::Approx(0.5 - b.uniform01()).epsilon(1e-12));
        s = path.steps[i];
    }
    (void)s;

    for (int p : {1, 2, 3}) {
        RngStream rng = RngStream::seeded(51 + p);
        WalkPath w = walk(p, 20000, rng);
        double lo = -1.0 / factorial(p + 1);
        double hi = static_cast<double>(p) / factorial(p + 1);
        double prev = 0.0, sum = 0.0, sum2 = 0.0;
        for (double x : w.steps) {
            double inc = x - prev;
            prev = x;
            CHECK(inc >= lo - 1e-12);
            CHECK(inc <= hi + 1e-12);
            sum += inc;
            sum2 += inc * inc;
        }
        double n = static_cast<double>(w.n());
        double mean = sum / n;
        double sd = std::sqrt(sum2 / n - mean * mean);
        CHECK(std::abs(mean) <= 4.0 * sd / std::sqrt(n));
    }
    CHECK_THROWS_AS((void)walk(0, 10, a), std::invalid_argument);
}

TEST_CASE("increment variance at p = 1 is 1/12") {
    RngStream rng = RngStream::seeded(52);
    const long N = 1000000;
    WalkPath w = walk(1, N, rng);
    double prev = 0.0, sum = 0.0, sum2 = 0.0;
    for (double x : w.steps) {
        double inc = x - prev;
        prev = x;
        sum += inc;
        sum2 += inc * inc;
    }
    double mean = sum / N;
    double var = sum2 / N - mean * mean;
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("local_time: direct count, far point, covering bound") {
    WalkPath path;
    path.p = 1;
    path.steps = {0.1, 0.4, 0.9};
    CHECK(local_time(path, 0.0, 3) == 2);
    CHECK(local_time(path, 100.0, 3) == 0);
    CHECK(local_time(path, 0.0, 1) == 1);
    CHECK_THROWS_AS((void)local_time(path, 0.0, 4), std::invalid_argument);

    RngStream rng = RngStream::seeded(53);
    WalkPath w = walk(2, 500, rng);
    double lo = *std::min_element(w.steps.begin(), w.steps.end());
    double hi = *std::max_element(w.steps.begin(), w.steps.end());
    long covered = 0;
    for (double x = lo; x <= hi + 1.0; x += 1.0) {
        covered += local_time(w, x, w.n());
    }
    CHECK(covered >= w.n());
}

TEST_CASE("self_intersection kernel: full overlap, disjoint, grid oracle") {
    WalkPath same;
    same.p = 1;
    same.steps = {0.3, 0.3};
    CHECK(self_intersection(same, 1.0) == doctest::Approx(1.0));

    WalkPath apart;
    apart.p = 1;
    apart.steps = {0.0, 2.0};
    CHECK(self_intersection(apart, 1.0) == doctest::Approx(0.0));

    // kernel identity against grid integration for random pairs
    RngStream rng = RngStream::seeded(54);
    for (int trial = 0; trial < 100; ++trial) {
        double a = 4.0 * rng.uniform01() - 2.0;
        double b = 4.0 * rng.uniform01() - 2.0;
        double expect = std::max(0.0, 1.0 - std::abs(a - b));
        double dx = 1e-3, got = 0.0;
        for (double x = std::min(a, b) - 0.6; x <= std::max(a, b) + 0.6; x += dx) {
            if (std::abs(a - x) <= 0.5 && std::abs(b - x) <= 0.5) got += dx;
        }
        CHECK(std::abs(got - expect) < 2.5e-3);
    }
}

TEST_CASE("self_intersection: fast equals naive exactly") {
    RngStream rng = RngStream::seeded(55);
    for (int p : {1, 2}) {
        for (int n : {10, 100, 500}) {
            WalkPath w = walk(p, n, rng);
            for (double t : {0.3, 0.7, 1.0}) {
                if (static_cast<long>(n * t) < 2) continue;
                CHECK(self_intersection(w, t) ==
                      doctest::Approx(self_intersection_naive(w, t)).epsilon(1e-11));
            }
        }
    }
    WalkPath tiny;
    tiny.p = 1;
    tiny.steps = {0.1};
    CHECK_THROWS_AS((void)self_intersection(tiny, 1.0), std::invalid_argument);
}

TEST_CASE("self_intersection against grid integration of the indicator product") {
    RngStream rng = RngStream::seeded(56);
    WalkPath w = walk(1, 60, rng);
    long q = 60;
    double dx = 1e-3;
    double lo = *std::min_element(w.steps.begin(), w.steps.end()) - 0.6;
    double hi = *std::max_element(w.steps.begin(), w.steps.end()) + 0.6;
    double integral = 0.0;
    for (double x = lo; x <= hi; x += dx) {
        long c = 0;
        for (long i = 0; i < q; ++i) {
            if (std::abs(w.steps[i] - x) <= 0.5) ++c;
        }
        integral += 0.5 * static_cast<double>(c * (c - 1)) * dx;
    }
    double pairs = 0.5 * static_cast<double>(q) * (q - 1);
    CHECK(std::abs(self_intersection(w, 1.0) - integral) < 2e-3 * pairs);
}

TEST_CASE("lambda is nondecreasing in the horizon") {
    RngStream rng = RngStream::seeded(57);
    WalkPath w = walk(1, 300, rng);
    for (double x : {-0.5, 0.0, 0.8}) {
        long prev = 0;
        for (long n = 10; n <= 300; n += 30) {
            long lt = local_time(w, x, n);
            CHECK(lt >= prev);
            prev = lt;
        }
    }
}

TEST_CASE("degenerate path: all pairs overlap, slope 2; sign flip invariance") {
    std::vector<long> ns{16, 64, 256, 1024};
    std::vector<double> L;
    for (long n : ns) {
        WalkPath flat;
        flat.p = 1;
        flat.steps.assign(n, 0.0);
        double l = self_intersection(flat, 1.0);
        CHECK(l == doctest::Approx(0.5 * n * (n - 1.0)));
        L.push_back(l);
    }
    double slope = loglog_slope(ns, L);
    CHECK(slope > 1.95);
    CHECK(slope < 2.05);

    RngStream rng = RngStream::seeded(58);
    WalkPath w = walk(2, 200, rng);
    WalkPath flipped = w;
    for (auto& x : flipped.steps) x = -x;
    CHECK(self_intersection(w, 1.0) ==
          doctest::Approx(self_intersection(flipped, 1.0)).epsilon(1e-12));
}

TEST_CASE("growth exponent sits near 3/2 at modest scale") {
    // full scale (2^16, 20 paths) runs in the acceptance suite
    double slope = growth_exponent(1, {1024, 2048, 4096, 8192, 16384}, 8, 99, 0);
    CHECK(slope > 1.25);
    CHECK(slope < 1.75);
    CHECK_THROWS_AS((void)growth_exponent(1, {100, 200}, 2, 1, 0),
                    std::invalid_argument);
}

TEST_CASE("char_fn: value at zero, modulus bound, conjugate symmetry, accuracy") {
    for (int p : {1, 2, 3}) {
        auto at0 = char_fn(p, 0.0);
        CHECK(at0.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(at0.imag() == doctest::Approx(0.0).epsilon(1e-12));
        for (double z : {1.0, 10.0, 100.0}) {
            CHECK(std::abs(char_fn(p, z)) < 1.0);
            auto plus = char_fn(p, z);
            auto minus = char_fn(p, -z);
            CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-9));
            CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-9));
        }
    }
    // independent fixed-step Simpson check at p = 2, z = 7
    int p = 2;
    double z = 7.0;
    const int N = 200000;
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i <= N; ++i) {
        double u = static_cast<double>(i) / N;
        double phase = z * (std::pow(u, p) - 1.0 / (p + 1));
        double wgt = (i == 0 || i == N) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += wgt * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    acc *= 1.0 / (3.0 * N);
    auto fast = char_fn(p, z);
    CHECK(std::abs(fast - acc) < 1e-9);
    CHECK_THROWS_AS((void)char_fn(0, 1.0), std::invalid_argument);
}

TEST_SUITE_END();
