#include "qnsc/random.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace qnsc;

TEST_CASE("identical handles reproduce identical draws") {
    const RngHandle h{42, 7};
    RandomStream a(h), b(h);
    for (int i = 0; i < 500; ++i) {
        CHECK(a.u01() == b.u01());
        CHECK(a.poisson(3.7) == b.poisson(3.7));
        CHECK(a.gaussian() == b.gaussian());
    }
}

TEST_CASE("derived streams differ from each other and the parent") {
    const RngHandle h{42, 7};
    RandomStream parent(h), d0(h.derive(0)), d1(h.derive(1));
    int equal01 = 0, equal0p = 0;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t p = parent.raw(), x = d0.raw(), y = d1.raw();
        equal01 += (x == y);
        equal0p += (x == p);
    }
    CHECK(equal01 == 0);
    CHECK(equal0p == 0);
    CHECK(h.derive(5).stream_id == h.derive(5).stream_id);
}

TEST_CASE("poisson(0) is identically zero and negative means throw") {
    RandomStream rng(RngHandle{1, 1});
    for (int i = 0; i < 1000; ++i) CHECK(rng.poisson(0.0) == 0);
    CHECK_THROWS_AS(rng.poisson(-1.0), std::domain_error);
}

TEST_CASE("poisson sample moments match the distribution") {
    // spans the direct-method and PTRS regimes
    for (double mean : {0.5, 3.0, 25.0, 40.0, 300.0, 10000.0}) {
        RandomStream rng(RngHandle{99, static_cast<std::uint64_t>(mean * 100)});
        const int n = 200000;
        double sum = 0.0, sum2 = 0.0;
        std::int64_t zeros = 0;
        for (int i = 0; i < n; ++i) {
            const double x = static_cast<double>(rng.poisson(mean));
            sum += x;
            sum2 += x * x;
            zeros += (x == 0.0);
        }
        const double m = sum / n;
        const double var = sum2 / n - m * m;
        const double se_mean = std::sqrt(mean / n);
        CHECK(std::fabs(m - mean) < 5.0 * se_mean);
        CHECK(var == doctest::Approx(mean).epsilon(0.05));
        if (mean <= 3.0) {
            const double p0 = std::exp(-mean);
            const double se0 = std::sqrt(p0 * (1 - p0) / n);
            CHECK(std::fabs(static_cast<double>(zeros) / n - p0) < 5.0 * se0);
        }
    }
}

TEST_CASE("gaussian sample moments") {
    RandomStream rng(RngHandle{123, 0});
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.gaussian();
        sum += x;
        sum2 += x * x;
    }
    CHECK(sum / n == doctest::Approx(0.0).epsilon(0.01).scale(1.0));
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("uniform helpers stay in range") {
    RandomStream rng(RngHandle{5, 5});
    int heads = 0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.u01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double a = rng.uniform_angle();
        CHECK(a >= 0.0);
        CHECK(a < 3.14159265358979323846);
        heads += rng.coin();
    }
    CHECK(std::fabs(heads / 20000.0 - 0.5) < 0.02);
}
