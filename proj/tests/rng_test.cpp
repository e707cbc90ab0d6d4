#include "rng.hpp"

#include <doctest.h>

#include <cmath>

using absf::detail::Rng;

TEST_CASE("streams are reproducible and distinct")
{
    Rng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        differs = differs || x != c();
    }
    CHECK(differs);
}

TEST_CASE("uniform moments")
{
    Rng r(9, 1, 0);
    const int n = 1000000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sq += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
    CHECK(sq / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("ziggurat exponential matches the unit exponential law")
{
    Rng r(3, 7, 0);
    const int n = 2000000;
    double sum = 0.0;
    double sq = 0.0;
    int above5 = 0;
    int below01 = 0;
    for (int i = 0; i < n; ++i) {
        const double e = r.exponential();
        REQUIRE(e >= 0.0);
        sum += e;
        sq += e * e;
        above5 += e > 5.0;
        below01 += e < 0.1;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.004));
    CHECK(sq / n - mean * mean == doctest::Approx(1.0).epsilon(0.01));
    const double p5 = std::exp(-5.0);
    CHECK(std::abs(above5 / double(n) - p5) < 4.0 * std::sqrt(p5 / n));
    const double p01 = -std::expm1(-0.1);
    CHECK(std::abs(below01 / double(n) - p01) < 4.0 * std::sqrt(p01 / n));
}
