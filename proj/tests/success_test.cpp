#include "absf/error.hpp"
#include "absf/success.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace absf;
using std::numbers::pi;

namespace {

// log of the Laplace functional of a PPP of intensity lambda beyond radius a, received power
// p x^-alpha with unit-mean exponential fading, at s.
double shot_noise_exponent(double lambda, double a, double p, double alpha, double s)
{
    const auto f = [&](double t) {
        const double x = a + t;
        const double g = s * p * std::pow(x, -alpha);
        return g / (1.0 + g) * x;
    };
    boost::math::quadrature::exp_sinh<double> q;
    return -2.0 * pi * lambda * q.integrate(f);
}

double single_di_oracle(const ScenarioParams& p, double r, double scale)
{
    // femto DI uniform in the disc of radius k r
    const double s = p.theta0 * scale * std::pow(r, p.alpha_m) / p.p_m;
    const double radius = p.k * r;
    const auto f = [&](double x) {
        return 1.0 / (1.0 + s * p.p_s * std::pow(x, -p.alpha_s)) * 2.0 * x / (radius * radius);
    };
    return specfun::integrate(f, 0.0, radius);
}

} // namespace

TEST_CASE("all factors are one at zero threshold")
{
    for (auto kind : {ScenarioKind::MacroFemto, ScenarioKind::MacroPico}) {
        auto p = reference_params(kind);
        p.theta0 = 0.0;
        const auto t = success::interference_terms(p, 120.0, SubframeKind::NSF);
        CHECK(t.own_tier_term == 1.0);
        CHECK(t.cross_tier_term == 1.0);
        CHECK(t.di_term == 1.0);
        CHECK(success::success_probability(p, SubframeKind::NSF) == 1.0);
    }
}

TEST_CASE("own-tier factor")
{
    auto p = reference_params(ScenarioKind::MacroFemto);
    const double expected = std::exp(-pi * 1e-5 * 4e4 * specfun::rho(p.theta0, 2.5));
    CHECK(success::laplace_own_tier(p, 200.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(success::laplace_own_tier(p, 200.0) ==
          doctest::Approx(std::exp(shot_noise_exponent(1e-5, 200.0, p.p_m, 2.5, p.theta0 * std::pow(200.0, 2.5) / p.p_m)))
              .epsilon(1e-8));
    p.load_m = 0.0;
    CHECK(success::laplace_own_tier(p, 200.0) == 1.0);
    CHECK_THROWS_AS(success::laplace_own_tier(p, 0.0), DomainError);
}

TEST_CASE("cross-tier factor matches the shot-noise Laplace functional")
{
    SUBCASE("macro/femto, femtos outside the DI disc")
    {
        const auto p = reference_params(ScenarioKind::MacroFemto);
        const double r = 150.0;
        for (auto kind : {SubframeKind::NSF, SubframeKind::ABSF}) {
            const double s = p.theta0 * p.interference_scale(kind) * std::pow(r, p.alpha_m) / p.p_m;
            const double expected = std::exp(shot_noise_exponent(p.load_s * p.lambda_s, p.k * r, p.p_s, p.alpha_s, s));
            CHECK(success::laplace_cross_tier(p, r, kind) == doctest::Approx(expected).epsilon(1e-8));
        }
    }
    SUBCASE("macro/pico, macros beyond r / k2")
    {
        const auto p = reference_params(ScenarioKind::MacroPico);
        const double r = 50.0;
        for (auto kind : {SubframeKind::NSF, SubframeKind::ABSF}) {
            const double s = p.theta0 * p.interference_scale(kind) * std::pow(r, p.alpha_s) / p.p_s;
            const double expected =
                std::exp(shot_noise_exponent(p.load_m * p.lambda_m, r / p.k2, p.p_m, p.alpha_m, s));
            CHECK(success::laplace_cross_tier(p, r, kind) == doctest::Approx(expected).epsilon(1e-8));
        }
    }
}

TEST_CASE("ABSF with unit residue equals NSF; zero residue silences the cross tier")
{
    for (auto kind : {ScenarioKind::MacroFemto, ScenarioKind::MacroPico}) {
        auto p = reference_params(kind);
        p.rho_a = 1.0;
        CHECK(success::laplace_cross_tier(p, 80.0, SubframeKind::ABSF) ==
              success::laplace_cross_tier(p, 80.0, SubframeKind::NSF));
        CHECK(success::success_probability(p, SubframeKind::ABSF) ==
              success::success_probability(p, SubframeKind::NSF));
        p.rho_a = 0.0;
        CHECK(success::laplace_cross_tier(p, 80.0, SubframeKind::ABSF) == 1.0);
        CHECK(success::laplace_di(p, 80.0, SubframeKind::ABSF) == 1.0);
    }
}

TEST_CASE("single dominant interferer factor")
{
    const auto p = reference_params(ScenarioKind::MacroFemto);
    for (auto kind : {SubframeKind::NSF, SubframeKind::ABSF}) {
        const double r = 150.0;
        CHECK(success::laplace_single_di(p, r, kind) ==
              doctest::Approx(single_di_oracle(p, r, p.interference_scale(kind))).epsilon(1e-8));
    }
    auto mp = reference_params(ScenarioKind::MacroPico);
    const double r = 60.0;
    const double s = mp.theta0 * std::pow(r, mp.alpha_s) / mp.p_s;
    const double lo = r / mp.k1;
    const double hi = r / mp.k2;
    const auto f = [&](double x) {
        return 1.0 / (1.0 + s * mp.p_m * std::pow(x, -mp.alpha_m)) * 2.0 * x / (hi * hi - lo * lo);
    };
    CHECK(success::laplace_single_di(mp, r, SubframeKind::NSF) ==
          doctest::Approx(specfun::integrate(f, lo, hi)).epsilon(1e-8));
}

TEST_CASE("PGF averaging equals the zero-truncated Poisson sum")
{
    auto p = reference_params(ScenarioKind::MacroFemto);
    p.load_s = 1.0;
    const double r = 150.0;
    const double e1 = success::laplace_single_di(p, r, SubframeKind::ABSF);
    const double x = di_poisson_mean(p, r);
    double sum = 0.0;
    double term = std::exp(-x);
    for (int n = 1; n < 60; ++n) {
        term *= x / n;
        sum += term * std::pow(e1, n);
    }
    sum /= -std::expm1(-x);
    CHECK(success::laplace_di(p, r, SubframeKind::ABSF, success::DiAveraging::Pgf) ==
          doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("PGF and mean-count averaging agree at small distance")
{
    auto p = reference_params(ScenarioKind::MacroFemto);
    p.load_s = 1.0;
    const double pgf = success::laplace_di(p, 1.0, SubframeKind::NSF, success::DiAveraging::Pgf);
    const double mean = success::laplace_di(p, 1.0, SubframeKind::NSF, success::DiAveraging::MeanCount);
    CHECK(pgf == doctest::Approx(mean).epsilon(1e-6));
}

TEST_CASE("closed-form single-DI success")
{
    ScenarioParams p = reference_params(ScenarioKind::MacroFemto);
    p.alpha_m = p.alpha_s = 4.0;
    p.theta0 = 1.0;
    p.k = 0.1;
    p.lambda_s = 12.0 * p.lambda_m;
    p.load_s = 1.0;
    p.rho_a = 1e-14;
    CHECK(success::success_mf_single_di_closed(p, SubframeKind::ABSF) ==
          doctest::Approx(1.12 * 1.12 / std::pow(1.0 + pi / 4.0 + 0.12, 2.0)).epsilon(1e-6));
    p.theta0 = 1e-12;
    CHECK(success::success_mf_single_di_closed(p, SubframeKind::NSF) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("closed-form single-DI success matches quadrature")
{
    ScenarioParams p = reference_params(ScenarioKind::MacroFemto);
    p.alpha_m = p.alpha_s = 3.5;
    p.load_s = 1.0;
    for (auto kind : {SubframeKind::NSF, SubframeKind::ABSF}) {
        CHECK(success::success_mf_single_di_closed(p, kind) ==
              doctest::Approx(success::success_mf_single_di_numeric(p, kind)).epsilon(1e-6));
    }
    p.load_s = 0.5;
    CHECK_THROWS_AS(success::success_mf_single_di_closed(p, SubframeKind::NSF), UsageError);
    CHECK_THROWS_AS(success::success_mf_single_di_closed(reference_params(ScenarioKind::MacroPico), SubframeKind::NSF),
                    UsageError);
}

TEST_CASE("ABSF improves success at reference parameters")
{
    for (auto kind : {ScenarioKind::MacroFemto, ScenarioKind::MacroPico}) {
        const auto p = reference_params(kind);
        const double nsf = success::success_probability(p, SubframeKind::NSF);
        const double absf = success::success_probability(p, SubframeKind::ABSF);
        CHECK(nsf > 0.0);
        CHECK(absf > nsf);
        CHECK(absf < 1.0);
    }
}
