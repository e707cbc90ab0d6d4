#include "absf/error.hpp"
#include "absf/planner.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace absf;
using namespace absf::planner;

TEST_CASE("spectral efficiency")
{
    CHECK(spectral_efficiency(0.0) == 0.0);
    CHECK(spectral_efficiency(std::pow(10.0, -0.5)) == doctest::Approx(std::log2(1.0 + std::sqrt(0.1))).epsilon(1e-15));
    CHECK(spectral_efficiency(std::pow(10.0, -0.5)) == doctest::Approx(0.39625).epsilon(1e-3));
    CHECK(25 * 180e3 * spectral_efficiency(std::pow(10.0, -0.5)) == doctest::Approx(1.7831e6).epsilon(1e-3));
}

TEST_CASE("mixed throughput is linear in n")
{
    CHECK(mixed_outage_throughput(10.0, 50.0, 0, 10) == 10.0);
    CHECK(mixed_outage_throughput(10.0, 50.0, 10, 10) == 50.0);
    CHECK(mixed_outage_throughput(10.0, 50.0, 5, 10) == doctest::Approx(30.0));
    CHECK_THROWS_AS(mixed_outage_throughput(10.0, 50.0, 11, 10), DomainError);
    CHECK_THROWS_AS(mixed_outage_throughput(10.0, 50.0, -1, 10), DomainError);
}

TEST_CASE("required count")
{
    CHECK(required_absf(10.0, 50.0, 0.0, 10).n_absf == 0);
    CHECK(required_absf(10.0, 50.0, 10.0, 10).n_absf == 0);
    CHECK(required_absf(10.0, 50.0, 30.0, 10).n_absf == 5);
    CHECK(required_absf(10.0, 50.0, 30.1, 10).n_absf == 6);
    const auto over = required_absf(10.0, 50.0, 60.0, 10);
    CHECK(over.n_absf == 10);
    CHECK(over.infeasible);
    // 0.1 * 3 is 0.30000000000000004 in binary; the snap keeps n at 3
    CHECK(required_absf(0.0, 1.0, 0.1 * 3, 10).n_absf == 3);
}

TEST_CASE("outage throughput ordering at reference parameters")
{
    const auto mf = reference_params(ScenarioKind::MacroFemto);
    CHECK(outage_throughput(mf, SubframeKind::ABSF) > outage_throughput(mf, SubframeKind::NSF));
}

TEST_CASE("plan at reference parameters")
{
    const auto mf = plan(reference_params(ScenarioKind::MacroFemto));
    CHECK(mf.n_absf >= 1);
    CHECK(mf.n_absf <= 10);
    CHECK_FALSE(mf.infeasible);
    CHECK(mf.c_v >= 40e3);
    CHECK(mixed_outage_throughput(mf.c_nsf, mf.c_absf, mf.n_absf - 1, 10) < 40e3);

    auto p = reference_params(ScenarioKind::MacroFemto);
    p.c_v_min = 0.0;
    CHECK(plan(p).n_absf == 0);
    p.c_v_min = 1e9;
    const auto inf = plan(p);
    CHECK(inf.infeasible);
    CHECK(inf.n_absf == p.n_sf);
}

TEST_CASE("plan without victims")
{
    auto p = reference_params(ScenarioKind::MacroFemto);
    p.lambda_s = 0.0;
    const auto r = plan(p);
    CHECK(r.no_victims);
    CHECK(r.n_absf == 0);
    CHECK_FALSE(r.infeasible);
}

TEST_CASE("sweep parameter names")
{
    for (auto s : {SweepParameter::LambdaS, SweepParameter::LambdaU, SweepParameter::RhoA, SweepParameter::Margin,
                   SweepParameter::Bias, SweepParameter::CVMin}) {
        CHECK(parse_sweep_parameter(to_string(s)) == s);
    }
    try {
        parse_sweep_parameter("lambda_x");
        FAIL("expected UsageError");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("rho_a") != std::string::npos);
    }
}

TEST_CASE("sweep applies values")
{
    const auto mp = reference_params(ScenarioKind::MacroPico);
    const auto biased = apply_sweep_value(mp, SweepParameter::Bias, 10.0);
    CHECK(biased.bias == 10.0);
    CHECK(biased.k1 == doctest::Approx(di_coefficient(mp.p_s, mp.p_m, mp.alpha_m, mp.alpha_s, 10.0)));
    CHECK_THROWS_AS(apply_sweep_value(reference_params(ScenarioKind::MacroFemto), SweepParameter::Bias, 2.0),
                    UsageError);
    const auto mf = reference_params(ScenarioKind::MacroFemto);
    CHECK(apply_sweep_value(mf, SweepParameter::Margin, 1.0).k ==
          doctest::Approx(di_coefficient(mf.p_s, mf.p_m, mf.alpha_m, mf.alpha_s)));
}

TEST_CASE("single-point sweep equals plan")
{
    const auto p = reference_params(ScenarioKind::MacroFemto);
    const auto curve = sweep(p, SweepParameter::LambdaS, {p.lambda_s});
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].n_absf == required_absf(p));
    CHECK_THROWS(sweep(p, SweepParameter::LambdaS, {}));
    CHECK_THROWS(sweep(p, SweepParameter::LambdaS, {2e-4, 1e-4}));
}

TEST_CASE("sweep results do not depend on thread count")
{
    const auto p = reference_params(ScenarioKind::MacroFemto);
    std::vector<double> grid;
    for (int i = 4; i <= 60; i += 8) {
        grid.push_back(i * p.lambda_m);
    }
    const auto one = sweep(p, SweepParameter::LambdaS, grid, 1);
    const auto many = sweep(p, SweepParameter::LambdaS, grid, 4);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(one.points[i].c_nsf == many.points[i].c_nsf);
        CHECK(one.points[i].n_absf == many.points[i].n_absf);
        if (i > 0) {
            CHECK(one.points[i].n_absf >= one.points[i - 1].n_absf);
        }
    }
}
