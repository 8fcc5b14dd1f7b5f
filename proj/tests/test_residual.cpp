// Stationary-operator residuals, dual norms, parameter-window checks, and
// the epsilon scaling study.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oceanlab/residual.hpp"

using namespace oceanlab;

namespace {

StationarySolution assemble_demo(double eps, double nu_h, const Grid& g) {
    auto par = Parameters::theorem_scaling(eps, nu_h, eps);
    return assemble_stationary(par, CoriolisProfile::linear(1.0),
                               WindStress::zonal_curl(2, 1.0, 1), g);
}

}  // namespace

TEST_CASE("parameter window: the canonical choice passes at small epsilon") {
    auto rep = check_delta_conditions(1e-3, 1e-9, 1e-3);
    for (const auto& e : rep.entries) {
        INFO(e.name << " ratio " << e.ratio);
        CHECK(e.passed);
    }
    CHECK(rep.all_passed());
}

TEST_CASE("parameter window: wide truncation fails the upper bound") {
    double eps = 1e-3;
    auto rep = check_delta_conditions(eps, 1e-9, std::sqrt(eps));
    bool found = false;
    for (const auto& e : rep.entries)
        if (e.name == "delta << eps^(6/11)") {
            found = true;
            CHECK_FALSE(e.passed);
        }
    CHECK(found);
}

TEST_CASE("parameter window: viscosity equal to epsilon fails") {
    auto rep = check_delta_conditions(1e-3, 1e-3, 1e-3);
    bool found = false;
    for (const auto& e : rep.entries)
        if (e.name == "nu_h << eps") {
            found = true;
            CHECK_FALSE(e.passed);
        }
    CHECK(found);
    CHECK_THROWS_AS(check_delta_conditions(-1.0, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(check_delta_conditions(0.1, 0.0, 0.1, 1.5), std::invalid_argument);
}

TEST_CASE("dual norm: single zonal mode carries the mode weight") {
    Grid g(16, 32, 5, 2.0);
    const int k = 2;
    Field f = Field::horizontal(g, 1);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) f.at(0, i, j) = std::cos(k * g.x(i));
    double l2 = f.l2_norm();
    CHECK(dual_norm(f) == Catch::Approx(l2 / std::sqrt(1.0 + k * k)).epsilon(1e-10));
}

TEST_CASE("dual norm: constant field equals its L2 norm") {
    Grid g(8, 16, 5, 2.0);
    Field f = Field::horizontal(g, 2);
    for (double& v : f.data()) v = 1.7;
    CHECK(dual_norm(f) == Catch::Approx(f.l2_norm()).epsilon(1e-12));
}

TEST_CASE("dual norm is a norm dominated by L2") {
    Grid g(8, 16, 4, 2.0);
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        Field f = Field::horizontal(g, 1), h = Field::horizontal(g, 1);
        for (double& v : f.data()) v = u(rng);
        for (double& v : h.data()) v = u(rng);
        CHECK(dual_norm(f) <= f.l2_norm() * (1.0 + 1e-12));
        // homogeneity
        Field f3 = f;
        for (double& v : f3.data()) v *= -3.0;
        CHECK(dual_norm(f3) == Catch::Approx(3.0 * dual_norm(f)).epsilon(1e-12));
        // triangle inequality
        Field s = f;
        for (std::size_t n = 0; n < s.data().size(); ++n) s.data()[n] += h.data()[n];
        CHECK(dual_norm(s) <= dual_norm(f) + dual_norm(h) + 1e-12);
    }
}

TEST_CASE("residual report: breakdown sums to the totals") {
    Grid g(16, 32, 9, 2.0);
    auto sol = assemble_demo(0.1, 1e-3, g);
    auto rep = apply_stationary_operator(sol);
    CHECK(rep.breakdown_defect < 1e-12);
    for (const auto& t : rep.horizontal) {
        CHECK(t.l2 >= 0.0);
        CHECK(std::isfinite(t.l2));
    }
    CHECK(rep.r1_h_l2 > 0.0);
    CHECK(std::isfinite(rep.r2_h_dual));
}

TEST_CASE("geostrophic balance of the interior holds by construction") {
    Grid g(16, 32, 9, 2.0);
    auto sol = assemble_demo(0.1, 1e-3, g);
    auto rep = apply_stationary_operator(sol);
    bool found = false;
    for (const auto& t : rep.horizontal)
        if (t.name == "interior_geostrophic") {
            found = true;
            CHECK(t.l2 < 1e-10);
        }
    CHECK(found);
}

TEST_CASE("inviscid limit: every viscous term vanishes identically") {
    Grid g(16, 32, 9, 2.0);
    auto par = Parameters::theorem_scaling(0.1, 0.0, 0.1);
    auto sol = assemble_stationary(par, CoriolisProfile::linear(1.0),
                                   WindStress::zonal_curl(2, 1.0, 1), g);
    auto rep = apply_stationary_operator(sol);
    for (const auto& t : rep.horizontal)
        if (t.viscous) CHECK(t.l2 == 0.0);
    for (const auto& t : rep.vertical)
        if (t.viscous) CHECK(t.l2 == 0.0);
    CHECK(rep.r2_h_l2 == 0.0);
    CHECK(rep.r2_3_l2 == 0.0);
}

TEST_CASE("residual norms are homogeneous in the stress amplitude") {
    Grid g(16, 32, 9, 2.0);
    auto par = Parameters::theorem_scaling(0.1, 1e-3, 0.1);
    auto profile = CoriolisProfile::linear(1.0);
    auto sol1 = assemble_stationary(par, profile, WindStress::zonal_curl(2, 1.0, 1, 1.0), g);
    auto sol2 = assemble_stationary(par, profile, WindStress::zonal_curl(2, 1.0, 1, 2.0), g);
    auto r1 = apply_stationary_operator(sol1);
    auto r2 = apply_stationary_operator(sol2);
    CHECK(r2.r1_h_l2 == Catch::Approx(2.0 * r1.r1_h_l2).epsilon(1e-9));
    CHECK(r2.r2_h_l2 == Catch::Approx(2.0 * r1.r2_h_l2).epsilon(1e-9));
    CHECK(r2.r1_3_l2 == Catch::Approx(2.0 * r1.r1_3_l2).epsilon(1e-9));
}

TEST_CASE("mismatch term concentrates near the equator") {
    Grid g(16, 32, 5, 2.0);
    auto sol = assemble_demo(0.1, 0.0, g);
    // the (b - b_delta) factor is supported in |y| < 2 delta only
    const TruncatedCoriolis& tc = sol.bl.rotation;
    for (int j = 0; j < g.Ny; ++j) {
        double y = g.y(j);
        double m = tc.base.b(y) - tc.b(y);
        if (std::abs(y) >= 2.0 * sol.params.delta)
            CHECK(m == 0.0);
    }
}

TEST_CASE("scaling study: theorem-rate slopes and decaying residuals") {
    Grid g(16, 32, 9, 2.0);
    auto study = scaling_study(
        CoriolisProfile::linear(1.0), WindStress::zonal_curl(2, 1.0, 1),
        {0.1, 0.05, 0.025}, [](double e) { return e; },
        [](double e) { return e * e * e; }, g);
    INFO("u_bl slope " << study.slopes["u_bl_h_l2"] << ", u_int slope "
                       << study.slopes["u_int_l2"]);
    CHECK(study.bl_slope_ok);
    CHECK(study.int_slope_ok);
    CHECK(study.r1_decaying);
    CHECK(study.r2_decaying);
}

TEST_CASE("scaling study input validation") {
    Grid g(8, 16, 5, 2.0);
    auto id = [](double e) { return e; };
    auto cube = [](double e) { return e * e * e; };
    CHECK_THROWS_AS(scaling_study(CoriolisProfile::linear(1.0), WindStress::zonal_curl(),
                                  {0.1, 0.05}, id, cube, g),
                    std::invalid_argument);
    CHECK_THROWS_AS(scaling_study(CoriolisProfile::linear(1.0), WindStress::zonal_curl(),
                                  {0.05, 0.1, 0.2}, id, cube, g),
                    std::invalid_argument);
}
