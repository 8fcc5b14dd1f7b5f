// Sverdrup interior, pressure reconstruction, bottom corrector, assembly.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oceanlab/interior.hpp"

using namespace oceanlab;

namespace {

TruncatedCoriolis linear_tc(double delta = 0.1, double alpha = 0.7) {
    return truncate_coriolis(CoriolisProfile::linear(1.0), delta, alpha);
}

/// w = y cos x sampled on the grid (the pumping of sigma = (0, y^2 sin x)
/// with the untruncated linear rotation profile).
Field cosine_pumping(const Grid& g) {
    Field w = Field::horizontal(g, 1);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) w.at(0, i, j) = g.y(j) * std::cos(g.x(i));
    return w;
}

}  // namespace

TEST_CASE("sverdrup balance: closed form on the linear profile") {
    Grid g(16, 32, 5, 2.0);
    auto tc = linear_tc();
    Field w = cosine_pumping(g);
    Field u2 = sverdrup_meridional(w, tc);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            double y = g.y(j);
            CHECK(u2.at(0, i, j) ==
                  Catch::Approx(y * y * std::cos(g.x(i))).margin(1e-12));
            // pointwise identity b' u2 = b w
            CHECK(1.0 * u2.at(0, i, j) == Catch::Approx(y * w.at(0, i, j)).margin(1e-13));
        }
    Field zero = Field::horizontal(g, 1);
    Field u2z = sverdrup_meridional(zero, tc);
    for (double v : u2z.data()) CHECK(v == 0.0);
}

TEST_CASE("sverdrup balance rejects a flat rotation profile") {
    Grid g(8, 8, 5, 2.0);
    CoriolisProfile flat;
    flat.beta = 1.0;
    flat.b = [](double y) { return y >= 0 ? 1.0 : -1.0; };
    flat.db = [](double) { return 0.0; };
    flat.d2b = [](double) { return 0.0; };
    auto tc = truncate_coriolis(flat, 0.1, 0.7);
    Field w = cosine_pumping(g);
    CHECK_THROWS(sverdrup_meridional(w, tc));
}

TEST_CASE("vertical interior velocity is linear in height") {
    Grid g(8, 16, 5, 2.0);
    Field w = cosine_pumping(g);
    Field u3_bottom = vertical_velocity(w, 0.0);
    Field u3_top = vertical_velocity(w, 1.0);
    Field u3_half = vertical_velocity(w, 0.5);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            CHECK(u3_bottom.at(0, i, j) == 0.0);
            CHECK(u3_top.at(0, i, j) == w.at(0, i, j));
            CHECK(u3_half.at(0, i, j) == Catch::Approx(0.5 * w.at(0, i, j)).margin(1e-15));
        }
}

TEST_CASE("zonal velocity: closed form and gauge") {
    Grid g(16, 32, 5, 2.0);
    auto tc = linear_tc();
    Field w = cosine_pumping(g);
    Field dyw = Field::horizontal(g, 1);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) dyw.at(0, i, j) = std::cos(g.x(i));
    Field u1 = zonal_velocity(w, dyw, tc);
    for (int j = 0; j < g.Ny; ++j) {
        double mean = 0.0;
        for (int i = 0; i < g.Nx; ++i) {
            double y = g.y(j);
            CHECK(u1.at(0, i, j) ==
                  Catch::Approx(-3.0 * y * std::sin(g.x(i))).margin(1e-12));
            mean += u1.at(0, i, j);
        }
        CHECK(std::abs(mean / g.Nx) < 1e-13);  // zero-zonal-mean gauge
    }
}

TEST_CASE("zonal velocity refuses incompatible forcing") {
    Grid g(16, 32, 5, 2.0);
    auto tc = linear_tc();
    // x-independent pumping: its zonal mean cannot vanish
    Field w = Field::horizontal(g, 1);
    Field dyw = Field::horizontal(g, 1);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            w.at(0, i, j) = g.y(j);
            dyw.at(0, i, j) = 1.0;
        }
    CHECK_THROWS_AS(zonal_velocity(w, dyw, tc), std::invalid_argument);
}

TEST_CASE("interior pressure: spectral reconstruction of the closed form") {
    Grid g(32, 64, 5, 2.0);
    auto tc = linear_tc();
    Field u1 = Field::horizontal(g, 1), u2 = Field::horizontal(g, 1);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            double x = g.x(i), y = g.y(j);
            u1.at(0, i, j) = -3.0 * y * std::sin(x);
            u2.at(0, i, j) = y * y * std::cos(x);
        }
    Field p = interior_pressure(u1, u2, tc);
    // grad p = (b u2, -b u1) integrates to p = y^3 sin x (zero mean)
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            double expect = g.y(j) * g.y(j) * g.y(j) * std::sin(g.x(i));
            CHECK(p.at(0, i, j) == Catch::Approx(expect).margin(1e-10));
        }
    // zero-pressure for zero velocity
    Field z = Field::horizontal(g, 1);
    Field pz = interior_pressure(z, z, tc);
    for (double v : pz.data()) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("interior pressure gradient converges at second order") {
    auto tc = linear_tc();
    auto worst_err = [&](int nx, int ny) {
        Grid g(nx, ny, 5, 2.0);
        Field u1 = Field::horizontal(g, 1), u2 = Field::horizontal(g, 1);
        for (int j = 0; j < g.Ny; ++j)
            for (int i = 0; i < g.Nx; ++i) {
                double x = g.x(i), y = g.y(j);
                u1.at(0, i, j) = -3.0 * y * std::sin(x);
                u2.at(0, i, j) = y * y * std::cos(x);
            }
        Field p = interior_pressure(u1, u2, tc);
        double worst = 0.0;
        for (int j = 2; j < g.Ny - 2; ++j) {
            double y = g.y(j);
            if (std::abs(y) < 0.5) continue;  // stay away from the equator
            for (int i = 0; i < g.Nx; ++i) {
                int ip = (i + 1) % g.Nx, im = (i + g.Nx - 1) % g.Nx;
                double px = (p.at(0, ip, j) - p.at(0, im, j)) / (2.0 * g.dx());
                double py = (p.at(0, i, j + 1) - p.at(0, i, j - 1)) / (2.0 * g.dy());
                worst = std::max(worst, std::abs(px - y * u2.at(0, i, j)));
                worst = std::max(worst, std::abs(py + y * u1.at(0, i, j)));
            }
        }
        return worst;
    };
    double e1 = worst_err(16, 32), e2 = worst_err(32, 64);
    CHECK(e2 < e1 / 3.0);  // ~4x per halving
}

TEST_CASE("interior pressure rejects a rotational velocity field") {
    Grid g(16, 32, 5, 2.0);
    auto tc = linear_tc();
    Field u1 = Field::horizontal(g, 1), u2 = Field::horizontal(g, 1);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            // -b u^perp = (b u2, -b u1) with a large curl
            u1.at(0, i, j) = std::cos(g.x(i)) * g.y(j);
            u2.at(0, i, j) = std::cos(g.x(i));
        }
    CHECK_THROWS_AS(interior_pressure(u1, u2, tc), std::invalid_argument);
}

TEST_CASE("bottom corrector: zero stress gives zero corrector") {
    Grid g(8, 16, 5, 2.0);
    BoundaryLayerProfile p(WindStress::zero(), linear_tc(), 0.2);
    auto c = bottom_corrector(p, g);
    for (double v : c.phi_h.data()) CHECK(v == 0.0);
    for (double v : c.chi.data()) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("bottom corrector: boundary conditions at the sea floor") {
    Grid g(16, 32, 5, 2.0);
    double eps = 0.15;
    BoundaryLayerProfile p(WindStress::zonal_curl(2, 1.0, 1), linear_tc(eps), eps);
    auto c = bottom_corrector(p, g);
    CHECK(std::abs(c.phi3_mean) < 1e-8);
    double scale = 0.0;
    for (double v : c.phi_h.data()) scale = std::max(scale, std::abs(v));
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            double x = g.x(i), y = g.y(j);
            // dz of (layer + corrector) horizontal velocity vanishes at z=0
            Vec2 layer_dz = bl_dzeta_velocity_h(p, x, y, 1.0 / eps) * (-1.0 / eps);
            Vec2 corr_dz = c.dz_v_h(i, j, 0.0);
            CHECK(std::abs(layer_dz.x + corr_dz.x) < 1e-10 * std::max(1.0, scale));
            CHECK(std::abs(layer_dz.y + corr_dz.y) < 1e-10 * std::max(1.0, scale));
            // total vertical velocity vanishes at z=0
            double u3 = bl_velocity_3(p, x, y, 1.0 / eps) + c.v_3(i, j, 0.0);
            CHECK(std::abs(u3) < 1e-10);
            // and the corrector itself vanishes nowhere above z=1
            CHECK(c.v_3(i, j, 1.0) == 0.0);
        }
}

TEST_CASE("bottom corrector is exponentially small in 1/epsilon") {
    Grid g(8, 32, 5, 2.0);
    std::vector<double> eps{0.2, 0.1, 0.05}, norms;
    for (double e : eps) {
        BoundaryLayerProfile p(WindStress::zonal_curl(2, 1.0, 1), linear_tc(e), e);
        auto c = bottom_corrector(p, g);
        norms.push_back(c.phi_h.l2_norm());
    }
    CHECK(norms[1] < norms[0]);
    CHECK(norms[2] < norms[1]);
    // super-exponential acceleration of the decay
    CHECK(norms[2] / norms[1] < norms[1] / norms[0]);
}

TEST_CASE("assembled solution: interior norm stays order one along the ladder") {
    Grid g(16, 64, 5, 2.0);
    auto profile = CoriolisProfile::linear(1.0);
    auto stress = WindStress::zonal_curl(2, 1.0, 1);
    std::vector<double> norms;
    for (double e : {0.1, 0.05, 0.025}) {
        auto par = Parameters::theorem_scaling(e, e * e * e, e);
        auto sol = assemble_stationary(par, profile, stress, g);
        Field ui = sol.sample_interior();
        norms.push_back(ui.l2_norm());
    }
    double lo = *std::min_element(norms.begin(), norms.end());
    double hi = *std::max_element(norms.begin(), norms.end());
    CHECK(hi / lo < 1.5);
}

TEST_CASE("assembled solution: top and bottom vertical velocity vanish") {
    Grid g(16, 32, 9, 2.0);
    auto par = Parameters::theorem_scaling(0.1, 1e-3, 0.1);
    auto sol = assemble_stationary(par, CoriolisProfile::linear(1.0),
                                   WindStress::zonal_curl(2, 1.0, 1), g);
    double scale = 0.0;
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i)
            scale = std::max(scale, std::abs(sol.w.at(0, i, j)));
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            CHECK(std::abs(sol.velocity_at(2, i, j, 1.0)) < 1e-8 * scale);
            CHECK(std::abs(sol.velocity_at(2, i, j, 0.0)) < 1e-8 * scale);
        }
}

TEST_CASE("assembled solution is divergence free at second order") {
    auto par = Parameters::theorem_scaling(0.2, 1e-3, 0.2);
    auto profile = CoriolisProfile::linear(1.0);
    auto stress = WindStress::zonal_curl(2, 1.0, 1);
    auto max_div = [&](int nx, int ny, int nz) {
        Grid g(nx, ny, nz, 2.0);
        auto sol = assemble_stationary(par, profile, stress, g);
        Field v = sol.sample_velocity();
        double worst = 0.0;
        for (int k = 1; k < g.Nz - 1; ++k)
            for (int j = 1; j < g.Ny - 1; ++j) {
                if (std::abs(g.y(j)) < 0.5) continue;  // truncation-scale structure
                for (int i = 0; i < g.Nx; ++i) {
                    int ip = (i + 1) % g.Nx, im = (i + g.Nx - 1) % g.Nx;
                    double d = (v.at(0, ip, j, k) - v.at(0, im, j, k)) / (2.0 * g.dx()) +
                               (v.at(1, i, j + 1, k) - v.at(1, i, j - 1, k)) / (2.0 * g.dy()) +
                               (v.at(2, i, j, k + 1) - v.at(2, i, j, k - 1)) / (2.0 * g.dz());
                    worst = std::max(worst, std::abs(d));
                }
            }
        return worst;
    };
    double e1 = max_div(16, 32, 33), e2 = max_div(32, 64, 65), e3 = max_div(64, 128, 129);
    CHECK(e2 < e1 / 2.5);
    CHECK(e3 < e2 / 3.0);  // ratio approaches 4 (second order) under refinement
}

TEST_CASE("truncated interior converges to the untruncated one") {
    Grid g(16, 64, 5, 2.0);
    auto profile = CoriolisProfile::linear(1.0);
    auto stress = WindStress::zonal_curl(2, 1.0, 1);
    auto ref_tc = truncate_coriolis(profile, 1e-8, 0.7);
    Field w_ref = sample_pumping(stress, ref_tc, g);
    Field u2_ref = sverdrup_meridional(w_ref, ref_tc);
    std::vector<double> errs;
    for (double d : {0.2, 0.1, 0.05}) {
        auto tc = truncate_coriolis(profile, d, 0.7);
        Field w = sample_pumping(stress, tc, g);
        Field u2 = sverdrup_meridional(w, tc);
        double s = 0.0;
        for (std::size_t n = 0; n < u2.data().size(); ++n) {
            double dv = u2.data()[n] - u2_ref.data()[n];
            s += dv * dv;
        }
        errs.push_back(std::sqrt(s));
    }
    CHECK(errs[1] < errs[0]);
    CHECK(errs[2] < errs[1]);
}
