#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "oceanlab/coriolis.hpp"
#include "oceanlab/ekman.hpp"
#include "oceanlab/fft.hpp"
#include "oceanlab/grid.hpp"
#include "oceanlab/params.hpp"
#include "oceanlab/validation.hpp"
#include "oceanlab/windstress.hpp"

namespace oceanlab {

/// Pumping field sampled on the horizontal grid.
inline Field sample_pumping(const WindStress& stress, const TruncatedCoriolis& tc,
                            const Grid& grid) {
    Field w = Field::horizontal(grid, 1);
    for (int j = 0; j < grid.Ny; ++j)
        for (int i = 0; i < grid.Nx; ++i)
            w.at(0, i, j) = ekman_pumping(stress, tc, grid.x(i), grid.y(j));
    return w;
}

/// Meridional transport balancing the pumping: u_2 = b w / b'. The
/// rotation factor enters untruncated (the truncation lives only inside
/// w); b' must stay bounded away from zero.
inline Field sverdrup_meridional(const Field& w, const TruncatedCoriolis& tc) {
    const Grid& g = w.grid();
    Field u2 = Field::horizontal(g, 1);
    for (int j = 0; j < g.Ny; ++j) {
        double y = g.y(j);
        double db = tc.base.db(y);
        if (std::abs(db) < 1e-12)
            throw std::domain_error("sverdrup_meridional: b' vanishes at y = " + std::to_string(y));
        double ratio = tc.base.b(y) / db;
        for (int i = 0; i < g.Nx; ++i) u2.at(0, i, j) = ratio * w.at(0, i, j);
    }
    return u2;
}

/// Vertical interior velocity u_3(x_h, z) = z * w(x_h) at a fixed level.
inline Field vertical_velocity(const Field& w, double z) {
    Field u3 = Field::horizontal(w.grid(), 1);
    for (std::size_t n = 0; n < w.data().size(); ++n) u3.data()[n] = z * w.data()[n];
    return u3;
}

/// Zonal velocity from d_x u_1 = -(2 - b b''/b'^2) w - (b/b') d_y w,
/// integrated in x spectrally with the zero-zonal-mean gauge. d_y w is
/// supplied analytically by the caller (pumping gradient).
inline Field zonal_velocity(const Field& w, const Field& dyw, const TruncatedCoriolis& tc) {
    const Grid& g = w.grid();
    double scale = 0.0;
    for (double v : w.data()) scale = std::max(scale, std::abs(v));

    Field u1 = Field::horizontal(g, 1);
    std::vector<std::complex<double>> row(g.Nx);
    for (int j = 0; j < g.Ny; ++j) {
        double y = g.y(j);
        double b = tc.base.b(y), db = tc.base.db(y), d2b = tc.base.d2b(y);
        double c0 = -(2.0 - b * d2b / (db * db));
        double c1 = -b / db;
        for (int i = 0; i < g.Nx; ++i)
            row[i] = c0 * w.at(0, i, j) + c1 * dyw.at(0, i, j);
        fft_1d(row, true);
        // The k = 0 mode of the right-hand side must vanish: this is the
        // compatibility condition (vanishing zonal mean of sigma_1).
        if (std::abs(row[0]) / g.Nx > 1e-10 * std::max(1.0, scale))
            throw std::invalid_argument(
                "zonal_velocity: compatibility condition violated "
                "(zonal mean of the forcing must vanish; requires zero zonal mean of sigma_1)");
        row[0] = 0.0;
        for (int i = 1; i < g.Nx; ++i) {
            int k = fft_wavenumber(i, g.Nx);
            row[i] /= std::complex<double>(0.0, double(k));
        }
        fft_1d(row, false);
        for (int i = 0; i < g.Nx; ++i) u1.at(0, i, j) = row[i].real();
    }
    return u1;
}

/// Interior pressure with grad p = -b u_h^perp = (b u_2, -b u_1), zero
/// mean: spectral inversion in x for nonzero modes, the zonal mode is
/// constant because u_1 has zero zonal mean. Throws when the data is not
/// curl-free to tolerance.
/// The curl tolerance is a structural gate (it rejects data that is not a
/// rotated gradient at all); finite differences near the equator carry
/// O(dy^2 / delta^2) error on desk-scale grids, hence the loose default.
inline Field interior_pressure(const Field& u1, const Field& u2, const TruncatedCoriolis& tc,
                               double curl_tol = 0.2) {
    const Grid& g = u1.grid();

    // Integrability check: d_x(-b u_1) - d_y(b u_2) should vanish.
    double scale = 0.0, worst = 0.0;
    for (int j = 1; j + 1 < g.Ny; ++j) {
        double b = tc.base.b(g.y(j));
        double bp = tc.base.b(g.y(j + 1)), bm = tc.base.b(g.y(j - 1));
        for (int i = 0; i < g.Nx; ++i) {
            int ip = (i + 1) % g.Nx, im = (i + g.Nx - 1) % g.Nx;
            double dx_term = -b * (u1.at(0, ip, j) - u1.at(0, im, j)) / (2.0 * g.dx());
            double dy_term = (bp * u2.at(0, i, j + 1) - bm * u2.at(0, i, j - 1)) / (2.0 * g.dy());
            worst = std::max(worst, std::abs(dx_term - dy_term));
            scale = std::max(scale, std::abs(b * u2.at(0, i, j)) + std::abs(b * u1.at(0, i, j)));
        }
    }
    if (worst > curl_tol * std::max(1.0, scale))
        throw std::invalid_argument("interior_pressure: -b u_h^perp is not curl-free to tolerance");

    Field p = Field::horizontal(g, 1);
    std::vector<std::complex<double>> row(g.Nx);
    for (int j = 0; j < g.Ny; ++j) {
        double b = tc.base.b(g.y(j));
        for (int i = 0; i < g.Nx; ++i) row[i] = b * u2.at(0, i, j);  // d_x p
        fft_1d(row, true);
        row[0] = 0.0;  // zonal mode: d_y p_0 = -b * (zonal mean u_1) = 0 (gauge)
        for (int i = 1; i < g.Nx; ++i) {
            int k = fft_wavenumber(i, g.Nx);
            row[i] /= std::complex<double>(0.0, double(k));
        }
        fft_1d(row, false);
        for (int i = 0; i < g.Nx; ++i) p.at(0, i, j) = row[i].real();
    }
    // zero global mean
    double mean = 0.0;
    for (double v : p.data()) mean += v;
    mean /= double(p.data().size());
    for (double& v : p.data()) v -= mean;
    return p;
}

namespace detail {

/// phi_h = d_z u^BL_h at z = 0 (exponentially small mismatch of the bottom
/// stress condition left by the surface layer), with its analytic
/// divergence, and phi_3 = -u^BL_3 at z = 0.
inline CVec2 corrector_phi_h(const BoundaryLayerProfile& p, double x, double y) {
    auto c = column_data(p, x, y);
    double inv_eps = 1.0 / p.epsilon;
    CVec2 out{0.0, 0.0};
    for (int branch : {+1, -1}) {
        complexd lam = branch > 0 ? c.rates.plus : c.rates.minus;
        complexd w = std::exp(-lam * inv_eps) / (2.0 * p.epsilon * p.epsilon);
        out = out + stress_branch(c.sigma, branch) * w;
    }
    return out;
}

inline double corrector_div_phi_h(const BoundaryLayerProfile& p, double x, double y) {
    auto c = column_data(p, x, y);
    double inv_eps = 1.0 / p.epsilon;
    complexd sum = 0.0;
    for (int branch : {+1, -1}) {
        complexd lam = branch > 0 ? c.rates.plus : c.rates.minus;
        complexd dlam = branch > 0 ? c.rates.dplus : c.rates.dminus;
        complexd D(c.div, -branch * c.rot);
        complexd s2(c.sigma.y, branch * c.sigma.x);
        sum += std::exp(-lam * inv_eps) * (D - s2 * dlam * inv_eps);
    }
    return (sum / (2.0 * p.epsilon * p.epsilon)).real();
}

}  // namespace detail

/// Bottom corrector restoring the z = 0 boundary conditions:
/// v_h = ((1-z)^2/2) phi_h + grad chi, with Delta chi = phi_3 - div phi_h / 6,
/// v_3 = ((1-z)^3/6) div phi_h + (1-z) Delta chi. Divergence free; vanishes
/// at z = 1 to the layer's exponentially small order.
struct BottomCorrector {
    Grid grid{4, 4, 4, 2.0};
    Field phi_h;       // 2 components
    Field phi3;        // scalar
    Field div_phi_h;   // scalar, analytic
    Field chi;         // scalar potential
    Field grad_chi;    // 2 components
    Field lap_chi;     // scalar (the right-hand side, stored exactly)
    double phi3_mean = 0.0;

    Vec2 v_h(int i, int j, double z) const {
        double f = (1.0 - z) * (1.0 - z) / 2.0;
        return {f * phi_h.at(0, i, j) + grad_chi.at(0, i, j),
                f * phi_h.at(1, i, j) + grad_chi.at(1, i, j)};
    }
    double v_3(int i, int j, double z) const {
        double omz = 1.0 - z;
        return omz * omz * omz / 6.0 * div_phi_h.at(0, i, j) + omz * lap_chi.at(0, i, j);
    }
    Vec2 dz_v_h(int i, int j, double z) const {
        double f = -(1.0 - z);
        return {f * phi_h.at(0, i, j), f * phi_h.at(1, i, j)};
    }
    Vec2 dzz_v_h(int i, int j) const { return {phi_h.at(0, i, j), phi_h.at(1, i, j)}; }
    double dzz_v_3(int i, int j, double z) const { return (1.0 - z) * div_phi_h.at(0, i, j); }
};

inline BottomCorrector bottom_corrector(const BoundaryLayerProfile& p, const Grid& grid,
                                        double mean_tol = 1e-8) {
    BottomCorrector c;
    c.grid = grid;
    c.phi_h = Field::horizontal(grid, 2);
    c.phi3 = Field::horizontal(grid, 1);
    c.div_phi_h = Field::horizontal(grid, 1);
    c.chi = Field::horizontal(grid, 1);
    c.grad_chi = Field::horizontal(grid, 2);
    c.lap_chi = Field::horizontal(grid, 1);

    double zeta_bottom = 1.0 / p.epsilon;
    double scale = 0.0;
    for (int j = 0; j < grid.Ny; ++j) {
        double y = grid.y(j);
        for (int i = 0; i < grid.Nx; ++i) {
            double x = grid.x(i);
            auto ph = detail::corrector_phi_h(p, x, y);
            c.phi_h.at(0, i, j) = ph.x.real();
            c.phi_h.at(1, i, j) = ph.y.real();
            double p3 = -bl_velocity_3(p, x, y, zeta_bottom);
            c.phi3.at(0, i, j) = p3;
            double dv = detail::corrector_div_phi_h(p, x, y);
            c.div_phi_h.at(0, i, j) = dv;
            c.lap_chi.at(0, i, j) = p3 - dv / 6.0;
            scale = std::max({scale, std::abs(p3), std::abs(dv)});
        }
    }

    // phi_3 must have zero mean over the horizontal domain for chi to exist.
    double mean = 0.0;
    for (double v : c.phi3.data()) mean += v;
    mean /= double(c.phi3.data().size());
    c.phi3_mean = mean;
    if (std::abs(mean) > mean_tol * std::max(1.0, scale))
        throw std::invalid_argument("bottom_corrector: phi_3 has nonzero mean (inconsistent data)");

    // Solve Delta chi = rhs: spectral in x; tridiagonal in y per nonzero
    // mode with chi = 0 at y = +-L (data decays exponentially there); the
    // zonal mode by double quadrature with zero-mean normalization.
    const int Nx = grid.Nx, Ny = grid.Ny;
    double dy = grid.dy();
    std::vector<std::vector<std::complex<double>>> rows(Ny,
                                                        std::vector<std::complex<double>>(Nx));
    for (int j = 0; j < Ny; ++j) {
        for (int i = 0; i < Nx; ++i) rows[j][i] = c.lap_chi.at(0, i, j);
        fft_1d(rows[j], true);
    }

    std::vector<std::vector<std::complex<double>>> chi_hat(
        Ny, std::vector<std::complex<double>>(Nx, 0.0));
    for (int i = 0; i < Nx; ++i) {
        int k = fft_wavenumber(i, Nx);
        if (k == 0) {
            // chi_0'' = rhs_0: integrate twice (trapezoid), remove the mean.
            std::vector<double> rhs(Ny), d1(Ny, 0.0), v(Ny, 0.0);
            for (int j = 0; j < Ny; ++j) rhs[j] = rows[j][0].real() / Nx;
            for (int j = 1; j < Ny; ++j)
                d1[j] = d1[j - 1] + 0.5 * dy * (rhs[j] + rhs[j - 1]);
            for (int j = 1; j < Ny; ++j)
                v[j] = v[j - 1] + 0.5 * dy * (d1[j] + d1[j - 1]);
            double m = 0.0;
            for (double q : v) m += q;
            m /= Ny;
            for (int j = 0; j < Ny; ++j) chi_hat[j][i] = (v[j] - m) * double(Nx);
        } else {
            // (d_yy - k^2) chi_k = rhs_k, Dirichlet at the latitude edges.
            std::vector<std::complex<double>> d(Ny), rhs(Ny);
            std::vector<double> sub(Ny, 1.0 / (dy * dy)), diag(Ny, -2.0 / (dy * dy) - k * k);
            for (int j = 0; j < Ny; ++j) rhs[j] = rows[j][i];
            // Thomas algorithm
            std::vector<double> cp(Ny);
            std::vector<std::complex<double>> dp(Ny);
            cp[0] = sub[0] / diag[0];
            dp[0] = rhs[0] / diag[0];
            for (int j = 1; j < Ny; ++j) {
                double mlt = diag[j] - sub[j] * cp[j - 1];
                cp[j] = sub[j] / mlt;
                dp[j] = (rhs[j] - sub[j] * dp[j - 1]) / mlt;
            }
            chi_hat[Ny - 1][i] = dp[Ny - 1];
            for (int j = Ny - 2; j >= 0; --j)
                chi_hat[j][i] = dp[j] - cp[j] * chi_hat[j + 1][i];
        }
    }

    // Back to physical space; d_x chi spectrally, d_y chi by centered FD.
    std::vector<std::complex<double>> row(Nx), drow(Nx);
    for (int j = 0; j < Ny; ++j) {
        for (int i = 0; i < Nx; ++i) {
            row[i] = chi_hat[j][i];
            int k = fft_wavenumber(i, Nx);
            drow[i] = chi_hat[j][i] * std::complex<double>(0.0, double(k));
        }
        fft_1d(row, false);
        fft_1d(drow, false);
        for (int i = 0; i < Nx; ++i) {
            c.chi.at(0, i, j) = row[i].real();
            c.grad_chi.at(0, i, j) = drow[i].real();
        }
    }
    for (int j = 0; j < Ny; ++j) {
        int jp = std::min(j + 1, Ny - 1), jm = std::max(j - 1, 0);
        double h = (jp - jm) * dy;
        for (int i = 0; i < Nx; ++i)
            c.grad_chi.at(1, i, j) = (c.chi.at(0, i, jp) - c.chi.at(0, i, jm)) / h;
    }
    return c;
}

/// The assembled stationary solution: surface layer + geostrophic interior
/// + bottom corrector, with separately evaluable parts.
struct StationarySolution {
    Parameters params;
    BoundaryLayerProfile bl;
    Grid grid;
    Field w;      // pumping
    Field u1, u2; // interior horizontal velocity (z-independent)
    Field p_int;  // interior pressure (z-independent)
    BottomCorrector corrector;

    /// Interior velocity (u1, u2, z*w) at a node.
    double interior_at(int comp, int i, int j, double z) const {
        switch (comp) {
            case 0: return u1.at(0, i, j);
            case 1: return u2.at(0, i, j);
            default: return z * w.at(0, i, j);
        }
    }

    /// Full velocity at a node and height z.
    double velocity_at(int comp, int i, int j, double z) const {
        double x = grid.x(i), y = grid.y(j);
        double zeta = (1.0 - z) / params.epsilon;
        double v = interior_at(comp, i, j, z);
        if (comp < 2) {
            Vec2 uh = bl_velocity_h(bl, x, y, zeta);
            Vec2 vc = corrector.v_h(i, j, z);
            v += (comp == 0 ? uh.x + vc.x : uh.y + vc.y);
        } else {
            v += bl_velocity_3(bl, x, y, zeta) + corrector.v_3(i, j, z);
        }
        return v;
    }

    /// Full pressure: the interior part enters the momentum balance at
    /// order 1/epsilon (it cancels the 1/eps Coriolis term), the layer
    /// pressure at its natural scale.
    double pressure_at(int i, int j, double z) const {
        double zeta = (1.0 - z) / params.epsilon;
        return p_int.at(0, i, j) / params.epsilon +
               bl_pressure(bl, grid.x(i), grid.y(j), zeta);
    }

    Field sample_velocity() const {
        Field f = Field::volumetric(grid, 3);
        for (int k = 0; k < grid.Nz; ++k)
            for (int j = 0; j < grid.Ny; ++j)
                for (int i = 0; i < grid.Nx; ++i)
                    for (int comp = 0; comp < 3; ++comp)
                        f.at(comp, i, j, k) = velocity_at(comp, i, j, grid.z(k));
        return f;
    }

    Field sample_interior() const {
        Field f = Field::volumetric(grid, 3);
        for (int k = 0; k < grid.Nz; ++k)
            for (int j = 0; j < grid.Ny; ++j)
                for (int i = 0; i < grid.Nx; ++i)
                    for (int comp = 0; comp < 3; ++comp)
                        f.at(comp, i, j, k) = interior_at(comp, i, j, grid.z(k));
        return f;
    }
};

/// Builds the full stationary solution. Validates the rotation profile and
/// the stress hypotheses first; throws on failure.
inline StationarySolution assemble_stationary(const Parameters& params,
                                              const CoriolisProfile& profile,
                                              const WindStress& stress, const Grid& grid) {
    params.validate();
    auto rep_b = validate_coriolis(profile, grid);
    if (!rep_b.all_passed())
        throw std::invalid_argument("assemble_stationary: rotation profile fails hypotheses:\n" +
                                    rep_b.summary());
    auto rep_s = validate_windstress(stress, grid);
    if (!rep_s.all_passed())
        throw std::invalid_argument("assemble_stationary: wind stress fails hypotheses:\n" +
                                    rep_s.summary());

    TruncatedCoriolis tc(profile, params.delta, params.alpha);
    BoundaryLayerProfile bl(stress, tc, params.epsilon);

    Field w = sample_pumping(stress, tc, grid);
    Field dyw = Field::horizontal(grid, 1);
    for (int j = 0; j < grid.Ny; ++j)
        for (int i = 0; i < grid.Nx; ++i)
            dyw.at(0, i, j) = ekman_pumping_grad(stress, tc, grid.x(i), grid.y(j)).y;

    Field u2 = sverdrup_meridional(w, tc);
    Field u1 = zonal_velocity(w, dyw, tc);
    Field p = interior_pressure(u1, u2, tc);
    BottomCorrector corr = bottom_corrector(bl, grid);

    return StationarySolution{params, bl, grid, std::move(w), std::move(u1), std::move(u2),
                              std::move(p), std::move(corr)};
}

}  // namespace oceanlab
