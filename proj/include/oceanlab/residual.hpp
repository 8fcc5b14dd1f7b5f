#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "oceanlab/fft.hpp"
#include "oceanlab/interior.hpp"
#include "oceanlab/quadrature.hpp"

namespace oceanlab {

// ---------------------------------------------------------------------------
// Parameter-regime conditions on (epsilon, nu_h, delta)
// ---------------------------------------------------------------------------

/// "a << b" is operationalized as a/b <= margin (default 0.1).
struct DeltaConditionReport {
    struct Entry {
        std::string name;
        double ratio;
        bool passed;
    };
    std::vector<Entry> entries;
    double margin;

    bool all_passed() const {
        for (const auto& e : entries)
            if (!e.passed) return false;
        return true;
    }
};

/// The admissible window for the truncation width:
/// max(nu_h, eps^10, nu_h^{2/3} eps^2) << delta << eps^{6/11}, and nu_h << eps.
inline DeltaConditionReport check_delta_conditions(double epsilon, double nu_h, double delta,
                                                   double margin = 0.1) {
    if (!(epsilon > 0) || !(delta > 0) || nu_h < 0)
        throw std::invalid_argument("check_delta_conditions: need epsilon, delta > 0, nu_h >= 0");
    if (!(margin > 0) || !(margin < 1))
        throw std::invalid_argument("check_delta_conditions: margin must lie in (0,1)");
    DeltaConditionReport rep;
    rep.margin = margin;
    auto add = [&](const std::string& name, double ratio) {
        rep.entries.push_back({name, ratio, ratio <= margin});
    };
    add("nu_h << delta", nu_h / delta);
    add("eps^10 << delta", std::pow(epsilon, 10) / delta);
    add("nu_h^(2/3) eps^2 << delta", std::pow(nu_h, 2.0 / 3.0) * epsilon * epsilon / delta);
    add("delta << eps^(6/11)", delta / std::pow(epsilon, 6.0 / 11.0));
    add("nu_h << eps", nu_h / epsilon);
    return rep;
}

// ---------------------------------------------------------------------------
// Discrete H^-1 dual norm
// ---------------------------------------------------------------------------

/// Negative-order Sobolev norm on the periodicized horizontal domain
/// (x-period 2*pi, y-period 2L): Fourier weights (1 + k^2 + xi^2)^{-1/2}
/// per level, then L2 (trapezoid) in z. Compactly supported data keeps the
/// periodicization error negligible.
inline double dual_norm(const Field& f) {
    const Grid& g = f.grid();
    const int Nx = g.Nx, Ny = g.Ny;
    double cell = g.dx() * g.dy() / (double(Nx) * double(Ny));
    std::vector<std::complex<double>> buf(std::size_t(Nx) * Ny);
    double total = 0.0;
    for (int k = 0; k < f.levels(); ++k) {
        double wz = 1.0;
        if (f.levels() > 1) wz = (k == 0 || k == f.levels() - 1) ? 0.5 : 1.0;
        double level = 0.0;
        for (int c = 0; c < f.components(); ++c) {
            for (int j = 0; j < Ny; ++j)
                for (int i = 0; i < Nx; ++i)
                    buf[std::size_t(j) * Nx + i] = f.at(c, i, j, k);
            fft_2d(buf, Nx, Ny, true);
            for (int j = 0; j < Ny; ++j) {
                double xi = M_PI * fft_wavenumber(j, Ny) / g.L;
                for (int i = 0; i < Nx; ++i) {
                    double kk = fft_wavenumber(i, Nx);
                    double w = 1.0 / (1.0 + kk * kk + xi * xi);
                    level += std::norm(buf[std::size_t(j) * Nx + i]) * w;
                }
            }
        }
        total += wz * level;
    }
    total *= cell;
    if (f.levels() > 1) total *= g.dz();
    return std::sqrt(total);
}

// ---------------------------------------------------------------------------
// Residual of the stationary operator
// ---------------------------------------------------------------------------

/// Residual of the stationary momentum system split by origin. The
/// non-viscous split r1 collects the truncation mismatch, the neglected
/// layer pressure, the discrete geostrophic defect, and the corrector's
/// unbalanced terms; the viscous split r2 collects every -nu_h Lap_h term.
struct ResidualReport {
    struct Term {
        std::string name;
        double l2 = 0.0;
        double dual = 0.0;
        bool viscous = false;
    };
    std::vector<Term> horizontal;
    std::vector<Term> vertical;

    double r1_h_l2 = 0.0, r2_h_l2 = 0.0, r2_h_dual = 0.0;
    double r1_3_l2 = 0.0, r2_3_l2 = 0.0, r2_3_dual = 0.0;

    /// Max deviation of sum-of-terms from the assembled totals (identically
    /// ~0 by construction; kept as an explicit consistency figure).
    double breakdown_defect = 0.0;
};

namespace detail {

/// Second-order horizontal Laplacian of a per-level evaluator sampled on
/// grid nodes: periodic in x, one-sided second difference at the latitude
/// edges (fields decay there).
template <typename F>
inline double grid_laplacian(const F& f, const Grid& g, int i, int j) {
    int ip = (i + 1) % g.Nx, im = (i + g.Nx - 1) % g.Nx;
    double dxx = (f(ip, j) - 2.0 * f(i, j) + f(im, j)) / (g.dx() * g.dx());
    double dyy;
    if (j == 0)
        dyy = (f(i, 0) - 2.0 * f(i, 1) + f(i, 2)) / (g.dy() * g.dy());
    else if (j == g.Ny - 1)
        dyy = (f(i, g.Ny - 1) - 2.0 * f(i, g.Ny - 2) + f(i, g.Ny - 3)) / (g.dy() * g.dy());
    else
        dyy = (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) / (g.dy() * g.dy());
    return dxx + dyy;
}

/// Laplacian of an analytic function of (x, y) by centered differences
/// with a small step (independent of the grid).
template <typename F>
inline double analytic_laplacian(const F& f, double x, double y, double h = 1e-3) {
    double fc = f(x, y);
    double dxx = (f(x + h, y) - 2.0 * fc + f(x - h, y)) / (h * h);
    double dyy = (f(x, y + h) - 2.0 * fc + f(x, y - h)) / (h * h);
    return dxx + dyy;
}

}  // namespace detail

inline ResidualReport apply_stationary_operator(const StationarySolution& sol) {
    const Grid& g = sol.grid;
    const Parameters& par = sol.params;
    const double eps = par.epsilon, nu_h = par.nu_h;
    const TruncatedCoriolis& tc = sol.bl.rotation;

    ResidualReport rep;

    auto h_term = [&](const std::string& name, bool viscous) -> std::pair<Field, std::size_t> {
        rep.horizontal.push_back({name, 0.0, 0.0, viscous});
        return {Field::volumetric(g, 2), rep.horizontal.size() - 1};
    };
    auto v_term = [&](const std::string& name, bool viscous) -> std::pair<Field, std::size_t> {
        rep.vertical.push_back({name, 0.0, 0.0, viscous});
        return {Field::volumetric(g, 1), rep.vertical.size() - 1};
    };

    std::vector<std::pair<Field, std::size_t>> hterms, vterms;

    // --- horizontal, non-viscous ---

    // (b - b_delta)/eps applied to the rotated layer velocity: the cost of
    // truncating the Coriolis factor inside the layer only.
    {
        auto [f, idx] = h_term("truncation_mismatch", false);
        for (int k = 0; k < g.Nz; ++k) {
            double zeta = (1.0 - g.z(k)) / eps;
            for (int j = 0; j < g.Ny; ++j) {
                double y = g.y(j);
                double mis = (tc.base.b(y) - tc.b(y)) / eps;
                for (int i = 0; i < g.Nx; ++i) {
                    Vec2 u = bl_velocity_h(sol.bl, g.x(i), y, zeta);
                    Vec2 up = u.perp();
                    f.at(0, i, j, k) = mis * up.x;
                    f.at(1, i, j, k) = mis * up.y;
                }
            }
        }
        hterms.emplace_back(std::move(f), idx);
    }

    // Horizontal gradient of the neglected layer pressure.
    {
        auto [f, idx] = h_term("layer_pressure", false);
        const double h = 1e-4;
        for (int k = 0; k < g.Nz; ++k) {
            double zeta = (1.0 - g.z(k)) / eps;
            for (int j = 0; j < g.Ny; ++j) {
                double y = g.y(j);
                for (int i = 0; i < g.Nx; ++i) {
                    double x = g.x(i);
                    f.at(0, i, j, k) = (bl_pressure(sol.bl, x + h, y, zeta) -
                                        bl_pressure(sol.bl, x - h, y, zeta)) /
                                       (2.0 * h);
                    f.at(1, i, j, k) = (bl_pressure(sol.bl, x, y + h, zeta) -
                                        bl_pressure(sol.bl, x, y - h, zeta)) /
                                       (2.0 * h);
                }
            }
        }
        hterms.emplace_back(std::move(f), idx);
    }

    // Geostrophic defect of the interior: (1/eps)(b u^perp + grad p). The
    // balance holds exactly in the continuum by construction (d_y p is the
    // antisymmetric partner -b u_1 analytically), so the reported term is
    // the spectral round-trip defect of the x-derivative only; centered
    // differences would merely measure their own O(dy^2/delta^2) error.
    {
        auto [f, idx] = h_term("interior_geostrophic", false);
        std::vector<std::complex<double>> row(g.Nx);
        for (int j = 0; j < g.Ny; ++j) {
            double b = tc.base.b(g.y(j));
            for (int i = 0; i < g.Nx; ++i) row[i] = sol.p_int.at(0, i, j);
            fft_1d(row, true);
            for (int i = 0; i < g.Nx; ++i)
                row[i] *= std::complex<double>(0.0, double(fft_wavenumber(i, g.Nx)));
            row[g.Nx / 2] = 0.0;  // Nyquist mode has no odd derivative
            fft_1d(row, false);
            for (int i = 0; i < g.Nx; ++i) {
                double rx = (-b * sol.u2.at(0, i, j) + row[i].real()) / eps;
                for (int k = 0; k < g.Nz; ++k) {
                    f.at(0, i, j, k) = rx;
                    f.at(1, i, j, k) = 0.0;
                }
            }
        }
        hterms.emplace_back(std::move(f), idx);
    }

    // Corrector: (1/eps) b v_h^perp - eps d_zz v_h (no pressure balances it;
    // exponentially small).
    {
        auto [f, idx] = h_term("corrector_balance", false);
        for (int j = 0; j < g.Ny; ++j) {
            double b = tc.base.b(g.y(j));
            for (int i = 0; i < g.Nx; ++i) {
                Vec2 dzz = sol.corrector.dzz_v_h(i, j);
                for (int k = 0; k < g.Nz; ++k) {
                    Vec2 vp = sol.corrector.v_h(i, j, g.z(k)).perp();
                    f.at(0, i, j, k) = b * vp.x / eps - eps * dzz.x;
                    f.at(1, i, j, k) = b * vp.y / eps - eps * dzz.y;
                }
            }
        }
        hterms.emplace_back(std::move(f), idx);
    }

    // --- horizontal, viscous ---
    if (nu_h > 0) {
        {
            auto [f, idx] = h_term("viscous_layer", true);
            for (int k = 0; k < g.Nz; ++k) {
                double zeta = (1.0 - g.z(k)) / eps;
                for (int j = 0; j < g.Ny; ++j) {
                    double y = g.y(j);
                    for (int i = 0; i < g.Nx; ++i) {
                        double x = g.x(i);
                        f.at(0, i, j, k) = -nu_h * detail::analytic_laplacian(
                                                       [&](double a, double b2) {
                                                           return bl_velocity_h(sol.bl, a, b2, zeta).x;
                                                       },
                                                       x, y);
                        f.at(1, i, j, k) = -nu_h * detail::analytic_laplacian(
                                                       [&](double a, double b2) {
                                                           return bl_velocity_h(sol.bl, a, b2, zeta).y;
                                                       },
                                                       x, y);
                    }
                }
            }
            hterms.emplace_back(std::move(f), idx);
        }
        {
            auto [f, idx] = h_term("viscous_interior", true);
            for (int j = 0; j < g.Ny; ++j)
                for (int i = 0; i < g.Nx; ++i) {
                    double l1 = detail::grid_laplacian(
                        [&](int a, int b2) { return sol.u1.at(0, a, b2); }, g, i, j);
                    double l2 = detail::grid_laplacian(
                        [&](int a, int b2) { return sol.u2.at(0, a, b2); }, g, i, j);
                    for (int k = 0; k < g.Nz; ++k) {
                        f.at(0, i, j, k) = -nu_h * l1;
                        f.at(1, i, j, k) = -nu_h * l2;
                    }
                }
            hterms.emplace_back(std::move(f), idx);
        }
        {
            auto [f, idx] = h_term("viscous_corrector", true);
            for (int k = 0; k < g.Nz; ++k) {
                double z = g.z(k);
                for (int j = 0; j < g.Ny; ++j)
                    for (int i = 0; i < g.Nx; ++i) {
                        double l1 = detail::grid_laplacian(
                            [&](int a, int b2) { return sol.corrector.v_h(a, b2, z).x; }, g, i,
                            j);
                        double l2 = detail::grid_laplacian(
                            [&](int a, int b2) { return sol.corrector.v_h(a, b2, z).y; }, g, i,
                            j);
                        f.at(0, i, j, k) = -nu_h * l1;
                        f.at(1, i, j, k) = -nu_h * l2;
                    }
            }
            hterms.emplace_back(std::move(f), idx);
        }
    }

    // --- vertical ---

    // Corrector stretch: -eps d_zz v_3 (the layer's own vertical balance
    // cancels exactly; the interior is linear in z).
    {
        auto [f, idx] = v_term("corrector_stretch", false);
        for (int k = 0; k < g.Nz; ++k) {
            double z = g.z(k);
            for (int j = 0; j < g.Ny; ++j)
                for (int i = 0; i < g.Nx; ++i)
                    f.at(0, i, j, k) = -eps * sol.corrector.dzz_v_3(i, j, z);
        }
        vterms.emplace_back(std::move(f), idx);
    }

    if (nu_h > 0) {
        {
            auto [f, idx] = v_term("viscous_layer_vertical", true);
            for (int k = 0; k < g.Nz; ++k) {
                double zeta = (1.0 - g.z(k)) / eps;
                for (int j = 0; j < g.Ny; ++j) {
                    double y = g.y(j);
                    for (int i = 0; i < g.Nx; ++i)
                        f.at(0, i, j, k) = -nu_h * detail::analytic_laplacian(
                                                       [&](double a, double b2) {
                                                           return bl_velocity_3(sol.bl, a, b2, zeta);
                                                       },
                                                       g.x(i), y);
                }
            }
            vterms.emplace_back(std::move(f), idx);
        }
        {
            auto [f, idx] = v_term("viscous_interior_vertical", true);
            for (int j = 0; j < g.Ny; ++j)
                for (int i = 0; i < g.Nx; ++i) {
                    double lw = detail::grid_laplacian(
                        [&](int a, int b2) { return sol.w.at(0, a, b2); }, g, i, j);
                    for (int k = 0; k < g.Nz; ++k)
                        f.at(0, i, j, k) = -nu_h * g.z(k) * lw;
                }
            vterms.emplace_back(std::move(f), idx);
        }
        {
            auto [f, idx] = v_term("viscous_corrector_vertical", true);
            for (int k = 0; k < g.Nz; ++k) {
                double z = g.z(k);
                for (int j = 0; j < g.Ny; ++j)
                    for (int i = 0; i < g.Nx; ++i)
                        f.at(0, i, j, k) =
                            -nu_h * detail::grid_laplacian(
                                        [&](int a, int b2) { return sol.corrector.v_3(a, b2, z); },
                                        g, i, j);
            }
            vterms.emplace_back(std::move(f), idx);
        }
    }

    // --- totals and per-term norms ---
    Field r1_h = Field::volumetric(g, 2), r2_h = Field::volumetric(g, 2);
    Field r1_3 = Field::volumetric(g, 1), r2_3 = Field::volumetric(g, 1);

    for (auto& [f, idx] : hterms) {
        rep.horizontal[idx].l2 = f.l2_norm();
        rep.horizontal[idx].dual = dual_norm(f);
        Field& acc = rep.horizontal[idx].viscous ? r2_h : r1_h;
        for (std::size_t n = 0; n < f.data().size(); ++n) acc.data()[n] += f.data()[n];
    }
    for (auto& [f, idx] : vterms) {
        rep.vertical[idx].l2 = f.l2_norm();
        rep.vertical[idx].dual = dual_norm(f);
        Field& acc = rep.vertical[idx].viscous ? r2_3 : r1_3;
        for (std::size_t n = 0; n < f.data().size(); ++n) acc.data()[n] += f.data()[n];
    }

    rep.r1_h_l2 = r1_h.l2_norm();
    rep.r2_h_l2 = r2_h.l2_norm();
    rep.r2_h_dual = dual_norm(r2_h);
    rep.r1_3_l2 = r1_3.l2_norm();
    rep.r2_3_l2 = r2_3.l2_norm();
    rep.r2_3_dual = dual_norm(r2_3);

    // Breakdown consistency: re-sum the term fields in reverse order and
    // compare pointwise with the accumulated totals.
    double defect = 0.0;
    for (std::size_t n = 0; n < r1_h.data().size(); ++n) {
        double s = 0.0;
        for (auto it = hterms.rbegin(); it != hterms.rend(); ++it) s += it->first.data()[n];
        defect = std::max(defect, std::abs(s - (r1_h.data()[n] + r2_h.data()[n])));
    }
    for (std::size_t n = 0; n < r1_3.data().size(); ++n) {
        double s = 0.0;
        for (auto it = vterms.rbegin(); it != vterms.rend(); ++it) s += it->first.data()[n];
        defect = std::max(defect, std::abs(s - (r1_3.data()[n] + r2_3.data()[n])));
    }
    rep.breakdown_defect = defect;
    return rep;
}

// ---------------------------------------------------------------------------
// Scaling study over an epsilon ladder
// ---------------------------------------------------------------------------

struct ScalingStudy {
    std::vector<double> epsilons;
    std::map<std::string, std::vector<double>> norms;
    std::map<std::string, double> slopes;  // log-log slope of norm vs epsilon
    bool r1_decaying = false;
    bool r2_decaying = false;
    bool bl_slope_ok = false;   // ||u^BL_h|| ~ eps^{-1/2}
    bool int_slope_ok = false;  // ||u^int|| ~ eps^0
};

/// Physical-space L2 norm of the layer's horizontal velocity: per-column
/// quadrature int_0^1 |u_h|^2 dz = eps int_0^{1/eps} |U_h|^2 dzeta.
inline double bl_physical_h_norm(const BoundaryLayerProfile& p, const Grid& g) {
    double sum = 0.0;
    for (int j = 0; j < g.Ny; ++j) {
        double y = g.y(j);
        for (int i = 0; i < g.Nx; ++i) {
            double x = g.x(i);
            double col = integrate_adaptive(
                [&](double zeta) {
                    Vec2 u = bl_velocity_h(p, x, y, zeta);
                    return u.dot(u);
                },
                0.0, 1.0 / p.epsilon, 1e-12);
            sum += p.epsilon * col;
        }
    }
    return std::sqrt(sum * g.dx() * g.dy());
}

/// Stretched-space norms over omega_h x (0, infinity): closed form for
/// |U_h| and for the truncation-weighted |(b - b_delta) U_h|.
inline double bl_stretched_h_norm(const BoundaryLayerProfile& p, const Grid& g,
                                  bool weight_mismatch = false) {
    double sum = 0.0;
    for (int j = 0; j < g.Ny; ++j) {
        double y = g.y(j);
        double wgt = 1.0;
        if (weight_mismatch) {
            double m = p.rotation.base.b(y) - p.rotation.b(y);
            wgt = m * m;
        }
        for (int i = 0; i < g.Nx; ++i)
            sum += wgt * column_l2_norms(p, g.x(i), y).horizontal_closed;
    }
    return std::sqrt(sum * g.dx() * g.dy());
}

inline double bl_stretched_3_norm(const BoundaryLayerProfile& p, const Grid& g) {
    double sum = 0.0;
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i)
            sum += column_l2_norms(p, g.x(i), g.y(j)).vertical_quadrature;
    return std::sqrt(sum * g.dx() * g.dy());
}

/// Assembles the stationary solution per epsilon (delta and nu_h given by
/// rules of epsilon), measures sizes and residual norms, and fits log-log
/// slopes against epsilon.
inline ScalingStudy scaling_study(const CoriolisProfile& profile, const WindStress& stress,
                                  const std::vector<double>& epsilons,
                                  const std::function<double(double)>& delta_rule,
                                  const std::function<double(double)>& nuh_rule, const Grid& grid,
                                  double alpha = 0.7, double slope_tol = 0.1) {
    if (epsilons.size() < 3)
        throw std::invalid_argument("scaling_study: need at least 3 epsilon values");
    for (std::size_t i = 1; i < epsilons.size(); ++i)
        if (!(epsilons[i] < epsilons[i - 1]))
            throw std::invalid_argument("scaling_study: epsilons must be strictly decreasing");

    ScalingStudy study;
    study.epsilons = epsilons;
    for (double eps : epsilons) {
        Parameters par = Parameters::theorem_scaling(eps, nuh_rule(eps), delta_rule(eps), alpha,
                                                     profile.beta);
        StationarySolution sol = assemble_stationary(par, profile, stress, grid);
        ResidualReport rep = apply_stationary_operator(sol);

        study.norms["u_bl_h_l2"].push_back(bl_physical_h_norm(sol.bl, grid));
        study.norms["u_int_l2"].push_back(sol.sample_interior().l2_norm());
        study.norms["U_bl_h_l2"].push_back(bl_stretched_h_norm(sol.bl, grid));
        study.norms["U_bl_3_l2"].push_back(bl_stretched_3_norm(sol.bl, grid));
        study.norms["mismatch_l2"].push_back(bl_stretched_h_norm(sol.bl, grid, true));
        study.norms["r1_h_l2"].push_back(rep.r1_h_l2);
        double nuh = par.nu_h;
        study.norms["r2_h_dual_over_sqrt_nuh"].push_back(
            nuh > 0 ? rep.r2_h_dual / std::sqrt(nuh) : 0.0);
    }
    for (const auto& [name, values] : study.norms) {
        bool nonzero = true;
        for (double v : values)
            if (!(std::abs(v) > 0)) nonzero = false;
        study.slopes[name] = nonzero ? fit_loglog_slope(epsilons, values)
                                     : std::numeric_limits<double>::quiet_NaN();
    }

    auto decreasing = [&](const std::string& name) {
        const auto& v = study.norms[name];
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] < v[i - 1])) return false;
        return true;
    };
    study.r1_decaying = decreasing("r1_h_l2");
    study.r2_decaying = decreasing("r2_h_dual_over_sqrt_nuh");
    study.bl_slope_ok = std::abs(study.slopes["u_bl_h_l2"] + 0.5) <= slope_tol;
    study.int_slope_ok = std::abs(study.slopes["u_int_l2"]) <= slope_tol;
    return study;
}

}  // namespace oceanlab
