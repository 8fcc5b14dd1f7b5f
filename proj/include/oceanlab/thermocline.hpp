#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oceanlab/ekman.hpp"
#include "oceanlab/grid.hpp"
#include "oceanlab/interior.hpp"

namespace oceanlab {

/// Prescribed surface temperature theta_1(x, y) with its analytic
/// horizontal gradient.
struct SurfaceTemperature {
    std::function<double(double, double)> value;
    std::function<Vec2(double, double)> grad;

    static SurfaceTemperature constant(double c) {
        return {[c](double, double) { return c; }, [](double, double) -> Vec2 { return {0, 0}; }};
    }
    static SurfaceTemperature gaussian(double q = 1.0) {
        return {[q](double, double y) { return std::exp(-q * y * y); },
                [q](double, double y) -> Vec2 {
                    return {0.0, -2.0 * q * y * std::exp(-q * y * y)};
                }};
    }
};

/// Discrete temperature solution on the volume grid.
struct TemperatureField {
    Grid grid{4, 4, 4, 2.0};
    Field theta;  // scalar, volumetric
    double lambda = 1.0;
    int iterations = 0;
    double residual = 0.0;
};

namespace detail {

/// Max-norm of the discrete horizontal gradient of a 2-component
/// horizontal field (centered differences, periodic wrap in both
/// directions; the data decays at the latitude edges).
inline double max_grad_h(const Field& u1, const Field& u2) {
    const Grid& g = u1.grid();
    double worst = 0.0;
    for (int j = 0; j < g.Ny; ++j) {
        int jp = (j + 1) % g.Ny, jm = (j + g.Ny - 1) % g.Ny;
        for (int i = 0; i < g.Nx; ++i) {
            int ip = (i + 1) % g.Nx, im = (i + g.Nx - 1) % g.Nx;
            for (const Field* f : {&u1, &u2}) {
                double gx = (f->at(0, ip, j) - f->at(0, im, j)) / (2.0 * g.dx());
                double gy = (f->at(0, i, jp) - f->at(0, i, jm)) / (2.0 * g.dy());
                worst = std::max({worst, std::abs(gx), std::abs(gy)});
            }
        }
    }
    return worst;
}

}  // namespace detail

/// Advection-diffusion solve for -lambda d_zz theta - eps2_lap Delta_h theta
/// + u . grad theta = 0, theta|_{z=1} = theta_1, d_z theta|_{z=0} = 0.
/// Vertical part: second-order differences with a mirrored bottom node;
/// horizontal advection: first-order upwind (periodic wrap); optional
/// horizontal diffusion (eps2_lap > 0) with centered differences.
/// Gauss-Seidel over columns with vertical tridiagonal solves.
inline TemperatureField solve_temperature(const Field& velocity, const SurfaceTemperature& theta1,
                                          double lambda, const Grid& g, double eps2_lap = 0.0,
                                          double tol = 1e-9, int max_iter = 2000) {
    if (!(lambda > 0)) throw std::invalid_argument("solve_temperature: lambda must be positive");
    const int Nx = g.Nx, Ny = g.Ny, Nz = g.Nz;
    const double dx = g.dx(), dy = g.dy(), dz = g.dz();

    TemperatureField out;
    out.grid = g;
    out.lambda = lambda;
    out.theta = Field::volumetric(g, 1);
    Field& th = out.theta;

    // Initial guess: surface data extended downward (exact when u = 0 and
    // eps2_lap = 0).
    std::vector<std::vector<double>> surf(Ny, std::vector<double>(Nx));
    double theta_scale = 0.0;
    for (int j = 0; j < Ny; ++j)
        for (int i = 0; i < Nx; ++i) {
            surf[j][i] = theta1.value(g.x(i), g.y(j));
            theta_scale = std::max(theta_scale, std::abs(surf[j][i]));
            for (int k = 0; k < Nz; ++k) th.at(0, i, j, k) = surf[j][i];
        }
    theta_scale = std::max(theta_scale, 1.0);

    const double vz = lambda / (dz * dz);
    const double hx = eps2_lap / (dx * dx), hy = eps2_lap / (dy * dy);

    std::vector<double> diag(Nz), lower(Nz), upper(Nz), rhs(Nz), cp(Nz), dp(Nz);

    auto column_coefficients = [&](int i, int j, int k, double& dg, double& lo, double& up,
                                   double& rh) {
        double u1 = velocity.at(0, i, j, k);
        double u2 = velocity.at(1, i, j, k);
        double u3 = velocity.at(2, i, j, k);
        int ip = (i + 1) % Nx, im = (i + Nx - 1) % Nx;
        int jp = (j + 1) % Ny, jm = (j + Ny - 1) % Ny;

        dg = 0.0;
        lo = 0.0;
        up = 0.0;
        rh = 0.0;

        // vertical diffusion with mirrored bottom ghost
        if (k == 0) {
            dg += 2.0 * vz;
            up += -2.0 * vz;
        } else {
            dg += 2.0 * vz;
            lo += -vz;
            up += -vz;
        }
        // vertical advection (centered; one-sided at the bottom is not
        // needed since u3 vanishes at z = 0)
        if (k > 0) {
            lo += -u3 / (2.0 * dz);
            up += u3 / (2.0 * dz);
        }
        // horizontal upwind advection
        if (u1 >= 0) {
            dg += u1 / dx;
            rh += u1 / dx * th.at(0, im, j, k);
        } else {
            dg += -u1 / dx;
            rh += -u1 / dx * th.at(0, ip, j, k);
        }
        if (u2 >= 0) {
            dg += u2 / dy;
            rh += u2 / dy * th.at(0, i, jm, k);
        } else {
            dg += -u2 / dy;
            rh += -u2 / dy * th.at(0, i, jp, k);
        }
        // optional horizontal diffusion, centered
        if (eps2_lap > 0) {
            dg += 2.0 * hx + 2.0 * hy;
            rh += hx * (th.at(0, ip, j, k) + th.at(0, im, j, k)) +
                  hy * (th.at(0, i, jp, k) + th.at(0, i, jm, k));
        }
    };

    for (int iter = 1; iter <= max_iter; ++iter) {
        // Gauss-Seidel sweep in a fixed order.
        for (int j = 0; j < Ny; ++j) {
            for (int i = 0; i < Nx; ++i) {
                for (int k = 0; k < Nz - 1; ++k)
                    column_coefficients(i, j, k, diag[k], lower[k], upper[k], rhs[k]);
                // Dirichlet surface row
                diag[Nz - 1] = 1.0;
                lower[Nz - 1] = 0.0;
                upper[Nz - 1] = 0.0;
                rhs[Nz - 1] = surf[j][i];

                cp[0] = upper[0] / diag[0];
                dp[0] = rhs[0] / diag[0];
                for (int k = 1; k < Nz; ++k) {
                    double m = diag[k] - lower[k] * cp[k - 1];
                    cp[k] = upper[k] / m;
                    dp[k] = (rhs[k] - lower[k] * dp[k - 1]) / m;
                }
                th.at(0, i, j, Nz - 1) = dp[Nz - 1];
                for (int k = Nz - 2; k >= 0; --k)
                    th.at(0, i, j, k) = dp[k] - cp[k] * th.at(0, i, j, k + 1);
            }
        }

        // Residual of the full discrete operator.
        double res = 0.0;
        for (int j = 0; j < Ny; ++j)
            for (int i = 0; i < Nx; ++i)
                for (int k = 0; k < Nz - 1; ++k) {
                    double dg, lo, up, rh;
                    column_coefficients(i, j, k, dg, lo, up, rh);
                    double v = dg * th.at(0, i, j, k) - rh;
                    if (k > 0) v += lo * th.at(0, i, j, k - 1);
                    v += up * th.at(0, i, j, k + 1);
                    res = std::max(res, std::abs(v));
                }
        out.iterations = iter;
        out.residual = res;
        if (res < tol * theta_scale * vz) break;
    }
    if (out.residual >= tol * theta_scale * vz)
        throw std::runtime_error("solve_temperature: fixed-point iteration did not converge "
                                 "(residual " + std::to_string(out.residual) + ")");
    return out;
}

/// Interior temperature: -lambda d_zz theta + u^int . grad theta = 0 with
/// the Sverdrup interior velocity. Requires the smallness hypothesis
/// ||grad_h u^int_h||_inf <= lambda/4 guaranteeing the fixed point.
inline TemperatureField solve_interior_temperature(const StationarySolution& sol,
                                                   const SurfaceTemperature& theta1,
                                                   double lambda) {
    const Grid& g = sol.grid;
    double grad = detail::max_grad_h(sol.u1, sol.u2);
    if (grad > lambda / 4.0)
        throw std::invalid_argument(
            "solve_interior_temperature: interior velocity gradient " + std::to_string(grad) +
            " exceeds lambda/4 = " + std::to_string(lambda / 4.0) +
            "; the fixed-point smallness hypothesis fails");
    Field u = sol.sample_interior();
    return solve_temperature(u, theta1, lambda, g);
}

/// Closed-form surface-layer temperature corrector:
/// theta^BL = (1/2 lambda) sum_{+-} [grad theta_1 . (sigma +- i sigma_perp)]
///            e^{-lambda^{+-} zeta} / (lambda^{+-})^3.
/// Solves -lambda d_zetazeta theta^BL + eps u^BL_h . grad theta_1 = 0.
inline double bl_temperature(const WindStress& stress, const TruncatedCoriolis& tc,
                             const SurfaceTemperature& theta1, double lambda, double x, double y,
                             double zeta) {
    if (y == 0.0) throw std::domain_error("bl_temperature: singular at y = 0");
    Vec2 s = stress.sigma(x, y);
    Vec2 gt = theta1.grad(x, y);
    DecayRates r = decay_rates(tc, y);
    std::complex<double> sum = 0.0;
    for (int branch : {+1, -1}) {
        std::complex<double> lam = branch > 0 ? r.plus : r.minus;
        std::complex<double> dot(gt.x * s.x + gt.y * s.y,
                                 branch * (gt.x * (-s.y) + gt.y * s.x));
        sum += dot * std::exp(-lam * zeta) / (lam * lam * lam);
    }
    return (sum / (2.0 * lambda)).real();
}

/// d/dzeta of the layer temperature (analytic).
inline double bl_temperature_dzeta(const WindStress& stress, const TruncatedCoriolis& tc,
                                   const SurfaceTemperature& theta1, double lambda, double x,
                                   double y, double zeta) {
    if (y == 0.0) throw std::domain_error("bl_temperature_dzeta: singular at y = 0");
    Vec2 s = stress.sigma(x, y);
    Vec2 gt = theta1.grad(x, y);
    DecayRates r = decay_rates(tc, y);
    std::complex<double> sum = 0.0;
    for (int branch : {+1, -1}) {
        std::complex<double> lam = branch > 0 ? r.plus : r.minus;
        std::complex<double> dot(gt.x * s.x + gt.y * s.y,
                                 branch * (gt.x * (-s.y) + gt.y * s.x));
        sum += -dot * std::exp(-lam * zeta) / (lam * lam);
    }
    return (sum / (2.0 * lambda)).real();
}

/// Rigid-lid corrector making the assembled profile satisfy both vertical
/// boundary conditions exactly:
/// tilde = (z - 1) (1/eps) d_zeta theta^BL|_{zeta=1/eps} - theta^BL|_{zeta=0}.
inline double lid_corrector(const WindStress& stress, const TruncatedCoriolis& tc,
                            const SurfaceTemperature& theta1, double lambda, double epsilon,
                            double x, double y, double z) {
    double slope = bl_temperature_dzeta(stress, tc, theta1, lambda, x, y, 1.0 / epsilon) / epsilon;
    double top = bl_temperature(stress, tc, theta1, lambda, x, y, 0.0);
    return (z - 1.0) * slope - top;
}

/// Assembled approximate temperature
/// theta^app = theta_bar + eps theta^BL((1-z)/eps) + eps theta_tilde.
inline Field assemble_theta_app(const TemperatureField& theta_bar, const WindStress& stress,
                                const TruncatedCoriolis& tc, const SurfaceTemperature& theta1,
                                double lambda, double epsilon) {
    const Grid& g = theta_bar.grid;
    Field f = Field::volumetric(g, 1);
    for (int k = 0; k < g.Nz; ++k) {
        double z = g.z(k);
        double zeta = (1.0 - z) / epsilon;
        for (int j = 0; j < g.Ny; ++j) {
            double y = g.y(j);
            for (int i = 0; i < g.Nx; ++i) {
                double x = g.x(i);
                f.at(0, i, j, k) =
                    theta_bar.theta.at(0, i, j, k) +
                    epsilon * bl_temperature(stress, tc, theta1, lambda, x, y, zeta) +
                    epsilon * lid_corrector(stress, tc, theta1, lambda, epsilon, x, y, z);
            }
        }
    }
    return f;
}

/// L2 norms of theta - theta^app and of its vertical derivative (centered
/// differences, one-sided at the ends).
struct TemperatureError {
    double l2 = 0.0;
    double dz_l2 = 0.0;
};

inline TemperatureError temperature_error(const Field& theta, const Field& theta_app) {
    const Grid& g = theta.grid();
    Field diff = Field::volumetric(g, 1);
    for (std::size_t n = 0; n < diff.data().size(); ++n)
        diff.data()[n] = theta.data()[n] - theta_app.data()[n];
    Field dz = Field::volumetric(g, 1);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i)
            for (int k = 0; k < g.Nz; ++k) {
                int kp = std::min(k + 1, g.Nz - 1), km = std::max(k - 1, 0);
                dz.at(0, i, j, k) =
                    (diff.at(0, i, j, kp) - diff.at(0, i, j, km)) / ((kp - km) * g.dz());
            }
    return {diff.l2_norm(), dz.l2_norm()};
}

/// Epsilon-convergence study: per epsilon, solve the full equation
/// -lambda d_zz theta - eps^2 lambda Delta_h theta + u^stat . grad theta = 0
/// with the assembled stationary flow, compare against theta^app.
struct ThermoclineStudy {
    std::vector<double> epsilons;
    std::vector<TemperatureError> errors;
    bool decreasing = false;
};

inline ThermoclineStudy thermocline_convergence_study(const CoriolisProfile& profile,
                                                      const WindStress& stress,
                                                      const SurfaceTemperature& theta1,
                                                      double lambda,
                                                      const std::vector<double>& epsilons,
                                                      const Grid& grid, double alpha = 0.7) {
    if (epsilons.size() < 3)
        throw std::invalid_argument("thermocline_convergence_study: need >= 3 epsilons");
    ThermoclineStudy study;
    study.epsilons = epsilons;
    for (double eps : epsilons) {
        Parameters par = Parameters::theorem_scaling(eps, 0.0, eps, alpha, profile.beta);
        par.nu_h = 0.0;
        StationarySolution sol = assemble_stationary(par, profile, stress, grid);
        TemperatureField bar = solve_interior_temperature(sol, theta1, lambda);
        Field app = assemble_theta_app(bar, stress, sol.bl.rotation, theta1, lambda, eps);

        Field u_full = sol.sample_velocity();
        TemperatureField full =
            solve_temperature(u_full, theta1, lambda, grid, eps * eps * lambda);
        study.errors.push_back(temperature_error(full.theta, app));
    }
    study.decreasing = true;
    for (std::size_t i = 1; i < study.errors.size(); ++i) {
        double prev = study.errors[i - 1].l2 + study.errors[i - 1].dz_l2;
        double cur = study.errors[i].l2 + study.errors[i].dz_l2;
        if (!(cur < prev)) study.decreasing = false;
    }
    return study;
}

}  // namespace oceanlab
