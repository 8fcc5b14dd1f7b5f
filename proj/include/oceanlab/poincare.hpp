#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "oceanlab/quadrature.hpp"

namespace oceanlab {

/// Principal symbol of the z-oscillating wave family:
/// h = mode * |k3 * beta * y| / sqrt(k3^2 + xi^2), mode = +-1.
inline double poincare_hamiltonian(int mode, double y, double xi, int k3, double beta) {
    if (k3 == 0) throw std::invalid_argument("poincare_hamiltonian: k3 must be nonzero");
    if (mode != 1 && mode != -1)
        throw std::invalid_argument("poincare_hamiltonian: mode must be +1 or -1");
    return mode * std::abs(double(k3) * beta * y) / std::sqrt(double(k3) * k3 + xi * xi);
}

/// Dispersion polynomial P = k3^2 (beta y)^2 - (k3^2 + xi^2) tau^2, whose
/// roots in tau are the two symbol branches.
inline double dispersion_poly(double y, double xi, double tau, int k3, double beta) {
    return double(k3) * k3 * beta * beta * y * y - (double(k3) * k3 + xi * xi) * tau * tau;
}

/// Phase-space point on a bicharacteristic.
struct RayState {
    double Y;
    double Xi;
    int mode;  ///< +1 or -1 symbol branch
    int k3;    ///< nonzero vertical wavenumber
    int k;     ///< zonal wavenumber (carried, not dynamical)
    double beta;
    double h0;                     ///< conserved symbol value
    double damping_integral = 0.0; ///< int_0^t Xi(s)^2 ds

    static RayState make(double Y0, double Xi0, int mode, int k3, double beta, int k = 0) {
        RayState s{Y0, Xi0, mode, k3, k, beta, 0.0, 0.0};
        s.h0 = poincare_hamiltonian(mode, Y0, Xi0, k3, beta);
        if (s.h0 == 0.0)
            throw std::domain_error(
                "RayState: degenerate ray (h0 = 0 level line touches the equator)");
        return s;
    }
};

/// Hamilton equations of the symbol (|y| is smooth away from y = 0, and
/// level lines with h0 != 0 never reach it):
/// dY/dt = dh/dxi = -mode |k3 beta Y| Xi (k3^2 + Xi^2)^{-3/2},
/// dXi/dt = -dh/dy = -mode beta |k3| sign(Y) / sqrt(k3^2 + Xi^2).
struct RayRhs {
    double dY, dXi;
};

inline RayRhs ray_rhs(const RayState& s) {
    if (s.Y == 0.0) throw std::domain_error("ray_rhs: degenerate ray at Y = 0");
    double k32 = double(s.k3) * s.k3;
    double den = std::sqrt(k32 + s.Xi * s.Xi);
    double sgn = s.Y > 0 ? 1.0 : -1.0;
    RayRhs r;
    r.dY = -s.mode * std::abs(double(s.k3) * s.beta * s.Y) * s.Xi / (den * den * den);
    r.dXi = -s.mode * s.beta * std::abs(double(s.k3)) * sgn / den;
    return r;
}

struct RaySample {
    double t, Y, Xi, h, damping_integral;
};

struct RayTrajectory {
    std::vector<RaySample> samples;
    double max_h_drift = 0.0;  ///< max |h(t) - h0| / |h0|
    RayState final_state;
};

/// Classical 4th-order integration of (Y, Xi, int Xi^2 ds) with per-step
/// relative Hamiltonian drift monitoring.
inline RayTrajectory integrate_ray(const RayState& s0, double t_end, double dt,
                                   double drift_tol = 1e-6, int store_every = 1) {
    if (!(dt > 0)) throw std::invalid_argument("integrate_ray: dt must be positive");
    if (store_every < 1) throw std::invalid_argument("integrate_ray: store_every must be >= 1");
    RayTrajectory traj;
    RayState s = s0;
    double t = 0.0;
    traj.samples.push_back({t, s.Y, s.Xi, s.h0, s.damping_integral});

    auto deriv = [&](double Y, double Xi, double* dY, double* dXi, double* dI) {
        RayState q = s;
        q.Y = Y;
        q.Xi = Xi;
        RayRhs r = ray_rhs(q);
        *dY = r.dY;
        *dXi = r.dXi;
        *dI = Xi * Xi;
    };

    long n_steps = long(std::ceil(t_end / dt - 1e-12));
    for (long n = 0; n < n_steps; ++n) {
        double h = std::min(dt, t_end - t);
        double k1y, k1x, k1i, k2y, k2x, k2i, k3y, k3x, k3i, k4y, k4x, k4i;
        deriv(s.Y, s.Xi, &k1y, &k1x, &k1i);
        deriv(s.Y + 0.5 * h * k1y, s.Xi + 0.5 * h * k1x, &k2y, &k2x, &k2i);
        deriv(s.Y + 0.5 * h * k2y, s.Xi + 0.5 * h * k2x, &k3y, &k3x, &k3i);
        deriv(s.Y + h * k3y, s.Xi + h * k3x, &k4y, &k4x, &k4i);
        s.Y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        s.Xi += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        s.damping_integral += h / 6.0 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i);
        t += h;

        double hv = poincare_hamiltonian(s.mode, s.Y, s.Xi, s.k3, s.beta);
        double drift = std::abs(hv - s.h0) / std::abs(s.h0);
        traj.max_h_drift = std::max(traj.max_h_drift, drift);
        if (drift > drift_tol)
            throw std::runtime_error("integrate_ray: Hamiltonian drift " + std::to_string(drift) +
                                     " exceeds tolerance at t = " + std::to_string(t));
        if ((n + 1) % store_every == 0 || n + 1 == n_steps)
            traj.samples.push_back({t, s.Y, s.Xi, hv, s.damping_integral});
    }
    traj.final_state = s;
    return traj;
}

/// Escape diagnostics against the compact latitude band [y_min, y_max]:
/// first exit time (or a lower bound), the fitted growth exponent of
/// |Xi(t)| over the late-time window, and the level-line floor on |Y|.
struct EscapeDiagnostics {
    bool exited = false;
    double exit_time = 0.0;        ///< exit time, or the trajectory end as a lower bound
    double xi_growth_exponent = 0.0;  ///< log-log slope of |Xi| vs t on [t_fit_min, end]
    double min_abs_Y = 0.0;
};

inline EscapeDiagnostics escape_diagnostics(const RayTrajectory& traj, double y_min, double y_max,
                                            double t_fit_min = 1e3) {
    EscapeDiagnostics d;
    d.min_abs_Y = std::abs(traj.samples.front().Y);
    std::vector<double> ts, xs;
    for (const auto& s : traj.samples) {
        d.min_abs_Y = std::min(d.min_abs_Y, std::abs(s.Y));
        if (!d.exited && (s.Y < y_min || s.Y > y_max)) {
            d.exited = true;
            d.exit_time = s.t;
        }
        if (s.t >= t_fit_min && std::abs(s.Xi) > 0) {
            ts.push_back(s.t);
            xs.push_back(std::abs(s.Xi));
        }
    }
    if (!d.exited) d.exit_time = traj.samples.back().t;
    if (ts.size() >= 2) d.xi_growth_exponent = fit_loglog_slope(ts, xs);
    return d;
}

/// Viscous attenuation along the ray: solution of the damped transport
/// equation gives weight(t) = exp(-4 (nu_h/eps^2) int_0^t Xi(s)^2 ds).
inline std::vector<double> damping_weight(const RayTrajectory& traj, double nu_h,
                                          double epsilon) {
    if (nu_h < 0) throw std::invalid_argument("damping_weight: nu_h must be >= 0");
    double c = 4.0 * nu_h / (epsilon * epsilon);
    std::vector<double> w;
    w.reserve(traj.samples.size());
    for (const auto& s : traj.samples) w.push_back(std::exp(-c * s.damping_integral));
    return w;
}

/// Endpoint-frequency comparison diagnostic exp(-4 (nu_h/eps^2) Xi(t)^2 t);
/// not the transport-equation solution, exposed only for comparison.
inline std::vector<double> damping_weight_endpoint(const RayTrajectory& traj, double nu_h,
                                                   double epsilon) {
    double c = 4.0 * nu_h / (epsilon * epsilon);
    std::vector<double> w;
    w.reserve(traj.samples.size());
    for (const auto& s : traj.samples) w.push_back(std::exp(-c * s.Xi * s.Xi * s.t));
    return w;
}

enum class ViscosityRegime { propagative, mixed, dissipative };

/// Classifies nu_h against eps^2: energy propagates when nu_h << eps^2,
/// dissipates quickly when nu_h >> eps^2, and mixes in between.
inline ViscosityRegime regime(double nu_h, double epsilon, double margin = 0.1) {
    double r = nu_h / (epsilon * epsilon);
    if (r <= margin) return ViscosityRegime::propagative;
    if (r >= 1.0 / margin) return ViscosityRegime::dissipative;
    return ViscosityRegime::mixed;
}

inline std::string regime_name(ViscosityRegime r) {
    switch (r) {
        case ViscosityRegime::propagative: return "propagative";
        case ViscosityRegime::dissipative: return "dissipative";
        default: return "mixed";
    }
}

/// Leading-order polarization of a horizontal mode into the two symbol
/// branches: mu+- = (u2 -+ i sign(y) |k3|/sqrt(k3^2+xi^2) u1) / 2.
/// Non-oscillatory initial data corresponds to xi = 0.
struct Polarization {
    std::complex<double> mu_plus, mu_minus;
};

inline Polarization polarization_leading(std::complex<double> u1, std::complex<double> u2,
                                         double y, int k3, double xi = 0.0) {
    if (k3 == 0) throw std::invalid_argument("polarization_leading: k3 must be nonzero");
    if (y == 0.0)
        throw std::domain_error("polarization_leading: data support must avoid y = 0");
    double sgn = y > 0 ? 1.0 : -1.0;
    double r = std::abs(double(k3)) / std::sqrt(double(k3) * k3 + xi * xi);
    std::complex<double> i(0.0, 1.0);
    return {0.5 * (u2 - i * sgn * r * u1), 0.5 * (u2 + i * sgn * r * u1)};
}

/// Inverse of polarization_leading:
/// u1 = i sqrt(k3^2+xi^2)/(|k3| sign(y)) (mu+ - mu-), u2 = mu+ + mu-.
inline std::pair<std::complex<double>, std::complex<double>> polarization_reconstruct(
    const Polarization& p, double y, int k3, double xi = 0.0) {
    if (k3 == 0) throw std::invalid_argument("polarization_reconstruct: k3 must be nonzero");
    if (y == 0.0) throw std::domain_error("polarization_reconstruct: y = 0 is singular");
    double sgn = y > 0 ? 1.0 : -1.0;
    double r = std::sqrt(double(k3) * k3 + xi * xi) / std::abs(double(k3));
    std::complex<double> i(0.0, 1.0);
    return {i * r / sgn * (p.mu_plus - p.mu_minus), p.mu_plus + p.mu_minus};
}

}  // namespace oceanlab
