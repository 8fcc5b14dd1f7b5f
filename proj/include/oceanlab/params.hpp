#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace oceanlab {

/// Dimensional scales of the physical problem (SI units).
struct PhysicalScales {
    double U;          ///< horizontal velocity scale (m/s)
    double W;          ///< vertical velocity scale (m/s), must equal U*D/H
    double H;          ///< horizontal length scale (m)
    double D;          ///< depth (m)
    double T;          ///< time scale (s)
    double Omega0;     ///< rotation rate (1/s)
    double Az;         ///< vertical turbulent viscosity / density (m^2/s)
    double Ah;         ///< horizontal turbulent viscosity / density (m^2/s)
    double sigma_mag;  ///< wind stress magnitude scale
    double kappa;      ///< heat conductivity (m^2/s)
};

/// Dimensionless model parameters.
struct Parameters {
    double epsilon;      ///< Rossby number
    double eta;          ///< aspect ratio
    double nu_h;         ///< horizontal viscosity
    double nu_z;         ///< vertical viscosity
    double gamma;        ///< surface stress amplification
    double beta;         ///< Coriolis gradient at the equator
    double delta;        ///< truncation width for the Coriolis factor
    double alpha;        ///< truncation exponent, in (0,1)
    double lambda_heat;  ///< heat diffusion coefficient

    /// Theorem scaling: eta = nu_z = epsilon, gamma = epsilon^-2.
    static Parameters theorem_scaling(double epsilon, double nu_h, double delta,
                                      double alpha = 0.7, double beta = 1.0,
                                      double lambda_heat = 1.0) {
        if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
        if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("alpha must lie in (0,1)");
        Parameters p;
        p.epsilon = epsilon;
        p.eta = epsilon;
        p.nu_z = epsilon;
        p.gamma = 1.0 / (epsilon * epsilon);
        p.nu_h = nu_h;
        p.delta = delta;
        p.alpha = alpha;
        p.beta = beta;
        p.lambda_heat = lambda_heat;
        return p;
    }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0) || !std::isfinite(v))
                throw std::invalid_argument(std::string(name) + " must be positive and finite");
        };
        positive(epsilon, "epsilon");
        positive(eta, "eta");
        positive(nu_z, "nu_z");
        positive(gamma, "gamma");
        positive(beta, "beta");
        positive(delta, "delta");
        positive(lambda_heat, "lambda_heat");
        if (nu_h < 0) throw std::invalid_argument("nu_h must be non-negative");
        if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("alpha must lie in (0,1)");
    }

    /// Gradients of the boundary layer profiles are square integrable only
    /// for alpha > 3/5; callers requesting them must pass this gate.
    void require_gradient_admissible() const {
        if (alpha <= 0.6)
            throw std::domain_error(
                "boundary-layer horizontal gradients require alpha > 3/5");
    }
};

/// Converts dimensional scales into the dimensionless parameter set.
/// delta/alpha/beta/lambda_heat are model choices, not derived from scales,
/// and are left at their defaults.
inline Parameters nondimensionalize(const PhysicalScales& s) {
    auto check = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("nondimensionalize: ") + name +
                                        " must be positive and finite");
    };
    check(s.U, "U");
    check(s.W, "W");
    check(s.H, "H");
    check(s.D, "D");
    check(s.T, "T");
    check(s.Omega0, "Omega0");
    check(s.Az, "Az");
    check(s.Ah, "Ah");
    check(s.sigma_mag, "sigma_mag");
    check(s.kappa, "kappa");
    if (std::abs(s.W - s.U * s.D / s.H) > 1e-12 * s.W)
        throw std::invalid_argument("nondimensionalize: W must equal U*D/H");

    Parameters p;
    p.epsilon = 1.0 / (s.T * s.Omega0);
    p.eta = s.D / s.H;
    p.nu_z = s.T * s.Az / (s.D * s.D);
    p.nu_h = s.Ah * s.T / (s.H * s.H);
    p.gamma = s.sigma_mag * s.D / (s.Az * s.U);
    p.beta = 1.0;
    p.delta = p.epsilon;
    p.alpha = 0.7;
    p.lambda_heat = s.kappa * s.H / (s.D * s.D * s.U);
    return p;
}

}  // namespace oceanlab
