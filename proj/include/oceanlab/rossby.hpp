#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oceanlab/fft.hpp"
#include "oceanlab/grid.hpp"

namespace oceanlab {

/// Spectral representation of a two-dimensional (z-independent) horizontal
/// velocity perturbation on the periodicized domain: x-period 2*pi with
/// integer wavenumbers k, y-period 2L with frequencies xi = pi*m/L.
struct SpectralState {
    Grid grid{4, 4, 4, 2.0};
    double epsilon = 1.0;
    double beta = 1.0;
    double nu_h = 0.0;
    double time = 0.0;
    std::vector<std::complex<double>> v1hat, v2hat;  // row-major [j*Nx + i]

    std::size_t idx(int i, int j) const { return std::size_t(j) * grid.Nx + i; }
    int k_of(int i) const { return fft_wavenumber(i, grid.Nx); }
    double xi_of(int j) const { return M_PI * fft_wavenumber(j, grid.Ny) / grid.L; }
};

/// Forward transform of a sampled 2-component horizontal field.
inline SpectralState to_spectral(const Field& v, double epsilon, double beta, double nu_h,
                                 double div_tol = 1e-10) {
    const Grid& g = v.grid();
    SpectralState s;
    s.grid = g;
    s.epsilon = epsilon;
    s.beta = beta;
    s.nu_h = nu_h;
    s.v1hat.resize(g.horizontal_size());
    s.v2hat.resize(g.horizontal_size());
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            s.v1hat[s.idx(i, j)] = v.at(0, i, j);
            s.v2hat[s.idx(i, j)] = v.at(1, i, j);
        }
    fft_2d(s.v1hat, g.Nx, g.Ny, true);
    fft_2d(s.v2hat, g.Nx, g.Ny, true);

    // Mode-wise incompressibility check: k_h . v_hat = 0.
    double scale = 0.0, worst = 0.0;
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            auto a = s.v1hat[s.idx(i, j)], b = s.v2hat[s.idx(i, j)];
            scale = std::max(scale, std::abs(a) + std::abs(b));
            worst = std::max(worst, std::abs(double(s.k_of(i)) * a + s.xi_of(j) * b));
        }
    if (worst > div_tol * std::max(1.0, scale) * std::sqrt(double(g.horizontal_size())))
        throw std::invalid_argument("to_spectral: input field is not divergence-free");
    return s;
}

/// Inverse transform back to a sampled field.
inline Field to_physical(const SpectralState& s) {
    const Grid& g = s.grid;
    auto a = s.v1hat, b = s.v2hat;
    fft_2d(a, g.Nx, g.Ny, false);
    fft_2d(b, g.Nx, g.Ny, false);
    Field v = Field::horizontal(g, 2);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            v.at(0, i, j) = a[s.idx(i, j)].real();
            v.at(1, i, j) = b[s.idx(i, j)].real();
        }
    return v;
}

/// Splits a field into its zonal mean (x-average, the non-oscillating
/// part) and the wave remainder; the parts sum to the input exactly.
inline std::pair<Field, Field> decompose(const Field& v) {
    const Grid& g = v.grid();
    Field zonal = Field::horizontal(g, 2), wave = Field::horizontal(g, 2);
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < g.Ny; ++j) {
            double mean = 0.0;
            for (int i = 0; i < g.Nx; ++i) mean += v.at(c, i, j);
            mean /= g.Nx;
            for (int i = 0; i < g.Nx; ++i) {
                zonal.at(c, i, j) = mean;
                wave.at(c, i, j) = v.at(c, i, j) - mean;
            }
        }
    return {std::move(zonal), std::move(wave)};
}

/// Dispersion relation omega = beta k / (eps (k^2 + xi^2)); zonal modes do
/// not oscillate.
inline double rossby_frequency(int k, double xi, double beta, double epsilon) {
    if (k == 0 && xi == 0.0)
        throw std::invalid_argument("rossby_frequency: zero wavevector has no frequency");
    return beta * k / (epsilon * (k * k + xi * xi));
}

/// Exact propagator: each mode is multiplied by
/// exp(i omega t - nu_h |k_h|^2 t); the (0,0) mode is untouched.
inline SpectralState propagate(const SpectralState& s0, double t) {
    if (t < 0) throw std::invalid_argument("propagate: t must be >= 0");
    SpectralState s = s0;
    const Grid& g = s.grid;
    for (int j = 0; j < g.Ny; ++j) {
        double xi = s.xi_of(j);
        for (int i = 0; i < g.Nx; ++i) {
            int k = s.k_of(i);
            double k2 = k * k + xi * xi;
            if (k2 == 0.0) continue;
            double omega = s.beta * k / (s.epsilon * k2);
            std::complex<double> m = std::exp(std::complex<double>(-s.nu_h * k2 * t, omega * t));
            s.v1hat[s.idx(i, j)] *= m;
            s.v2hat[s.idx(i, j)] *= m;
        }
    }
    s.time = s0.time + t;
    return s;
}

/// Spectral vorticity zeta_hat = i (k v2_hat - xi v1_hat).
inline std::vector<std::complex<double>> vorticity(const SpectralState& s) {
    std::vector<std::complex<double>> z(s.v1hat.size());
    const Grid& g = s.grid;
    for (int j = 0; j < g.Ny; ++j) {
        double xi = s.xi_of(j);
        for (int i = 0; i < g.Nx; ++i) {
            int k = s.k_of(i);
            z[s.idx(i, j)] = std::complex<double>(0.0, 1.0) *
                             (double(k) * s.v2hat[s.idx(i, j)] - xi * s.v1hat[s.idx(i, j)]);
        }
    }
    return z;
}

/// Velocity from vorticity: v_hat = i (xi, -k) zeta_hat / |k_h|^2. Valid on
/// fields with no (0,0) content; other modes reconstruct exactly.
inline SpectralState velocity_from_vorticity(const std::vector<std::complex<double>>& zhat,
                                             const SpectralState& like) {
    SpectralState s = like;
    const Grid& g = s.grid;
    for (int j = 0; j < g.Ny; ++j) {
        double xi = s.xi_of(j);
        for (int i = 0; i < g.Nx; ++i) {
            int k = s.k_of(i);
            double k2 = k * k + xi * xi;
            auto z = zhat[s.idx(i, j)];
            if (k2 == 0.0) {
                if (std::abs(z) > 0)
                    throw std::invalid_argument(
                        "velocity_from_vorticity: zero-wavevector mode is not invertible");
                s.v1hat[s.idx(i, j)] = 0.0;
                s.v2hat[s.idx(i, j)] = 0.0;
                continue;
            }
            s.v1hat[s.idx(i, j)] = std::complex<double>(0.0, xi) * z / k2;
            s.v2hat[s.idx(i, j)] = std::complex<double>(0.0, -double(k)) * z / k2;
        }
    }
    return s;
}

/// Propagates the vorticity by its own scalar equation (same per-mode
/// multiplier); used as an independent path against `propagate`.
inline std::vector<std::complex<double>> propagate_vorticity(
    const std::vector<std::complex<double>>& zhat, const SpectralState& like, double t) {
    std::vector<std::complex<double>> z = zhat;
    const Grid& g = like.grid;
    for (int j = 0; j < g.Ny; ++j) {
        double xi = like.xi_of(j);
        for (int i = 0; i < g.Nx; ++i) {
            int k = like.k_of(i);
            double k2 = k * k + xi * xi;
            if (k2 == 0.0) continue;
            double omega = like.beta * k / (like.epsilon * k2);
            z[like.idx(i, j)] *=
                std::exp(std::complex<double>(-like.nu_h * k2 * t, omega * t));
        }
    }
    return z;
}

/// Total spectral energy (Parseval L2 norm squared of the velocity).
inline double total_energy(const SpectralState& s) {
    const Grid& g = s.grid;
    double sum = 0.0;
    for (std::size_t n = 0; n < s.v1hat.size(); ++n)
        sum += std::norm(s.v1hat[n]) + std::norm(s.v2hat[n]);
    return sum * g.dx() * g.dy() / (double(g.Nx) * double(g.Ny));
}

/// Energy inside the rectangle [x0,x1] x [y0,y1] of the physical field.
inline double local_energy(const SpectralState& s, double x0, double x1, double y0, double y1) {
    const Grid& g = s.grid;
    if (y0 < -g.L || y1 > g.L || x0 < 0.0 || x1 > 2.0 * M_PI || x1 < x0 || y1 < y0)
        throw std::invalid_argument("local_energy: rectangle outside the domain");
    Field v = to_physical(s);
    double sum = 0.0;
    for (int j = 0; j < g.Ny; ++j) {
        double y = g.y(j);
        if (y < y0 || y > y1) continue;
        for (int i = 0; i < g.Nx; ++i) {
            double x = g.x(i);
            if (x < x0 || x > x1) continue;
            sum += v.at(0, i, j) * v.at(0, i, j) + v.at(1, i, j) * v.at(1, i, j);
        }
    }
    return sum * g.dx() * g.dy();
}

}  // namespace oceanlab
