#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "oceanlab/coriolis.hpp"
#include "oceanlab/grid.hpp"
#include "oceanlab/quadrature.hpp"
#include "oceanlab/windstress.hpp"

namespace oceanlab {

using complexd = std::complex<double>;

/// Complex 2-vector used internally; assembled fields are real up to
/// roundoff because the two decay branches are conjugate.
struct CVec2 {
    complexd x, y;
    CVec2 operator+(const CVec2& o) const { return {x + o.x, y + o.y}; }
    CVec2 operator*(const complexd& s) const { return {x * s, y * s}; }
};

/// Surface layer profile in the stretched coordinate zeta = (1 - z) / epsilon.
/// All evaluations are closed forms in the stress, the regularized rotation
/// factor, and the complex decay rates.
struct BoundaryLayerProfile {
    WindStress stress;
    TruncatedCoriolis rotation;
    double epsilon;

    BoundaryLayerProfile(WindStress s, TruncatedCoriolis tc, double eps)
        : stress(std::move(s)), rotation(std::move(tc)), epsilon(eps) {
        if (!(eps > 0)) throw std::invalid_argument("BoundaryLayerProfile: epsilon must be positive");
    }
};

namespace detail {

/// Per-column data reused by every layer formula.
struct ColumnData {
    Vec2 sigma, d_x, d_y;
    double div, rot;
    DecayRates rates;
};

inline ColumnData column_data(const BoundaryLayerProfile& p, double x, double y) {
    ColumnData c;
    c.sigma = p.stress.sigma(x, y);
    c.d_x = p.stress.d_x(x, y);
    c.d_y = p.stress.d_y(x, y);
    c.div = c.d_x.x + c.d_y.y;
    c.rot = c.d_x.y - c.d_y.x;
    c.rates = decay_rates(p.rotation, y);
    return c;
}

/// sigma + i sigma_perp (branch +1) or sigma - i sigma_perp (branch -1).
inline CVec2 stress_branch(const Vec2& s, int branch) {
    return {complexd(s.x, -branch * s.y), complexd(s.y, branch * s.x)};
}

}  // namespace detail

/// U_h(zeta) = (1/2eps) sum_{+-} (sigma +- i sigma_perp) / lambda^{+-} e^{-lambda^{+-} zeta}.
inline CVec2 bl_velocity_h_complex(const BoundaryLayerProfile& p, double x, double y,
                                   double zeta) {
    if (zeta < 0) throw std::invalid_argument("bl_velocity_h: zeta must be >= 0");
    auto c = detail::column_data(p, x, y);
    CVec2 out{0.0, 0.0};
    for (int branch : {+1, -1}) {
        complexd lam = branch > 0 ? c.rates.plus : c.rates.minus;
        complexd w = std::exp(-lam * zeta) / (2.0 * p.epsilon * lam);
        out = out + detail::stress_branch(c.sigma, branch) * w;
    }
    return out;
}

inline Vec2 bl_velocity_h(const BoundaryLayerProfile& p, double x, double y, double zeta) {
    auto v = bl_velocity_h_complex(p, x, y, zeta);
    return {v.x.real(), v.y.real()};
}

/// d/dzeta U_h = -(1/2eps) sum (sigma +- i sigma_perp) e^{-lambda zeta};
/// at zeta = 0 this is -sigma/eps (the surface stress condition).
inline Vec2 bl_dzeta_velocity_h(const BoundaryLayerProfile& p, double x, double y, double zeta) {
    auto c = detail::column_data(p, x, y);
    CVec2 out{0.0, 0.0};
    for (int branch : {+1, -1}) {
        complexd lam = branch > 0 ? c.rates.plus : c.rates.minus;
        complexd w = -std::exp(-lam * zeta) / (2.0 * p.epsilon);
        out = out + detail::stress_branch(c.sigma, branch) * w;
    }
    return {out.x.real(), out.y.real()};
}

/// Horizontal divergence of U_h, analytic (chain rule through sigma and the
/// latitude dependence of lambda):
/// div U_h = (1/2eps) sum e^{-lambda zeta} [ (div sigma -+ i rot sigma)/lambda
///           - (sigma_2 +- i sigma_1) lambda' (1/lambda^2 + zeta/lambda) ].
inline double bl_div_velocity_h(const BoundaryLayerProfile& p, double x, double y, double zeta) {
    auto c = detail::column_data(p, x, y);
    complexd sum = 0.0;
    for (int branch : {+1, -1}) {
        complexd lam = branch > 0 ? c.rates.plus : c.rates.minus;
        complexd dlam = branch > 0 ? c.rates.dplus : c.rates.dminus;
        complexd D(c.div, -branch * c.rot);
        complexd s2(c.sigma.y, branch * c.sigma.x);  // y-slot of sigma +- i sigma_perp
        sum += std::exp(-lam * zeta) *
               (D / lam - s2 * dlam * (1.0 / (lam * lam) + zeta / lam));
    }
    return (sum / (2.0 * p.epsilon)).real();
}

/// Vertical profile making the layer divergence free:
/// U_3 = -(1/2) sum (div sigma -+ i rot sigma) lambda^{-2} e^{-lambda zeta}
///       + (1/2) sum (sigma_2 +- i sigma_1) lambda' lambda^{-3} (2 + zeta lambda) e^{-lambda zeta}.
inline double bl_velocity_3(const BoundaryLayerProfile& p, double x, double y, double zeta) {
    if (zeta < 0) throw std::invalid_argument("bl_velocity_3: zeta must be >= 0");
    auto c = detail::column_data(p, x, y);
    complexd sum = 0.0;
    for (int branch : {+1, -1}) {
        complexd lam = branch > 0 ? c.rates.plus : c.rates.minus;
        complexd dlam = branch > 0 ? c.rates.dplus : c.rates.dminus;
        complexd D(c.div, -branch * c.rot);
        complexd s2(c.sigma.y, branch * c.sigma.x);
        complexd e = std::exp(-lam * zeta);
        sum += -D / (lam * lam) * e + s2 * dlam / (lam * lam * lam) * (2.0 + zeta * lam) * e;
    }
    return (0.5 * sum).real();
}

/// d/dzeta U_3, analytic; equals eps * div U_h identically.
inline double bl_dzeta_velocity_3(const BoundaryLayerProfile& p, double x, double y, double zeta) {
    auto c = detail::column_data(p, x, y);
    complexd sum = 0.0;
    for (int branch : {+1, -1}) {
        complexd lam = branch > 0 ? c.rates.plus : c.rates.minus;
        complexd dlam = branch > 0 ? c.rates.dplus : c.rates.dminus;
        complexd D(c.div, -branch * c.rot);
        complexd s2(c.sigma.y, branch * c.sigma.x);
        complexd e = std::exp(-lam * zeta);
        sum += D / lam * e - s2 * dlam * (1.0 + zeta * lam) / (lam * lam) * e;
    }
    return (0.5 * sum).real();
}

/// Layer pressure P = -eps^3 div U_h (equivalently -eps^2 d_zeta U_3).
inline double bl_pressure(const BoundaryLayerProfile& p, double x, double y, double zeta) {
    double e3 = p.epsilon * p.epsilon * p.epsilon;
    return -e3 * bl_div_velocity_h(p, x, y, zeta);
}

/// Horizontal gradient of U_3 via centered finite differences. Square
/// integrability of this gradient needs alpha > 3/5; refuse otherwise.
inline Vec2 bl_grad_velocity_3(const BoundaryLayerProfile& p, double x, double y, double zeta,
                               double step = 1e-5) {
    if (p.rotation.alpha <= 0.6)
        throw std::domain_error("bl_grad_velocity_3: requires truncation exponent alpha > 3/5");
    double gx = (bl_velocity_3(p, x + step, y, zeta) - bl_velocity_3(p, x - step, y, zeta)) /
                (2.0 * step);
    double gy = (bl_velocity_3(p, x, y + step, zeta) - bl_velocity_3(p, x, y - step, zeta)) /
                (2.0 * step);
    return {gx, gy};
}

/// Ekman pumping w_delta = d_x sigma_2 / b_delta - d_y (sigma_1 / b_delta);
/// the vertical flux escaping the layer, equal to -U_3 at zeta = 0.
inline double ekman_pumping(const WindStress& stress, const TruncatedCoriolis& tc, double x,
                            double y) {
    if (y == 0.0) throw std::domain_error("ekman_pumping: singular at y = 0");
    double bd = tc.b(y);
    double dbd = tc.db(y);
    Vec2 dx = stress.d_x(x, y);
    Vec2 dy = stress.d_y(x, y);
    double s1 = stress.sigma(x, y).x;
    return dx.y / bd - dy.x / bd + s1 * dbd / (bd * bd);
}

/// Horizontal gradient of the pumping, analytic (needed by the interior
/// zonal-velocity reconstruction).
inline Vec2 ekman_pumping_grad(const WindStress& stress, const TruncatedCoriolis& tc, double x,
                               double y) {
    if (y == 0.0) throw std::domain_error("ekman_pumping_grad: singular at y = 0");
    double bd = tc.b(y), dbd = tc.db(y), d2bd = tc.d2b(y);
    Vec2 s = stress.sigma(x, y);
    Vec2 dx = stress.d_x(x, y), dy = stress.d_y(x, y);
    Vec2 dxx = stress.d_xx(x, y), dxy = stress.d_xy(x, y), dyy = stress.d_yy(x, y);
    double A = dx.y - dy.x;  // d_x sigma_2 - d_y sigma_1
    double wx = (dxx.y - dxy.x) / bd + dx.x * dbd / (bd * bd);
    double wy = (dxy.y - dyy.x) / bd - A * dbd / (bd * bd) + dy.x * dbd / (bd * bd) +
                s.x * (d2bd / (bd * bd) - 2.0 * dbd * dbd / (bd * bd * bd));
    return {wx, wy};
}

/// Per-column squared L2 norms in zeta over (0, infinity).
struct ColumnNorms {
    double horizontal_closed;      ///< closed form for int |U_h|^2 dzeta
    double horizontal_quadrature;  ///< same by adaptive quadrature
    double vertical_quadrature;    ///< int |U_3|^2 dzeta by quadrature
};

/// Closed form: int_0^inf |U_h|^2 dzeta = (1/4eps^2) |sigma|^2 sum_{+-}
/// 1 / (|lambda|^2 Re lambda), against an adaptive-quadrature value with
/// cutoff zeta_max = 40 / Re lambda_min. (The cross terms between the two
/// conjugate branches integrate to zero, which fixes the constant.)
inline ColumnNorms column_l2_norms(const BoundaryLayerProfile& p, double x, double y) {
    auto c = detail::column_data(p, x, y);
    double s2 = c.sigma.dot(c.sigma);
    double closed = 0.0;
    double re_min = std::min(c.rates.plus.real(), c.rates.minus.real());
    for (int branch : {+1, -1}) {
        complexd lam = branch > 0 ? c.rates.plus : c.rates.minus;
        closed += 1.0 / (std::norm(lam) * lam.real());
    }
    closed *= s2 / (4.0 * p.epsilon * p.epsilon);

    ColumnNorms out{closed, 0.0, 0.0};
    if (s2 == 0.0 && c.div == 0.0 && c.rot == 0.0) return out;

    double zeta_max = 40.0 / re_min;
    out.horizontal_quadrature = integrate_adaptive(
        [&](double z) {
            auto v = bl_velocity_h_complex(p, x, y, z);
            return v.x.real() * v.x.real() + v.y.real() * v.y.real();
        },
        0.0, zeta_max, 1e-12 * std::max(1.0, closed));
    out.vertical_quadrature = integrate_adaptive(
        [&](double z) {
            double v = bl_velocity_3(p, x, y, z);
            return v * v;
        },
        0.0, zeta_max, 1e-13);
    return out;
}

/// Samples the physical-space layer velocity u(x, z) = U(x, (1 - z)/eps)
/// on the grid (3 components).
inline Field sample_bl_field(const BoundaryLayerProfile& p, const Grid& grid) {
    Field f = Field::volumetric(grid, 3);
    for (int k = 0; k < grid.Nz; ++k) {
        double zeta = (1.0 - grid.z(k)) / p.epsilon;
        for (int j = 0; j < grid.Ny; ++j) {
            double y = grid.y(j);
            for (int i = 0; i < grid.Nx; ++i) {
                double x = grid.x(i);
                Vec2 uh = bl_velocity_h(p, x, y, zeta);
                f.at(0, i, j, k) = uh.x;
                f.at(1, i, j, k) = uh.y;
                f.at(2, i, j, k) = bl_velocity_3(p, x, y, zeta);
            }
        }
    }
    return f;
}

}  // namespace oceanlab
