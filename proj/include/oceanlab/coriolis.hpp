#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oceanlab/spline.hpp"

namespace oceanlab {

/// Rotation factor b(y) with its first two derivatives and the linear
/// slope beta at the equator.
struct CoriolisProfile {
    std::function<double(double)> b;
    std::function<double(double)> db;
    std::function<double(double)> d2b;
    double beta = 1.0;

    static CoriolisProfile linear(double beta) {
        CoriolisProfile p;
        p.b = [beta](double y) { return beta * y; };
        p.db = [beta](double) { return beta; };
        p.d2b = [](double) { return 0.0; };
        p.beta = beta;
        return p;
    }

    /// b(y) = sin(pi y / 2): vanishes again at |y| = 2, so it violates the
    /// lower bound on |b| away from the equator. Kept as a named profile
    /// for validation tests.
    static CoriolisProfile sine() {
        CoriolisProfile p;
        p.b = [](double y) { return std::sin(M_PI * y / 2.0); };
        p.db = [](double y) { return M_PI / 2.0 * std::cos(M_PI * y / 2.0); };
        p.d2b = [](double y) { return -M_PI * M_PI / 4.0 * std::sin(M_PI * y / 2.0); };
        p.beta = M_PI / 2.0;
        return p;
    }

    static CoriolisProfile quadratic() {
        CoriolisProfile p;
        p.b = [](double y) { return y * y; };
        p.db = [](double y) { return 2.0 * y; };
        p.d2b = [](double) { return 2.0; };
        p.beta = 0.0;
        return p;
    }

    /// Tabulated samples with spline derivatives; beta is estimated from
    /// the spline slope at the origin.
    static CoriolisProfile tabulated(std::vector<double> ys, std::vector<double> bs) {
        auto sp = std::make_shared<CubicSpline>(std::move(ys), std::move(bs));
        CoriolisProfile p;
        p.b = [sp](double y) { return sp->value(y); };
        p.db = [sp](double y) { return sp->deriv(y); };
        p.d2b = [sp](double y) { return sp->deriv2(y); };
        p.beta = sp->deriv(0.0);
        return p;
    }
};

namespace detail {

/// Truncation shape psi: s^-alpha on (0,1], 1 for s >= 2, and the cubic
/// Hermite blend matching values and slopes on [1,2]. The blend stays
/// above 1 - 4*alpha/27 > 1/2 for alpha < 1.
inline double psi(double s, double alpha) {
    if (s <= 0.0) throw std::domain_error("psi: argument must be positive");
    if (s >= 2.0) return 1.0;
    if (s <= 1.0) return std::pow(s, -alpha);
    double t = s - 1.0;
    return 1.0 - alpha * t * (1.0 - t) * (1.0 - t);
}

inline double psi_prime(double s, double alpha) {
    if (s <= 0.0) throw std::domain_error("psi: argument must be positive");
    if (s >= 2.0) return 0.0;
    if (s <= 1.0) return -alpha * std::pow(s, -alpha - 1.0);
    double t = s - 1.0;
    return -alpha * (1.0 - 4.0 * t + 3.0 * t * t);
}

inline double psi_second(double s, double alpha) {
    if (s <= 0.0) throw std::domain_error("psi: argument must be positive");
    if (s >= 2.0) return 0.0;
    if (s <= 1.0) return alpha * (alpha + 1.0) * std::pow(s, -alpha - 2.0);
    double t = s - 1.0;
    return -alpha * (-4.0 + 6.0 * t);
}

}  // namespace detail

/// Regularized Coriolis factor b_delta = b(y) psi(|y|/delta) with weakened
/// vanishing at the equator, so layer gradients stay square integrable.
struct TruncatedCoriolis {
    CoriolisProfile base;
    double delta;
    double alpha;

    TruncatedCoriolis(CoriolisProfile profile, double delta_, double alpha_)
        : base(std::move(profile)), delta(delta_), alpha(alpha_) {
        if (!(delta > 0)) throw std::invalid_argument("TruncatedCoriolis: delta must be positive");
        if (alpha <= 0 || alpha >= 1)
            throw std::invalid_argument("TruncatedCoriolis: alpha must lie in (0,1)");
    }

    double b(double y) const {
        return base.b(y) * detail::psi(std::abs(y) / delta, alpha);
    }

    double db(double y) const {
        double s = std::abs(y) / delta;
        double sgn = y < 0 ? -1.0 : 1.0;
        return base.db(y) * detail::psi(s, alpha) +
               base.b(y) * detail::psi_prime(s, alpha) * sgn / delta;
    }

    double d2b(double y) const {
        double s = std::abs(y) / delta;
        double sgn = y < 0 ? -1.0 : 1.0;
        return base.d2b(y) * detail::psi(s, alpha) +
               2.0 * base.db(y) * detail::psi_prime(s, alpha) * sgn / delta +
               base.b(y) * detail::psi_second(s, alpha) / (delta * delta);
    }
};

inline TruncatedCoriolis truncate_coriolis(CoriolisProfile profile, double delta, double alpha) {
    return TruncatedCoriolis(std::move(profile), delta, alpha);
}

/// Complex decay rates of the surface layer at a given latitude:
/// lambda^{+-} = (1 -+ i sign(b_delta)) / sqrt(2) * |b_delta|^{1/2},
/// so (lambda^{+-})^2 = -+ i b_delta and Re lambda^{+-} > 0.
struct DecayRates {
    std::complex<double> plus;
    std::complex<double> minus;
    /// y-derivatives, d lambda^{+-} / dy.
    std::complex<double> dplus;
    std::complex<double> dminus;
};

inline DecayRates decay_rates(const TruncatedCoriolis& tc, double y) {
    if (y == 0.0)
        throw std::domain_error("decay_rates: singular at y = 0 (decay rates vanish)");
    double bd = tc.b(y);
    double sgn = bd < 0 ? -1.0 : 1.0;
    double root = std::sqrt(std::abs(bd));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    DecayRates r;
    r.plus = std::complex<double>(1.0, -sgn) * inv_sqrt2 * root;
    r.minus = std::complex<double>(1.0, sgn) * inv_sqrt2 * root;
    // d/dy |b_d|^{1/2} = sign(b_d) b_d' / (2 |b_d|^{1/2})
    double droot = sgn * tc.db(y) / (2.0 * root);
    r.dplus = std::complex<double>(1.0, -sgn) * inv_sqrt2 * droot;
    r.dminus = std::complex<double>(1.0, sgn) * inv_sqrt2 * droot;
    return r;
}

}  // namespace oceanlab
