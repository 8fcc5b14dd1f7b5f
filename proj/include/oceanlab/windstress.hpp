#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oceanlab/spline.hpp"

namespace oceanlab {

/// 2-vector and its perpendicular u^perp = (-u2, u1).
struct Vec2 {
    double x = 0.0, y = 0.0;
    Vec2 perp() const { return {-y, x}; }
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

namespace detail {

/// One separable stress term A * X(x) * Y(y), with X a trigonometric mode
/// and Y either a closed form y^p exp(-q y^2) or a tabulated spline.
struct StressTerm {
    double amplitude = 1.0;

    // X(x) = cos(m x + phase); m = 0, phase = -pi/2 gives sin etc.
    int mode = 0;
    double phase = 0.0;

    // Closed-form latitude factor y^p exp(-q y^2), or a spline override.
    int p = 0;
    double q = 0.0;
    std::shared_ptr<CubicSpline> tabulated;

    double X(double x, int order) const {
        double arg = mode * x + phase;
        double scale = std::pow(double(mode), order);
        switch (order % 4) {
            case 0: return scale * std::cos(arg);
            case 1: return -scale * std::sin(arg);
            case 2: return -scale * std::cos(arg);
            default: return scale * std::sin(arg);
        }
    }

    double Y(double y, int order) const {
        if (tabulated) {
            switch (order) {
                case 0: return tabulated->value(y);
                case 1: return tabulated->deriv(y);
                default: return tabulated->deriv2(y);
            }
        }
        double E = std::exp(-q * y * y);
        // Negative powers only occur with a vanishing coefficient.
        auto pw = [](double v, int n) {
            return n < 0 ? 0.0 : (n == 0 ? 1.0 : std::pow(v, n));
        };
        switch (order) {
            case 0: return pw(y, p) * E;
            case 1: return (p * pw(y, p - 1) - 2.0 * q * pw(y, p + 1)) * E;
            default:
                return (p * (p - 1) * pw(y, p - 2) - 2.0 * q * (2 * p + 1) * pw(y, p) +
                        4.0 * q * q * pw(y, p + 2)) * E;
        }
    }

    double eval(double x, double y, int dx, int dy) const {
        return amplitude * X(x, dx) * Y(y, dy);
    }
};

}  // namespace detail

/// Surface wind stress sigma(x, y) with analytic derivatives through
/// second order and the vanishing order near the equator.
class WindStress {
  public:
    WindStress() = default;

    /// Vanishing order metadata (the exponent k in |sigma| <= C |y|^k).
    int vanishing_order() const { return vanishing_order_; }

    Vec2 sigma(double x, double y) const { return {comp(0, x, y, 0, 0), comp(1, x, y, 0, 0)}; }
    Vec2 d_x(double x, double y) const { return {comp(0, x, y, 1, 0), comp(1, x, y, 1, 0)}; }
    Vec2 d_y(double x, double y) const { return {comp(0, x, y, 0, 1), comp(1, x, y, 0, 1)}; }
    Vec2 d_xx(double x, double y) const { return {comp(0, x, y, 2, 0), comp(1, x, y, 2, 0)}; }
    Vec2 d_xy(double x, double y) const { return {comp(0, x, y, 1, 1), comp(1, x, y, 1, 1)}; }
    Vec2 d_yy(double x, double y) const { return {comp(0, x, y, 0, 2), comp(1, x, y, 0, 2)}; }

    double div(double x, double y) const { return comp(0, x, y, 1, 0) + comp(1, x, y, 0, 1); }
    double rot(double x, double y) const { return comp(1, x, y, 1, 0) - comp(0, x, y, 0, 1); }

    /// grad of div and rot, needed by layer second derivatives.
    Vec2 grad_div(double x, double y) const {
        return {comp(0, x, y, 2, 0) + comp(1, x, y, 1, 1),
                comp(0, x, y, 1, 1) + comp(1, x, y, 0, 2)};
    }
    Vec2 grad_rot(double x, double y) const {
        return {comp(1, x, y, 2, 0) - comp(0, x, y, 1, 1),
                comp(1, x, y, 1, 1) - comp(0, x, y, 0, 2)};
    }

    bool is_zero() const { return terms_[0].empty() && terms_[1].empty(); }

    // ---- named builders ----

    static WindStress zero() { return WindStress(); }

    /// sigma = (0, y^k exp(-q y^2) sin(m x)); satisfies compatibility for
    /// any k since sigma_1 = 0.
    static WindStress zonal_curl(int k = 2, double q = 1.0, int m = 1, double amplitude = 1.0) {
        WindStress w;
        detail::StressTerm t;
        t.amplitude = amplitude;
        t.mode = m;
        t.phase = -M_PI / 2.0;  // sin
        t.p = k;
        t.q = q;
        w.terms_[1].push_back(t);
        w.vanishing_order_ = k;
        return w;
    }

    /// sigma = (y^k exp(-q y^2) cos(m x), 0) with m >= 1, so the zonal
    /// mean of sigma_1 vanishes.
    static WindStress meridional_curl(int k = 2, double q = 1.0, int m = 1,
                                      double amplitude = 1.0) {
        if (m < 1) throw std::invalid_argument("meridional_curl: m >= 1 required");
        WindStress w;
        detail::StressTerm t;
        t.amplitude = amplitude;
        t.mode = m;
        t.p = k;
        t.q = q;
        w.terms_[0].push_back(t);
        w.vanishing_order_ = k;
        return w;
    }

    /// sigma = (y^k exp(-q y^2), 0): x-independent sigma_1, violates the
    /// compatibility condition. Test profile.
    static WindStress incompatible(int k = 2, double q = 0.0) {
        WindStress w;
        detail::StressTerm t;
        t.p = k;
        t.q = q;
        w.terms_[0].push_back(t);
        w.vanishing_order_ = k;
        return w;
    }

    /// sigma = (y sin x, 0): only linear vanishing at y = 0. Test profile.
    static WindStress low_order() {
        WindStress w;
        detail::StressTerm t;
        t.mode = 1;
        t.phase = -M_PI / 2.0;
        t.p = 1;
        t.q = 0.0;
        w.terms_[0].push_back(t);
        w.vanishing_order_ = 1;
        return w;
    }

    /// Tabulated latitude factor with spline derivatives, paired with a
    /// trigonometric x-mode on the given component (0 or 1).
    static WindStress tabulated(int component, std::vector<double> ys, std::vector<double> vals,
                                int m, bool sine, int vanishing_order) {
        WindStress w;
        detail::StressTerm t;
        t.mode = m;
        t.phase = sine ? -M_PI / 2.0 : 0.0;
        t.tabulated = std::make_shared<CubicSpline>(std::move(ys), std::move(vals));
        w.terms_[component].push_back(t);
        w.vanishing_order_ = vanishing_order;
        return w;
    }

  private:
    double comp(int c, double x, double y, int dx, int dy) const {
        double v = 0.0;
        for (const auto& t : terms_[c]) v += t.eval(x, y, dx, dy);
        return v;
    }

    std::vector<detail::StressTerm> terms_[2];
    int vanishing_order_ = 2;
};

}  // namespace oceanlab
