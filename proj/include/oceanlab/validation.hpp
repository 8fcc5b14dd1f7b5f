#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "oceanlab/coriolis.hpp"
#include "oceanlab/grid.hpp"
#include "oceanlab/windstress.hpp"

namespace oceanlab {

struct ValidationClause {
    std::string name;
    bool passed = false;
    std::string detail;  // offending location / fitted constants
};

struct ValidationReport {
    std::vector<ValidationClause> clauses;

    bool all_passed() const {
        return std::all_of(clauses.begin(), clauses.end(),
                           [](const ValidationClause& c) { return c.passed; });
    }

    const ValidationClause* find(const std::string& name) const {
        for (const auto& c : clauses)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::string summary() const {
        std::ostringstream os;
        for (const auto& c : clauses)
            os << (c.passed ? "[pass] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
        return os.str();
    }
};

/// Checks the Coriolis hypotheses clause by clause on the sampled grid:
/// b != 0 off the equator, |b| bounded below for |y| >= 1, b' positive and
/// bounded (empirical min/max reported, the constant c is unspecified),
/// and b(y) ~ beta*y near y = 0.
inline ValidationReport validate_coriolis(const CoriolisProfile& profile, const Grid& grid) {
    ValidationReport rep;
    const double tiny = 1e-10;

    // b(y) != 0 for y != 0
    {
        ValidationClause c{"b_nonzero_off_equator", true, ""};
        for (int j = 0; j < grid.Ny; ++j) {
            double y = grid.y(j);
            if (std::abs(profile.b(y)) <= tiny) {
                c.passed = false;
                std::ostringstream os;
                os << "b vanishes at y = " << y;
                c.detail = os.str();
                break;
            }
        }
        if (c.passed) c.detail = "no zero of b sampled away from the equator";
        rep.clauses.push_back(c);
    }

    // |b| >= C for |y| >= 1
    {
        ValidationClause c{"b_bounded_below_far_field", true, ""};
        double min_abs = std::numeric_limits<double>::infinity();
        double min_y = 0.0;
        bool sign_change = false;
        double prev = 0.0;
        bool have_prev = false;
        for (int j = 0; j < grid.Ny; ++j) {
            double y = grid.y(j);
            if (std::abs(y) < 1.0) {
                have_prev = false;  // restart on the other side of the equator
                continue;
            }
            double v = profile.b(y);
            double a = std::abs(v);
            if (a < min_abs) {
                min_abs = a;
                min_y = y;
            }
            // a sign change in the far field forces |b| below any bound
            if (have_prev && prev * v < 0) sign_change = true;
            prev = v;
            have_prev = true;
        }
        std::ostringstream os;
        os << "min |b| on |y|>=1 is " << min_abs << " at y = " << min_y
           << (sign_change ? " (b changes sign in the far field)" : "");
        c.detail = os.str();
        c.passed = min_abs > tiny && !sign_change;
        rep.clauses.push_back(c);
    }

    // c^-1 <= b' <= c: report empirical bounds, fail only if b' is not
    // positive somewhere (no finite c exists).
    {
        ValidationClause c{"db_positive_bounded", true, ""};
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        double bad_y = 0.0;
        for (int j = 0; j < grid.Ny; ++j) {
            double y = grid.y(j);
            double d = profile.db(y);
            if (d <= tiny) {
                c.passed = false;
                bad_y = y;
            }
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        std::ostringstream os;
        os << "empirical b' range [" << lo << ", " << hi << "]";
        if (!c.passed) os << "; b' <= 0 at y = " << bad_y;
        c.detail = os.str();
        rep.clauses.push_back(c);
    }

    // b(y)/(beta y) -> 1 as y -> 0, checked at the grid points nearest 0.
    {
        ValidationClause c{"linear_at_equator", true, ""};
        int j_neg = grid.Ny / 2 - 1, j_pos = grid.Ny / 2;
        double worst = 0.0;
        for (int j : {j_neg, j_pos}) {
            double y = grid.y(j);
            double ratio = profile.b(y) / (profile.beta * y);
            worst = std::max(worst, std::abs(ratio - 1.0));
        }
        std::ostringstream os;
        os << "max |b/(beta y) - 1| at nearest-to-equator nodes: " << worst;
        c.detail = os.str();
        c.passed = std::isfinite(worst) && worst < 0.1;
        rep.clauses.push_back(c);
    }

    return rep;
}

namespace detail {

/// Fitted local growth exponent of max_x |f(x, y)| against |y| near the
/// equator (log-log least squares over the innermost latitude samples).
template <typename F>
double local_exponent(const F& f, const Grid& grid, double y_max) {
    std::vector<double> lx, ly;
    for (int j = 0; j < grid.Ny; ++j) {
        double y = grid.y(j);
        if (std::abs(y) > y_max) continue;
        double m = 0.0;
        for (int i = 0; i < grid.Nx; ++i) m = std::max(m, std::abs(f(grid.x(i), y)));
        if (m > 1e-300) {
            lx.push_back(std::log(std::abs(y)));
            ly.push_back(std::log(m));
        }
    }
    if (lx.size() < 2) return std::numeric_limits<double>::infinity();  // identically zero: any order
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    double n = double(lx.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

/// Checks the stress hypotheses: vanishing zonal mean of sigma_1 at every
/// latitude, and the quadratic vanishing orders near the equator (fitted
/// local exponents reported).
inline ValidationReport validate_windstress(const WindStress& stress, const Grid& grid) {
    ValidationReport rep;

    // Compatibility: zonal mean of sigma_1 vanishes at each y.
    {
        ValidationClause c{"compatibility_zonal_mean", true, ""};
        double worst = 0.0, worst_y = 0.0, scale = 0.0;
        for (int j = 0; j < grid.Ny; ++j) {
            double y = grid.y(j);
            double mean = 0.0;
            for (int i = 0; i < grid.Nx; ++i) {
                double s1 = stress.sigma(grid.x(i), y).x;
                mean += s1;
                scale = std::max(scale, std::abs(s1));
            }
            mean /= grid.Nx;
            if (std::abs(mean) > worst) {
                worst = std::abs(mean);
                worst_y = y;
            }
        }
        std::ostringstream os;
        os << "max |zonal mean sigma_1| = " << worst << " at y = " << worst_y;
        c.detail = os.str();
        c.passed = worst <= 1e-12 * std::max(1.0, scale);
        rep.clauses.push_back(c);
    }

    // Quadratic vanishing: |sigma|, |d_x sigma| ~ y^2 and |d_y sigma| ~ |y|.
    const double y_fit = 0.4;
    auto add_order = [&](const char* name, auto f, double min_exponent) {
        ValidationClause c{name, true, ""};
        double p = detail::local_exponent(f, grid, y_fit);
        std::ostringstream os;
        if (std::isinf(p)) {
            os << "component vanishes identically near the equator";
            c.passed = true;
        } else {
            // Generous slack: smooth envelopes (e.g. Gaussians) depress the
            // fitted exponent on coarse grids, while a genuine violation
            // sits a full unit below the requirement.
            os << "fitted local exponent " << p << " (required >= " << min_exponent << ")";
            c.passed = p >= min_exponent - 0.35;
        }
        c.detail = os.str();
        rep.clauses.push_back(c);
    };

    add_order("sigma_vanishes_quadratically",
              [&](double x, double y) { return stress.sigma(x, y).norm(); }, 2.0);
    add_order("dx_sigma_vanishes_quadratically",
              [&](double x, double y) { return stress.d_x(x, y).norm(); }, 2.0);
    add_order("dy_sigma_vanishes_linearly",
              [&](double x, double y) { return stress.d_y(x, y).norm(); }, 1.0);

    return rep;
}

}  // namespace oceanlab
