#pragma once

#include <stdexcept>
#include <vector>

namespace oceanlab {

/// Natural cubic spline through (x_i, y_i); supplies value and the first
/// two derivatives. Used by the tabulated-profile fallback.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> xs, std::vector<double> ys)
        : x_(std::move(xs)), y_(std::move(ys)) {
        const std::size_t n = x_.size();
        if (n < 3 || y_.size() != n)
            throw std::invalid_argument("CubicSpline: need >= 3 matching samples");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw std::invalid_argument("CubicSpline: abscissae must increase");

        // Second derivatives from the natural tridiagonal system.
        m_.assign(n, 0.0);
        std::vector<double> u(n, 0.0), g(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
            double p = sig * g[i - 1] + 2.0;
            g[i] = (sig - 1.0) / p;
            double d = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
                       (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
            u[i] = (6.0 * d / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
        }
        for (std::size_t i = n - 1; i-- > 1;)
            m_[i] = g[i] * m_[i + 1] + u[i];
    }

    double value(double x) const { return eval(x, 0); }
    double deriv(double x) const { return eval(x, 1); }
    double deriv2(double x) const { return eval(x, 2); }

  private:
    double eval(double x, int order) const {
        std::size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (hi + lo) / 2;
            (x_[mid] > x ? hi : lo) = mid;
        }
        double h = x_[hi] - x_[lo];
        double a = (x_[hi] - x) / h, b = (x - x_[lo]) / h;
        switch (order) {
            case 0:
                return a * y_[lo] + b * y_[hi] +
                       ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * h * h / 6.0;
            case 1:
                return (y_[hi] - y_[lo]) / h +
                       ((3 * b * b - 1) * m_[hi] - (3 * a * a - 1) * m_[lo]) * h / 6.0;
            default:
                return a * m_[lo] + b * m_[hi];
        }
    }

    std::vector<double> x_, y_, m_;
};

}  // namespace oceanlab
