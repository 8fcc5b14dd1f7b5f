#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oceanlab {

/// Discretization of omega = T x [-L,L] x [0,1].
///
/// x is periodic with period 2*pi (Nx uniform nodes). Latitude nodes are
/// staggered so that y = 0 is never sampled: every closed formula divides
/// by |b|^(1/2). z covers [0,1] inclusive.
struct Grid {
    int Nx;
    int Ny;
    int Nz;
    double L;

    Grid(int nx, int ny, int nz, double half_width)
        : Nx(nx), Ny(ny), Nz(nz), L(half_width) {
        if (Nx < 4 || Ny < 4 || Nz < 4)
            throw std::invalid_argument("Grid: Nx, Ny, Nz must all be >= 4");
        if (L < 2.0)
            throw std::invalid_argument("Grid: L must be >= 2 so |y| >= 1 is represented");
        if (Ny % 2 != 0)
            throw std::invalid_argument("Grid: Ny must be even (staggering excludes y = 0)");
    }

    double dx() const { return 2.0 * M_PI / Nx; }
    double dy() const { return 2.0 * L / Ny; }
    double dz() const { return 1.0 / (Nz - 1); }

    double x(int i) const { return i * dx(); }
    double y(int j) const { return -L + (j + 0.5) * dy(); }
    double z(int k) const { return k * dz(); }

    std::size_t horizontal_size() const { return std::size_t(Nx) * Ny; }
    std::size_t size() const { return std::size_t(Nx) * Ny * Nz; }
};

/// Sampled field on a grid: scalar or vector valued, real storage.
/// Horizontal (2D) fields use Nz = 1 slabs implicitly via the `levels` count.
class Field {
  public:
    Field() = default;
    Field(const Grid& g, int components, int levels)
        : grid_(g), comps_(components), levels_(levels),
          data_(g.horizontal_size() * components * levels, 0.0) {}

    static Field horizontal(const Grid& g, int components) { return Field(g, components, 1); }
    static Field volumetric(const Grid& g, int components) { return Field(g, components, g.Nz); }

    int components() const { return comps_; }
    int levels() const { return levels_; }
    const Grid& grid() const { return grid_; }

    double& at(int c, int i, int j, int k = 0) {
        return data_[index(c, i, j, k)];
    }
    double at(int c, int i, int j, int k = 0) const {
        return data_[index(c, i, j, k)];
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    /// L2 norm over the sampled domain, trapezoid in z, uniform in x, y.
    double l2_norm() const {
        double sum = 0.0;
        for (int k = 0; k < levels_; ++k) {
            double wz = 1.0;
            if (levels_ > 1) wz = (k == 0 || k == levels_ - 1) ? 0.5 : 1.0;
            for (int j = 0; j < grid_.Ny; ++j)
                for (int i = 0; i < grid_.Nx; ++i)
                    for (int c = 0; c < comps_; ++c) {
                        double v = at(c, i, j, k);
                        sum += wz * v * v;
                    }
        }
        double cell = grid_.dx() * grid_.dy();
        if (levels_ > 1) cell *= grid_.dz();
        return std::sqrt(sum * cell);
    }

  private:
    std::size_t index(int c, int i, int j, int k) const {
        return ((std::size_t(k) * comps_ + c) * grid_.Ny + j) * grid_.Nx + i;
    }

    Grid grid_{4, 4, 4, 2.0};
    int comps_ = 0;
    int levels_ = 0;
    std::vector<double> data_;
};

}  // namespace oceanlab
