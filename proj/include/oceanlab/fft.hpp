#pragma once

#include <complex>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace oceanlab {

namespace detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

/// In-place 1D complex DFT (unnormalized forward, normalized inverse).
/// Planning is serialized: the FFTW planner is not thread-safe.
inline void fft_1d(std::vector<std::complex<double>>& data, bool forward) {
    const int n = int(data.size());
    fftw_complex* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, ptr, ptr, forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    if (!forward)
        for (auto& v : data) v /= double(n);
}

/// In-place 2D complex DFT on row-major (ny rows of nx) data.
inline void fft_2d(std::vector<std::complex<double>>& data, int nx, int ny, bool forward) {
    fftw_complex* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_2d(ny, nx, ptr, ptr, forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    if (!forward)
        for (auto& v : data) v /= double(nx) * double(ny);
}

/// Signed integer wavenumber for index i of an n-point DFT.
inline int fft_wavenumber(int i, int n) {
    return i <= n / 2 ? i : i - n;
}

}  // namespace oceanlab
