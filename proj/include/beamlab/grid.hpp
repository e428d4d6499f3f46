// Tensor grids over [x_min,x_max] x [0,y_max] and 3-component complex fields
// with trapezoid norms, smooth windows, spectral-x derivatives and a
// half-plane Leray projector (Fourier in x, odd/even extension in y).
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "beamlab/bump.hpp"
#include "beamlab/charpoly.hpp"

namespace beamlab {

struct Grid {
    std::vector<double> x; // uniform
    std::vector<double> y; // nondecreasing, first node 0
    std::vector<double> wy; // trapezoid weights in y

    Grid() = default;
    Grid(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
        wy.assign(y.size(), 0.0);
        for (std::size_t j = 0; j + 1 < y.size(); ++j) {
            const double h = y[j + 1] - y[j];
            wy[j] += 0.5 * h;
            wy[j + 1] += 0.5 * h;
        }
    }
    double dx() const { return x.size() > 1 ? x[1] - x[0] : 1.0; }
    std::size_t nx() const { return x.size(); }
    std::size_t ny() const { return y.size(); }
};

inline std::vector<double> uniform_nodes(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * (n == 1 ? 0.0 : double(i) / double(n - 1));
    return v;
}

/// Two-zone y grid: spacing dy_fine up to y_fine, then dy_coarse up to y_max.
inline std::vector<double> layered_y(double y_fine, double dy_fine, double y_max,
                                     double dy_coarse) {
    std::vector<double> v{0.0};
    if (y_fine > 0.0 && dy_fine > 0.0 && y_fine < y_max) {
        const std::size_t nf = std::max<std::size_t>(2, std::size_t(std::ceil(y_fine / dy_fine)));
        for (std::size_t j = 1; j <= nf; ++j) v.push_back(y_fine * double(j) / double(nf));
    }
    const double start = v.back();
    const std::size_t nc =
        std::max<std::size_t>(2, std::size_t(std::ceil((y_max - start) / dy_coarse)));
    for (std::size_t j = 1; j <= nc; ++j) v.push_back(start + (y_max - start) * double(j) / double(nc));
    return v;
}

struct GridField {
    Grid g;
    double t = 0.0;
    std::array<std::vector<cplx>, 3> c; // u, w, b planes, row-major [iy*nx + ix]

    GridField() = default;
    GridField(const Grid& grid, double time) : g(grid), t(time) {
        for (auto& p : c) p.assign(g.nx() * g.ny(), cplx(0.0));
    }

    std::size_t idx(std::size_t ix, std::size_t iy) const { return iy * g.nx() + ix; }

    double l2() const {
        double s = 0.0;
        const double dx = g.dx();
        for (const auto& plane : c)
            for (std::size_t j = 0; j < g.ny(); ++j) {
                double row = 0.0;
                const cplx* p = &plane[j * g.nx()];
                for (std::size_t i = 0; i < g.nx(); ++i) row += std::norm(p[i]);
                s += row * g.wy[j] * dx;
            }
        return std::sqrt(s);
    }

    double l2_weighted(const std::vector<double>& mask) const {
        double s = 0.0;
        const double dx = g.dx();
        for (const auto& plane : c)
            for (std::size_t j = 0; j < g.ny(); ++j)
                for (std::size_t i = 0; i < g.nx(); ++i)
                    s += std::norm(plane[j * g.nx() + i]) * mask[j * g.nx() + i] * g.wy[j] * dx;
        return std::sqrt(s);
    }

    double linf() const {
        double m = 0.0;
        for (const auto& plane : c)
            for (const auto& v : plane) m = std::max(m, std::abs(v));
        return m;
    }

    /// Smooth taper to zero over a margin (fraction of the x extent).
    void window_x(double margin_frac = 0.08) {
        const double lo = g.x.front(), hi = g.x.back();
        const double w = margin_frac * (hi - lo);
        std::vector<double> win(g.nx());
        for (std::size_t i = 0; i < g.nx(); ++i) win[i] = taper_window(g.x[i], lo, hi, w);
        for (auto& plane : c)
            for (std::size_t j = 0; j < g.ny(); ++j)
                for (std::size_t i = 0; i < g.nx(); ++i) plane[j * g.nx() + i] *= win[i];
    }

    void window_y_top(double margin_frac = 0.1) {
        const double hi = g.y.back();
        const double w = margin_frac * hi;
        for (auto& plane : c)
            for (std::size_t j = 0; j < g.ny(); ++j) {
                const double win = 1.0 - smoothstep(g.y[j], hi - w, hi);
                for (std::size_t i = 0; i < g.nx(); ++i) plane[j * g.nx() + i] *= win;
            }
    }

    GridField& axpy(cplx a, const GridField& o) {
        for (int q = 0; q < 3; ++q)
            for (std::size_t n = 0; n < c[q].size(); ++n) c[q][n] += a * o.c[q][n];
        return *this;
    }
};

namespace detail {

/// In-place 1D FFT along x for each y row of a plane (sign = FFTW_FORWARD/BACKWARD).
inline void fft_rows(std::vector<cplx>& plane, std::size_t nx, std::size_t ny, int sign) {
    int n = int(nx);
    fftw_plan plan = fftw_plan_many_dft(
        1, &n, int(ny), reinterpret_cast<fftw_complex*>(plane.data()), nullptr, 1,
        int(nx), reinterpret_cast<fftw_complex*>(plane.data()), nullptr, 1, int(nx), sign,
        FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    if (sign == FFTW_BACKWARD) {
        const double s = 1.0 / double(nx);
        for (auto& v : plane) v *= s;
    }
}

inline std::vector<double> fft_wavenumbers(std::size_t n, double length) {
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = (i <= n / 2) ? double(i) : double(i) - double(n);
        k[i] = 2.0 * M_PI * f / length;
    }
    return k;
}

} // namespace detail

/// Spectral d/dx on a uniform-x field (periodic continuation; window first).
inline GridField ddx_spectral(const GridField& f) {
    GridField out = f;
    const std::size_t nx = f.g.nx(), ny = f.g.ny();
    const double L = f.g.dx() * double(nx);
    const auto ks = detail::fft_wavenumbers(nx, L);
    for (auto& plane : out.c) {
        detail::fft_rows(plane, nx, ny, FFTW_FORWARD);
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i) plane[j * nx + i] *= I * ks[i];
        detail::fft_rows(plane, nx, ny, FFTW_BACKWARD);
    }
    return out;
}

/// 4th-order centered d/dy on a uniform y grid (one-sided 4th order at edges).
inline void ddy_fd4_plane(const std::vector<cplx>& in, std::vector<cplx>& out, std::size_t nx,
                          std::size_t ny, double h) {
    if (ny < 5) throw std::invalid_argument("ddy_fd4: need ny >= 5");
    auto row = [&](std::size_t j) { return &in[j * nx]; };
    for (std::size_t i = 0; i < nx; ++i) {
        out[0 * nx + i] = (-25.0 * row(0)[i] + 48.0 * row(1)[i] - 36.0 * row(2)[i] +
                           16.0 * row(3)[i] - 3.0 * row(4)[i]) /
                          (12.0 * h);
        out[1 * nx + i] = (-3.0 * row(0)[i] - 10.0 * row(1)[i] + 18.0 * row(2)[i] -
                           6.0 * row(3)[i] + row(4)[i]) /
                          (12.0 * h);
        out[(ny - 2) * nx + i] = -(-3.0 * row(ny - 1)[i] - 10.0 * row(ny - 2)[i] +
                                   18.0 * row(ny - 3)[i] - 6.0 * row(ny - 4)[i] + row(ny - 5)[i]) /
                                 (12.0 * h);
        out[(ny - 1) * nx + i] = -(-25.0 * row(ny - 1)[i] + 48.0 * row(ny - 2)[i] -
                                   36.0 * row(ny - 3)[i] + 16.0 * row(ny - 4)[i] -
                                   3.0 * row(ny - 5)[i]) /
                                 (12.0 * h);
    }
    for (std::size_t j = 2; j + 2 < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            out[j * nx + i] = (row(j - 2)[i] - 8.0 * row(j - 1)[i] + 8.0 * row(j + 1)[i] -
                               row(j + 2)[i]) /
                              (12.0 * h);
}

inline GridField ddy_fd4(const GridField& f) {
    GridField out(f.g, f.t);
    const double h = f.g.y[1] - f.g.y[0];
    for (std::size_t j = 0; j + 1 < f.g.ny(); ++j)
        if (std::abs((f.g.y[j + 1] - f.g.y[j]) - h) > 1e-9 * h)
            throw std::invalid_argument("ddy_fd4: y grid not uniform");
    for (int q = 0; q < 3; ++q) ddy_fd4_plane(f.c[q], out.c[q], f.g.nx(), f.g.ny(), h);
    return out;
}

/// Half-plane Leray projection of a grid field on a uniform y grid:
/// odd extension of w, even extension of (u, b), 2D Fourier projection of
/// (u, w) onto divergence-free fields; b is untouched. The odd symmetry
/// enforces w = 0 at y = 0.
inline GridField leray_project_grid(const GridField& f) {
    const std::size_t nx = f.g.nx(), ny = f.g.ny();
    const double hy = f.g.y[1] - f.g.y[0];
    for (std::size_t j = 0; j + 1 < ny; ++j)
        if (std::abs((f.g.y[j + 1] - f.g.y[j]) - hy) > 1e-9 * hy)
            throw std::invalid_argument("leray_project_grid: y grid not uniform");
    const std::size_t nye = 2 * (ny - 1); // extension [0, 2 ymax)
    std::vector<cplx> ue(nx * nye), we(nx * nye);
    // even extension of u, odd of w: index j -> mirror nye - j; oddness
    // forces w = 0 at the self-mirror rows j = 0 and j = ny-1 (in L2 the
    // overwritten line has measure zero)
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            ue[j * nx + i] = f.c[0][j * nx + i];
            we[j * nx + i] = (j == 0 || j == ny - 1) ? cplx(0.0) : f.c[1][j * nx + i];
        }
    for (std::size_t j = 1; j + 1 < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            ue[(nye - j) * nx + i] = f.c[0][j * nx + i];
            we[(nye - j) * nx + i] = -f.c[1][j * nx + i];
        }
    // 2D FFT
    auto fft2 = [&](std::vector<cplx>& p, int sign) {
        fftw_plan plan = fftw_plan_dft_2d(int(nye), int(nx),
                                          reinterpret_cast<fftw_complex*>(p.data()),
                                          reinterpret_cast<fftw_complex*>(p.data()), sign,
                                          FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
        if (sign == FFTW_BACKWARD) {
            const double s = 1.0 / double(nx * nye);
            for (auto& v : p) v *= s;
        }
    };
    fft2(ue, FFTW_FORWARD);
    fft2(we, FFTW_FORWARD);
    const double Lx = f.g.dx() * double(nx);
    const double Ly = hy * double(nye);
    const auto kx = detail::fft_wavenumbers(nx, Lx);
    const auto ky = detail::fft_wavenumbers(nye, Ly);
    for (std::size_t j = 0; j < nye; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            // unpaired Nyquist modes cannot carry odd content; leave them alone
            const double k1 = (nx % 2 == 0 && i == nx / 2) ? 0.0 : kx[i];
            const double k2 = (nye % 2 == 0 && j == nye / 2) ? 0.0 : ky[j];
            const double k2n = k1 * k1 + k2 * k2;
            if (k2n == 0.0) { we[j * nx + i] = 0.0; continue; }
            const cplx du = ue[j * nx + i], dw = we[j * nx + i];
            const cplx kd = (k1 * du + k2 * dw) / k2n;
            ue[j * nx + i] = du - k1 * kd;
            we[j * nx + i] = dw - k2 * kd;
        }
    fft2(ue, FFTW_BACKWARD);
    fft2(we, FFTW_BACKWARD);
    GridField out = f;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            out.c[0][j * nx + i] = ue[j * nx + i];
            out.c[1][j * nx + i] = we[j * nx + i];
        }
    return out;
}

} // namespace beamlab
