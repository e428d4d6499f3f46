// Modal fields: finite sums of modes amp * X * exp(-i Omega t + ik(x-x0) + rho y).
// Interior modes carry rho = im, boundary layers rho = -lambda with Re(lambda) > 0.
// Calculus on modes (d/dx, d/dy, d/dt, Laplacian, half-plane Leray projection)
// is exact, which keeps consistency residuals free of discretization error.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "beamlab/charpoly.hpp"
#include "beamlab/grid.hpp"
#include "beamlab/parallel.hpp"

namespace beamlab {

struct Mode {
    cplx amp{};       // scalar amplitude (quadrature weight and prefactors included)
    double k = 0.0;   // x-wavenumber
    cplx rho{};       // y-exponent: field ~ exp(rho y)
    double Omega = 0.0; // time frequency
    cplx U{}, W{}, B{}; // component amplitudes
};

class ModeSum {
  public:
    std::vector<Mode> modes;
    double x0 = 0.0;

    ModeSum() = default;
    explicit ModeSum(double anchor) : x0(anchor) {}

    void append(const ModeSum& other) {
        if (std::abs(other.x0 - x0) > 1e-14 && !other.modes.empty() && !modes.empty())
            throw std::invalid_argument("ModeSum::append: anchor mismatch");
        if (modes.empty()) x0 = other.x0;
        modes.insert(modes.end(), other.modes.begin(), other.modes.end());
    }

    ModeSum scaled(cplx c) const {
        ModeSum out(*this);
        for (auto& m : out.modes) m.amp *= c;
        return out;
    }

    ModeSum dx() const {
        ModeSum out(*this);
        for (auto& m : out.modes) m.amp *= I * m.k;
        return out;
    }
    ModeSum dy() const {
        ModeSum out(*this);
        for (auto& m : out.modes) m.amp *= m.rho;
        return out;
    }
    ModeSum dt() const {
        ModeSum out(*this);
        for (auto& m : out.modes) m.amp *= -I * m.Omega;
        return out;
    }
    ModeSum laplacian() const {
        ModeSum out(*this);
        for (auto& m : out.modes) m.amp *= m.rho * m.rho - m.k * m.k;
        return out;
    }

    double max_abs_re_rho() const {
        double v = 0.0;
        for (const auto& m : modes) v = std::max(v, std::abs(m.rho.real()));
        return v;
    }
    double min_abs_re_rho_decaying() const {
        double v = std::numeric_limits<double>::infinity();
        for (const auto& m : modes)
            if (m.rho.real() < -1e-14) v = std::min(v, -m.rho.real());
        return v;
    }
    double max_abs_k() const {
        double v = 0.0;
        for (const auto& m : modes) v = std::max(v, std::abs(m.k));
        return v;
    }
    double max_abs_im_rho() const {
        double v = 0.0;
        for (const auto& m : modes) v = std::max(v, std::abs(m.rho.imag()));
        return v;
    }
    double max_abs_Omega() const {
        double v = 0.0;
        for (const auto& m : modes) v = std::max(v, std::abs(m.Omega));
        return v;
    }

    /// Exact Leray projection on the half plane: remove the gradient part and
    /// enforce w = 0 at y = 0 by a harmonic gradient exp(ikx - |k|y).
    ModeSum leray_project() const {
        ModeSum out(x0);
        out.modes.reserve(2 * modes.size());
        for (const auto& m : modes) {
            if (std::abs(m.k) < 1e-14) {
                // the only x-independent divergence-free tangent field has w = 0
                Mode p = m;
                p.W = 0.0;
                out.modes.push_back(p);
                continue;
            }
            const cplx div = I * m.k * m.U + m.rho * m.W;
            const double dscale =
                std::abs(m.k) * std::abs(m.U) + std::abs(m.rho) * std::abs(m.W);
            cplx phi = 0.0;
            if (std::abs(div) > 1e-13 * dscale) {
                const cplx denom = m.rho * m.rho - cplx(m.k * m.k);
                if (std::abs(denom) < 1e-12 * (std::norm(m.rho) + m.k * m.k))
                    throw std::domain_error("leray_project: mode resonant with exp(-|k|y)");
                phi = div / denom;
            }
            Mode p = m;
            p.U = m.U - I * m.k * phi;
            p.W = m.W - m.rho * phi;
            out.modes.push_back(p);
            // harmonic correction fixing the wall trace
            const double ak = std::abs(m.k);
            const cplx A = -p.W / ak;
            Mode h;
            h.amp = m.amp;
            h.k = m.k;
            h.rho = -ak;
            h.Omega = m.Omega;
            h.U = -I * m.k * A;
            h.W = ak * A;
            h.B = 0.0;
            out.modes.push_back(h);
        }
        return out;
    }

    /// Divergence coefficient per mode (ik U + rho W); exact zero means the
    /// modal field is divergence-free.
    double max_div_coeff() const {
        double v = 0.0;
        for (const auto& m : modes)
            v = std::max(v, std::abs(m.amp) * std::abs(I * m.k * m.U + m.rho * m.W));
        return v;
    }

    /// Accumulate the three components on a tensor grid at time t.
    void evaluate_range(const Grid& g, double t, GridField& out, std::size_t lo,
                        std::size_t hi) const {
        const std::size_t nx = g.x.size(), ny = g.y.size();
        std::vector<cplx> px(nx), py(ny);
        for (std::size_t n = lo; n < hi; ++n) {
            const Mode& m = modes[n];
            const cplx f = m.amp * std::exp(-I * m.Omega * t);
            for (std::size_t i = 0; i < nx; ++i)
                px[i] = std::exp(I * (m.k * (g.x[i] - x0)));
            for (std::size_t j = 0; j < ny; ++j) py[j] = std::exp(m.rho * g.y[j]);
            const cplx cu = f * m.U, cw = f * m.W, cb = f * m.B;
            for (std::size_t j = 0; j < ny; ++j) {
                const cplx ey = py[j];
                cplx* u = &out.c[0][j * nx];
                cplx* w = &out.c[1][j * nx];
                cplx* b = &out.c[2][j * nx];
                const cplx eu = cu * ey, ew = cw * ey, eb = cb * ey;
                for (std::size_t i = 0; i < nx; ++i) {
                    const cplx e = px[i];
                    u[i] += eu * e;
                    w[i] += ew * e;
                    b[i] += eb * e;
                }
            }
        }
    }

    GridField evaluate(const Grid& g, double t) const {
        const unsigned nt = n_threads();
        if (nt <= 1 || modes.size() < 64) {
            GridField out(g, t);
            evaluate_range(g, t, out, 0, modes.size());
            return out;
        }
        std::vector<GridField> partial(nt, GridField(g, t));
        parallel_chunks(modes.size(), [&](unsigned tid, std::size_t lo, std::size_t hi) {
            evaluate_range(g, t, partial[tid % partial.size()], lo, hi);
        });
        GridField out = std::move(partial[0]);
        for (unsigned q = 1; q < nt; ++q) out.axpy(1.0, partial[q]);
        return out;
    }

    /// Exact L2 over [x_lo,x_hi] x [y_lo,y_hi]: the x and y integrals of each
    /// mode pair are closed-form, so no grid or aliasing enters. O(n^2) pairs.
    struct WindowBox {
        double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    };
    double l2_window(const WindowBox& w, double t = 0.0) const {
        auto Ix = [&](double dk) -> cplx {
            const double a = w.x_lo - x0, b = w.x_hi - x0;
            if (std::abs(dk) * (b - a) < 1e-9) return b - a;
            return (std::exp(I * dk * b) - std::exp(I * dk * a)) / (I * dk);
        };
        auto Iy = [&](cplx s) -> cplx {
            if (std::abs(s) * (w.y_hi - w.y_lo) < 1e-9) return w.y_hi - w.y_lo;
            return (std::exp(s * w.y_hi) - std::exp(s * w.y_lo)) / s;
        };
        double total = 0.0;
        const std::size_t n = modes.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Mode& a = modes[i];
            const cplx amp_a = a.amp * std::exp(-I * a.Omega * t);
            const cplx Xa[3] = {a.U, a.W, a.B};
            for (std::size_t j = i; j < n; ++j) {
                const Mode& b = modes[j];
                const cplx Xb[3] = {b.U, b.W, b.B};
                cplx dot = 0.0;
                for (int q = 0; q < 3; ++q) dot += Xa[q] * std::conj(Xb[q]);
                if (dot == cplx(0.0)) continue;
                const cplx amp_b = b.amp * std::exp(-I * b.Omega * t);
                const cplx pair = amp_a * std::conj(amp_b) * dot * Ix(a.k - b.k) *
                                  Iy(a.rho + std::conj(b.rho));
                total += (i == j) ? pair.real() : 2.0 * pair.real();
            }
        }
        return std::sqrt(std::max(0.0, total));
    }

    /// Trace of a chosen component at y = 0 along the x grid; deriv_y
    /// multiplies each mode by rho (for the no-flux condition on b).
    std::vector<cplx> trace_y0(int comp, const std::vector<double>& xs, double t,
                               bool deriv_y = false) const {
        std::vector<cplx> out(xs.size(), cplx(0.0));
        for (const auto& m : modes) {
            cplx f = m.amp * std::exp(-I * m.Omega * t);
            f *= (comp == 0 ? m.U : comp == 1 ? m.W : m.B);
            if (deriv_y) f *= m.rho;
            for (std::size_t i = 0; i < xs.size(); ++i)
                out[i] += f * std::exp(I * m.k * (xs[i] - x0));
        }
        return out;
    }

};

} // namespace beamlab
