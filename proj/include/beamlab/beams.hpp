// Quadrature-based construction of beam fields: tensor Gauss-Legendre in |k|
// times Gauss-Legendre over each angular lobe. The incident wave, its two
// boundary-layer families and generic order-(p,q) test beams all come from
// the same node set, so boundary traces cancel node by node.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "beamlab/amplitude.hpp"
#include "beamlab/dispersion.hpp"
#include "beamlab/eigenvectors.hpp"
#include "beamlab/lift.hpp"
#include "beamlab/modal.hpp"

namespace beamlab {

/// Gauss-Legendre nodes/weights on [a, b].
inline void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                           std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (t * p0 - p1) / (t * t - 1.0);
            const double dt = p0 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = a + 0.5 * (b - a) * (1.0 - t);
        w[i] = (b - a) / ((1.0 - t * t) * pp * pp);
    }
}

struct BeamNode {
    double kmod = 0.0, theta = 0.0;
    double weight = 0.0; // quadrature weight including the |k| measure factor
    double k = 0.0, m = 0.0, omega = 0.0;
};

/// Tensor nodes over the support of the amplitude. The gamma+pi lobe mirrors
/// the gamma lobe exactly (theta -> theta + pi), which makes the two angular
/// lobes conjugate and physical fields real.
inline std::vector<BeamNode> beam_nodes(const SpectralAmplitude& amp, int nk, int nth,
                                        double gamma) {
    const auto [klo, khi] = amp.radial_support();
    if (!(klo < khi)) throw std::domain_error("beam_nodes: empty radial support (eta too large)");
    const auto [dlo, dhi] = amp.angular_support();
    std::vector<double> xk, wk, xt, wt;
    gauss_legendre(nk, klo, khi, xk, wk);
    gauss_legendre(nth, amp.gamma - dlo, amp.gamma + dhi, xt, wt);
    std::vector<BeamNode> nodes;
    nodes.reserve(2 * nk * nth);
    for (int lobe = 0; lobe < 2; ++lobe) {
        if (lobe == 0 && !amp.lobe_plus) continue;
        if (lobe == 1 && !amp.lobe_minus) continue;
        for (int i = 0; i < nk; ++i)
            for (int j = 0; j < nth; ++j) {
                BeamNode n;
                n.kmod = xk[i];
                n.theta = (lobe == 0) ? xt[j] : xt[j] + M_PI;
                n.weight = wk[i] * wt[j] * n.kmod;
                const auto kv = Wavevector::from_polar(n.kmod, n.theta, gamma);
                n.k = kv.k;
                n.m = kv.m;
                n.omega = std::sin(n.theta); // incident branch: omega = sin(theta)
                nodes.push_back(n);
            }
    }
    return nodes;
}

/// The incident beam with the sigma eps^{-1/6} prefactor, eigenvector modes.
inline ModeSum build_incident(const PhysParams& p, int nk = 12, int nth = 6,
                              double normalization = 1.0) {
    const auto amp = SpectralAmplitude::from(p);
    const auto nodes = beam_nodes(amp, nk, nth, p.gamma);
    const double pref = normalization * p.sigma * std::pow(p.eps, -1.0 / 6.0);
    ModeSum f(p.x0);
    f.modes.reserve(nodes.size());
    for (const auto& n : nodes) {
        const Wavevector kv{n.k, n.m};
        const auto X = eigenvector_interior(kv, n.omega, p.gamma);
        Mode mo;
        mo.amp = pref * amp(n.kmod, n.theta) * n.weight;
        mo.k = n.k;
        mo.rho = I * n.m;
        mo.Omega = n.omega;
        mo.U = X.U;
        mo.W = X.W;
        mo.B = X.B;
        f.modes.push_back(mo);
    }
    return f;
}

struct W0Parts {
    ModeSum inc, bl13, bl12;
    ModeSum total() const {
        ModeSum s = inc;
        s.append(bl13);
        s.append(bl12);
        return s;
    }
};

/// Linear solution W0 = incident + lifted boundary layers; the trace
/// (u, w, d_y b) vanishes at y = 0 node by node.
inline W0Parts build_w0(const PhysParams& p, int nk = 12, int nth = 6,
                        double normalization = 1.0) {
    const auto amp = SpectralAmplitude::from(p);
    const auto nodes = beam_nodes(amp, nk, nth, p.gamma);
    const double pref = normalization * p.sigma * std::pow(p.eps, -1.0 / 6.0);
    W0Parts out{ModeSum(p.x0), ModeSum(p.x0), ModeSum(p.x0)};
    RegimeConfig cfg;
    cfg.enforce = false; // support includes exact criticality; certification gates per node
    for (const auto& n : nodes) {
        const Wavevector kv{n.k, n.m};
        const auto X = eigenvector_interior(kv, n.omega, p.gamma);
        const cplx a0 = pref * amp(n.kmod, n.theta) * n.weight;
        Mode mo;
        mo.amp = a0;
        mo.k = n.k;
        mo.rho = I * n.m;
        mo.Omega = n.omega;
        mo.U = X.U;
        mo.W = X.W;
        mo.B = X.B;
        out.inc.modes.push_back(mo);

        CharPolyParams cp{n.omega, n.k, p.eps, p.nu0, p.kappa0, p.gamma};
        const auto roots = asym_roots_critical(cp, cfg);
        for (int j = 0; j < 3; ++j)
            if (!(roots.lambda[j].real() > 0.0))
                throw std::runtime_error("build_w0: non-decaying boundary-layer root");
        const std::array<cplx, 3> trace{X.U, X.W, I * n.m * X.B};
        const auto lift = lift_boundary(trace, roots, n.k, n.omega, p);
        for (int j = 0; j < 3; ++j) {
            Mode mb;
            mb.amp = a0 * lift.a[j];
            mb.k = n.k;
            mb.rho = -roots.lambda[j];
            mb.Omega = n.omega;
            mb.U = lift.X[j].U;
            mb.W = lift.X[j].W;
            mb.B = lift.X[j].B;
            (j < 2 ? out.bl13 : out.bl12).modes.push_back(mb);
        }
    }
    return out;
}

/// Generic scalar beam of order (p, q) in the u slot (for norm bookkeeping).
inline ModeSum build_test_beam(const PhysParams& p, double order_p, double order_q, int nk = 12,
                               int nth = 6) {
    auto amp = SpectralAmplitude::from(p, order_p, order_q);
    const auto nodes = beam_nodes(amp, nk, nth, p.gamma);
    const double pref = p.sigma * std::pow(p.eps, -1.0 / 6.0);
    ModeSum f(p.x0);
    for (const auto& n : nodes) {
        Mode mo;
        mo.amp = pref * amp(n.kmod, n.theta) * n.weight;
        mo.k = n.k;
        mo.rho = I * n.m;
        mo.Omega = n.omega;
        mo.U = 1.0;
        f.modes.push_back(mo);
    }
    return f;
}

/// Generic boundary-layer beam of order (alpha, beta, p, q) with decay
/// lambda(k) = eps^{-alpha} |k|^beta ell, Re(ell) > 0.
inline ModeSum build_test_bl_beam(const PhysParams& p, double alpha, double beta, double order_p,
                                  double order_q, cplx ell = std::polar(1.0, M_PI / 4.0),
                                  int nk = 12, int nth = 6) {
    if (!(ell.real() > 0.0)) throw std::domain_error("build_test_bl_beam: Re(ell) <= 0");
    auto amp = SpectralAmplitude::from(p, order_p, order_q);
    const auto nodes = beam_nodes(amp, nk, nth, p.gamma);
    const double pref = p.sigma * std::pow(p.eps, -1.0 / 6.0);
    ModeSum f(p.x0);
    for (const auto& n : nodes) {
        Mode mo;
        mo.amp = pref * amp(n.kmod, n.theta) * n.weight;
        mo.k = n.k;
        mo.rho = -std::pow(p.eps, -alpha) * std::pow(n.kmod, beta) * ell;
        mo.Omega = n.omega;
        mo.U = 1.0;
        f.modes.push_back(mo);
    }
    return f;
}

/// Grid sized to the beam geometry: covers the collimation zone of length
/// ~sigma eps^{-1/3} along the reflected ray (direction (-cos 2g, sin 2g))
/// plus a transverse margin, with dx = sigma/8 and a refined y layer for
/// boundary-layer content.
inline Grid beam_grid(const PhysParams& p, const ModeSum& f, double coverage = 1.2,
                      double margin = 6.0, std::size_t max_nx = 4096, std::size_t max_ny = 4096) {
    const double ray = coverage * p.sigma * std::pow(p.eps, -1.0 / 3.0);
    const double dxr = -std::cos(2.0 * p.gamma), dyr = std::sin(2.0 * p.gamma);
    const double T = margin * p.sigma;
    const double x_lo = p.x0 + std::min(0.0, ray * dxr) - T;
    const double x_hi = p.x0 + std::max(0.0, ray * dxr) + T;
    const double y_max = std::max(ray * dyr + T, 2.0 * T);
    const double dx = p.sigma / 8.0;
    std::size_t nx = std::size_t(std::ceil((x_hi - x_lo) / dx)) + 1;
    if (nx > max_nx) nx = max_nx;
    // Nyquist check on the oscillation
    if (f.max_abs_k() * (x_hi - x_lo) / double(nx - 1) > M_PI / 2.0)
        throw std::runtime_error("beam_grid: unresolved x oscillation (Nyquist)");
    const double rho_max = f.max_abs_re_rho();
    const double rho_min = f.min_abs_re_rho_decaying();
    double y_fine = 0.0, dy_fine = 0.0;
    if (rho_max > 1e-9 && std::isfinite(rho_min)) {
        dy_fine = 1.0 / (8.0 * rho_max);
        y_fine = std::min(8.0 / rho_min, 0.5 * y_max);
    }
    double dy_coarse = p.sigma / 8.0;
    const double im_max = f.max_abs_im_rho();
    if (im_max > 0.0) dy_coarse = std::min(dy_coarse, M_PI / (2.0 * im_max));
    auto ys = layered_y(y_fine, dy_fine, y_max, dy_coarse);
    if (ys.size() > max_ny) {
        // thin uniformly, keeping the endpoints
        std::vector<double> thin;
        const double stride = double(ys.size() - 1) / double(max_ny - 1);
        for (std::size_t j = 0; j < max_ny; ++j) thin.push_back(ys[std::size_t(j * stride)]);
        thin.back() = ys.back();
        ys = thin;
    }
    return Grid(uniform_nodes(x_lo, x_hi, nx), ys);
}

/// Integration box matching beam_grid's geometry (for exact window norms).
inline ModeSum::WindowBox beam_window(const PhysParams& p, double coverage = 1.2,
                                      double margin = 6.0) {
    const double ray = coverage * p.sigma * std::pow(p.eps, -1.0 / 3.0);
    const double dxr = -std::cos(2.0 * p.gamma), dyr = std::sin(2.0 * p.gamma);
    const double T = margin * p.sigma;
    ModeSum::WindowBox w;
    w.x_lo = p.x0 + std::min(0.0, ray * dxr) - T;
    w.x_hi = p.x0 + std::max(0.0, ray * dxr) + T;
    w.y_lo = 0.0;
    w.y_hi = std::max(ray * dyr + T, 2.0 * T);
    return w;
}

struct NormReport {
    double l2 = 0.0;
    double linf = 0.0;
};

inline NormReport norm_report(const ModeSum& f, const Grid& g, double t = 0.0) {
    const auto fld = f.evaluate(g, t);
    return {fld.l2(), fld.linf()};
}

} // namespace beamlab
