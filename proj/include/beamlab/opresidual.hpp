// Consistency residuals: apply d_t + L_eps (+ delta Q) to assembled fields.
// The linear part acts on modal fields exactly (analytic d_t, exact modal
// Laplacian and projection); the quadratic part is added on a grid.
#pragma once

#include <cmath>

#include "beamlab/correctors.hpp"
#include "beamlab/modal.hpp"
#include "beamlab/phys.hpp"
#include "beamlab/quadratic.hpp"

namespace beamlab {

/// (d_t + A) W mode-wise, A the unprojected linear matrix
/// (-nu Lap u - sg b, -nu Lap w - cg b, sg u + cg w - kappa Lap b).
inline ModeSum linear_apply_raw(const ModeSum& f, const PhysParams& p) {
    const double sg = std::sin(p.gamma), cg = std::cos(p.gamma);
    ModeSum out = f;
    for (auto& m : out.modes) {
        const cplx lap = m.rho * m.rho - cplx(m.k * m.k);
        const cplx dt = -I * m.Omega;
        const cplx U = (dt - p.eps * p.nu0 * lap) * m.U - sg * m.B;
        const cplx W = (dt - p.eps * p.nu0 * lap) * m.W - cg * m.B;
        const cplx B = sg * m.U + cg * m.W + (dt - p.eps * p.kappa0 * lap) * m.B;
        m.U = U;
        m.W = W;
        m.B = B;
    }
    return out;
}

/// Linear consistency residual P[(d_t + A) W] as a modal field. On fields
/// that are divergence-free and tangent at the wall this equals
/// d_t W + L_eps W; applied to an exact mode it returns the projected
/// pressure gradient, which vanishes.
inline ModeSum linear_residual(const ModeSum& f, const PhysParams& p) {
    return linear_apply_raw(f, p).leray_project();
}

/// Full residual field on a grid: P[(d_t + A) W] + delta Q(W, W).
/// dt is analytic throughout (modal).
inline GridField apply_operator(const ModeSum& f, const PhysParams& p, bool include_nonlinear,
                                const Grid& g, double t) {
    GridField out = linear_residual(f, p).evaluate(g, t);
    if (include_nonlinear && p.delta != 0.0) {
        const GridField q = convection_grid(f, f, g, t);
        out.axpy(p.delta, q);
    }
    return out;
}

/// r1 = d_t W1 + L_eps W1 + delta Q(W0, W0), assembled fully modally:
/// the corrected pair products cancel against the corrector's own linear
/// response, leaving the uncorrected interactions plus the reduced-system
/// and projection errors.
inline ModeSum residual_r1(const PhysParams& p, const W0Parts& A, const W0Parts& B,
                           const CorrectorSet& w1) {
    ModeSum r = linear_residual(w1.total(), p);
    r.append(corrected_forcing(p, A, B));
    r.append(uncorrected_forcing(p, A, B));
    return r;
}

/// <L0 W, W> with L0 the inviscid skew part; the real part must vanish.
inline double skew_symmetry_defect(const ModeSum& f, const PhysParams& p, const Grid& g,
                                   double t) {
    PhysParams inv = p;
    inv.nu0 = 1e-300; // inviscid part only
    inv.kappa0 = 1e-300;
    const auto lw = linear_apply_raw(f, inv).leray_project();
    // subtract the d_t part: we want only L0 W
    ModeSum l0 = lw;
    ModeSum dt = f.dt().leray_project();
    for (auto& m : dt.modes) m.amp = -m.amp;
    l0.append(dt);
    const auto a = l0.evaluate(g, t);
    const auto b = f.evaluate(g, t);
    cplx acc = 0.0;
    const double dx = g.dx();
    for (int q = 0; q < 3; ++q)
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i)
                acc += a.c[q][j * g.nx() + i] * std::conj(b.c[q][j * g.nx() + i]) * g.wy[j] * dx;
    const double n2 = b.l2();
    return std::abs(acc.real()) / (n2 * n2);
}

} // namespace beamlab
