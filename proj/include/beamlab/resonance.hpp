// Resonance cancellation of the filtered second-order system: the four
// trilinear terms carry fast phases exp(+-i sin(g) tau / eps^{1/3}); their
// time-resonant parts cancel pairwise thanks to the divergence-free
// structure of the advection term.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "beamlab/beams.hpp"
#include "beamlab/modal.hpp"

namespace beamlab {

namespace detail {

/// Two-component (u, b) modal field in the U/B slots.
inline ModeSum project_pm(const ModeSum& f, int sign) {
    // Pi_+ = [[1, i], [-i, 1]]/2 (onto the +i sin g eigenvector), Pi_- conj.
    ModeSum out = f;
    for (auto& m : out.modes) {
        const cplx u = m.U, b = m.B;
        if (sign > 0) {
            m.U = 0.5 * (u + I * b);
            m.B = 0.5 * (-I * u + b);
        } else {
            m.U = 0.5 * (u - I * b);
            m.B = 0.5 * (I * u + b);
        }
        m.W = 0.0;
    }
    return out;
}

/// d_y^{-1} vanishing at y = +infinity; requires strictly decaying modes.
inline ModeSum integrate_y(const ModeSum& f) {
    ModeSum out = f;
    for (auto& m : out.modes) {
        if (!(m.rho.real() < -1e-14))
            throw std::domain_error("integrate_y: non-decaying mode");
        m.amp /= m.rho;
    }
    return out;
}

/// Advection of g by the divergence-free field built from the scalar u:
/// (u, -dy^{-1} dx u) . grad g, as a modal pair product (no projection).
inline ModeSum advect_by_scalar(const ModeSum& u, const ModeSum& g) {
    ModeSum out(g.x0);
    out.modes.reserve(u.modes.size() * g.modes.size());
    for (const auto& a : u.modes) {
        if (!(a.rho.real() < -1e-14))
            throw std::domain_error("advect_by_scalar: non-decaying advecting mode");
        const cplx wcoef = -(I * a.k) / a.rho; // -dy^{-1} dx on the mode
        for (const auto& b : g.modes) {
            Mode m;
            m.k = a.k + b.k;
            m.rho = a.rho + b.rho;
            m.Omega = a.Omega + b.Omega;
            const cplx adv = a.U * (I * b.k) + (a.U * wcoef) * b.rho;
            m.amp = a.amp * b.amp * adv;
            m.U = b.U;
            m.B = b.B;
            m.W = 0.0;
            out.modes.push_back(m);
        }
    }
    return out;
}

} // namespace detail

struct ResonanceReport {
    double residual = 0.0;             // |res[(a)+(b)+(c)+(d)]| / max_j |res[(j)]|
    std::array<double, 4> term_resonant{};  // L2 of the resonant part of each term
    std::array<double, 4> term_rms{};       // RMS L2 of each term over the period
    double doubling_change = 0.0;      // residual change when samples double
    int samples = 0;
};

/// Forms the four trilinear terms of the filtered second-order equation on a
/// grid in the boundary-layer scaling, extracts the time-resonant component
/// by averaging over one fast period 2 pi eps^{1/3} / sin(g), and reports the
/// cancellation of the resonant parts.
inline ResonanceReport resonance_cancellation_check(const PhysParams& p, const ModeSum& v0_in,
                                                    int samples_per_period = 64) {
    if (samples_per_period < 32)
        throw std::invalid_argument("resonance_cancellation_check: need >= 32 samples/period");
    const double s = std::sin(p.gamma);

    // filtered base state: (U, B) of the eps^{1/3} boundary layer, frozen in
    // the slow time; strip the fast carrier (Omega -> 0 on every mode)
    ModeSum v0 = v0_in;
    for (auto& m : v0.modes) {
        m.Omega = 0.0;
        m.W = 0.0;
    }
    const ModeSum v0p = detail::project_pm(v0, +1);
    const ModeSum v0m = detail::project_pm(v0, -1);
    ModeSum up = v0p, um = v0m; // scalar advecting components (first slot)
    for (auto& m : up.modes) m.B = 0.0;
    for (auto& m : um.modes) m.B = 0.0;

    // tau-independent building blocks
    const ModeSum Gp = detail::advect_by_scalar(up, v0); // A[u+] . grad V0
    const ModeSum Gm = detail::advect_by_scalar(um, v0);

    // grid in the boundary-layer scaling
    const double rate = v0.min_abs_re_rho_decaying();
    const auto box = beam_window(p, 0.3, 4.0);
    const double ymax = 8.0 / rate;
    const Grid g(uniform_nodes(box.x_lo, box.x_hi, 192), uniform_nodes(0.0, ymax, 160));
    auto eval = [&](const ModeSum& f) { return f.evaluate(g, 0.0); };

    // the trilinear fields are pointwise products of modal evaluations:
    // A[f] . grad h = f * dx(h) + (-dy^{-1} dx f) * dy(h)
    auto stream_w = [&](const ModeSum& f) {
        return detail::integrate_y(f.dx()).scaled(-1.0);
    };
    auto advect_grid = [&](const ModeSum& f, const ModeSum& h) {
        const GridField fu = eval(f), fw = eval(stream_w(f));
        const GridField hx = eval(h.dx()), hy = eval(h.dy());
        GridField out(g, 0.0);
        for (int q = 0; q < 3; ++q)
            for (std::size_t n = 0; n < out.c[q].size(); ++n)
                out.c[q][n] = fu.c[0][n] * hx.c[q][n] + fw.c[0][n] * hy.c[q][n];
        return out;
    };
    const GridField fHpp = advect_grid(up, Gp), fHpm = advect_grid(up, Gm);
    const GridField fHmp = advect_grid(um, Gp), fHmm = advect_grid(um, Gm);
    // scalar first components of Pi_+- G^b feed terms (c), (d)
    auto first_comp = [](const ModeSum& f) {
        ModeSum out = f;
        for (auto& m : out.modes) m.B = 0.0;
        return out;
    };
    const ModeSum gpp = first_comp(detail::project_pm(Gp, +1));
    const ModeSum gpm = first_comp(detail::project_pm(Gm, +1));
    const ModeSum gmp = first_comp(detail::project_pm(Gp, -1));
    const ModeSum gmm = first_comp(detail::project_pm(Gm, -1));
    const GridField fJpp = advect_grid(gpp, v0), fJpm = advect_grid(gpm, v0);
    const GridField fJmp = advect_grid(gmp, v0), fJmm = advect_grid(gmm, v0);

    auto run = [&](int n) {
        // V1(tau) = (i/s) [ (e+ - 1) G+ - (e- - 1) G- ] applied inside each
        // trilinear slot; terms (a)-(d) become coefficient combinations of
        // the precomputed fields.
        std::array<GridField, 4> resonant{GridField(g, 0.0), GridField(g, 0.0),
                                          GridField(g, 0.0), GridField(g, 0.0)};
        std::array<double, 4> rms{};
        for (int it = 0; it < n; ++it) {
            const double phi = 2.0 * M_PI * double(it) / double(n);
            const cplx ep = std::exp(I * phi), em = std::conj(ep);
            const cplx cpl = (I / s) * (ep - 1.0), cmi = (I / s) * (em - 1.0);
            // (a) = e+ A[u+].grad V1, (b) = e- A[u-].grad V1
            // (c) = e+ A[(Pi+ V1)_1].grad V0, (d) = e- A[(Pi- V1)_1].grad V0
            std::array<GridField const*, 4> Hf{&fHpp, &fHpm, &fHmp, &fHmm};
            std::array<GridField const*, 4> Jf{&fJpp, &fJpm, &fJmp, &fJmm};
            std::array<std::array<cplx, 4>, 4> coef{};
            coef[0] = {ep * cpl, -ep * cmi, cplx(0), cplx(0)};  // (a) uses Hpp, Hpm
            coef[1] = {cplx(0), cplx(0), em * cpl, -em * cmi};  // (b) uses Hmp, Hmm
            coef[2] = {ep * cpl, -ep * cmi, cplx(0), cplx(0)};  // (c) uses Jpp, Jpm
            coef[3] = {cplx(0), cplx(0), em * cpl, -em * cmi};  // (d) uses Jmp, Jmm
            for (int term = 0; term < 4; ++term) {
                GridField val(g, 0.0);
                const auto& F = (term < 2) ? Hf : Jf;
                for (int q = 0; q < 4; ++q)
                    if (coef[term][q] != cplx(0.0)) val.axpy(coef[term][q], *F[q]);
                rms[term] += val.l2() * val.l2();
                resonant[term].axpy(1.0 / double(n), val);
            }
        }
        ResonanceReport rep;
        rep.samples = n;
        GridField sum(g, 0.0);
        double max_res = 0.0;
        for (int term = 0; term < 4; ++term) {
            rep.term_resonant[term] = resonant[term].l2();
            rep.term_rms[term] = std::sqrt(rms[term] / double(n));
            max_res = std::max(max_res, rep.term_resonant[term]);
            sum.axpy(1.0, resonant[term]);
        }
        rep.residual = sum.l2() / max_res;
        return rep;
    };

    ResonanceReport rep = run(samples_per_period);
    const ResonanceReport rep2 = run(2 * samples_per_period);
    rep.doubling_change = std::abs(rep2.residual - rep.residual) /
                          std::max(rep.residual, 1e-300);
    return rep;
}

} // namespace beamlab
