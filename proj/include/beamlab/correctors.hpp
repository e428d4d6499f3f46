// Nonlinear correctors: each projected forcing mode exp(-i alpha t + iKx + rho y)
// from a quadratic interaction gets the exact particular response of the
// forced linear system (the 4x4 mode matrix with pressure and viscosity),
// and the pair's wall trace is lifted by the non-critical root families.
// The leading order of the response is the Duhamel kernel
// i (ik'U - L' W)/(alpha -+ sin g) Pi_{+-} (U', B')^T of the reduced (u, b)
// system; the exact solve keeps the residual r1 equal to the uncorrected
// interactions. Interactions of type (c) and (d) are deliberately left
// uncorrected; they set the size of r1.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "beamlab/asym_roots.hpp"
#include "beamlab/lift.hpp"
#include "beamlab/modal.hpp"
#include "beamlab/quadratic.hpp"

namespace beamlab {

struct CorrectorOpts {
    double denom_floor = 0.05;   // minimum allowed |alpha -+ sin g|
    double band_factor = 4.0;    // frequency band: C eps^{1/3} around {0, +-2 sin g}
    double kmin_mf_factor = 1.0; // MF wavenumber floor: factor * eps^{1/3} * eta
    bool lift = true;
};

struct PairDiag {
    double K = 0.0, alpha = 0.0;
    cplx c1{}, c2{}, c3{};
    bool second_harmonic = false;
};

struct CorrectorBuild {
    ModeSum nonlin;       // exact forced responses (MF + II frequency content)
    ModeSum lift_slow_mf; // lifted Lambda_1 modes, mean-flow frequencies
    ModeSum lift_slow_ii; // lifted Lambda_1 modes, second-harmonic frequencies
    ModeSum lift_fast;    // lifted Lambda_{2,3} modes, both families
    std::vector<PairDiag> diags;
    double min_denom = 1e300;
    int skipped = 0;
};

/// Exact particular response to a forcing mode f exp(-i alpha t + iKx + rho y):
/// solve A_eps(alpha, K, -rho) (U,W,B,P)^T = (f_u, f_w, f_b, 0)^T.
inline std::array<cplx, 4> forced_response(const PhysParams& p, double alpha, double K, cplx rho,
                                           cplx fu, cplx fw, cplx fb) {
    Eigen::Matrix4cd A = system_matrix(alpha, p.kappa0, p.nu0, K, -rho, p.eps, p.gamma);
    Eigen::Vector4cd f;
    f << fu, fw, fb, 0.0;
    // row equilibration; the divergence row is kept exact
    for (int r = 0; r < 4; ++r) {
        const double s = A.row(r).cwiseAbs().maxCoeff();
        if (s > 0.0) {
            A.row(r) /= s;
            f(r) /= s;
        }
    }
    const Eigen::Vector4cd x = A.fullPivLu().solve(f);
    return {x(0), x(1), x(2), x(3)};
}

/// Corrector for one interaction Q(left, right). Returns the forced response
/// and the lifted layers; frequencies classify into mean flow (|alpha| small)
/// and second harmonic (|alpha| near 2 sin g).
inline CorrectorBuild nonlinear_corrector(const PhysParams& p, const ModeSum& left,
                                          const ModeSum& right, const CorrectorOpts& opts = {}) {
    const double s = std::sin(p.gamma);
    const double band = opts.band_factor * std::cbrt(p.eps);
    const double kmin_mf = opts.kmin_mf_factor * std::cbrt(p.eps) * p.eta;
    CorrectorBuild out;
    const double anchor = left.modes.empty() ? right.x0 : left.x0;
    out.nonlin = ModeSum(anchor);
    out.lift_slow_mf = ModeSum(anchor);
    out.lift_slow_ii = ModeSum(anchor);
    out.lift_fast = ModeSum(anchor);
    RegimeConfig rc;
    rc.enforce = false;

    ModeSum pairf(anchor); // scratch: one projected pair at a time
    for (const auto& a : left.modes)
        for (const auto& b : right.modes) {
            const double alpha = a.Omega + b.Omega;
            const double K = a.k + b.k;
            const bool is_mf = std::abs(alpha) <= band;
            const bool is_ii = std::abs(std::abs(alpha) - 2.0 * s) <= band;
            if (!is_mf && !is_ii)
                throw std::domain_error("nonlinear_corrector: pair frequency outside both bands");
            if (is_mf && std::abs(K) < kmin_mf) {
                ++out.skipped;
                continue;
            }
            const double dplus = std::abs(alpha - s), dminus = std::abs(alpha + s);
            out.min_denom = std::min(out.min_denom, std::min(dplus, dminus));
            if (std::min(dplus, dminus) < opts.denom_floor)
                throw std::domain_error("nonlinear_corrector: |alpha -+ sin g| below floor");

            // projected forcing of this pair: advection mode plus its wall tail
            pairf.modes.clear();
            const cplx S = a.U * (I * b.k) + a.W * b.rho;
            Mode adv;
            adv.amp = a.amp * b.amp * S;
            adv.k = K;
            adv.rho = a.rho + b.rho;
            adv.Omega = alpha;
            adv.U = b.U;
            adv.W = b.W;
            adv.B = b.B;
            pairf.modes.push_back(adv);
            pairf = pairf.leray_project();

            // exact response per forcing mode, scaled by -delta
            std::array<cplx, 3> trace{0.0, 0.0, 0.0};
            for (const auto& fm : pairf.modes) {
                const auto X =
                    forced_response(p, alpha, K, fm.rho, -p.delta * fm.U, -p.delta * fm.W,
                                    -p.delta * fm.B);
                Mode rm;
                rm.amp = fm.amp;
                rm.k = K;
                rm.rho = fm.rho;
                rm.Omega = alpha;
                rm.U = X[0];
                rm.W = X[1];
                rm.B = X[2];
                out.nonlin.modes.push_back(rm);
                trace[0] += fm.amp * rm.U;
                trace[1] += fm.amp * rm.W;
                trace[2] += fm.amp * fm.rho * rm.B;
            }
            if (!opts.lift) continue;

            CharPolyParams cpp{alpha, K, p.eps, p.nu0, p.kappa0, p.gamma};
            const RootTriple roots =
                is_mf ? asym_roots_meanflow(cpp, rc) : asym_roots_secondharmonic(cpp, rc);
            const auto lifted = lift_boundary(trace, roots, K, alpha, p);
            PairDiag d;
            d.K = K;
            d.alpha = alpha;
            d.second_harmonic = !is_mf;
            d.c1 = lifted.a[0];
            d.c2 = lifted.a[1];
            d.c3 = lifted.a[2];
            out.diags.push_back(d);
            for (int j = 0; j < 3; ++j) {
                Mode lm;
                lm.amp = lifted.a[j];
                lm.k = K;
                lm.rho = -roots.lambda[j];
                lm.Omega = alpha;
                lm.U = lifted.X[j].U;
                lm.W = lifted.X[j].W;
                lm.B = lifted.X[j].B;
                if (j == 0)
                    (is_mf ? out.lift_slow_mf : out.lift_slow_ii).modes.push_back(lm);
                else
                    out.lift_fast.modes.push_back(lm);
            }
        }
    return out;
}

/// The first-order corrector W1 and its named parts.
struct CorrectorSet {
    ModeSum nonlin_a;  // = W1_{BL, eps^{1/3}} (type-(a) responses)
    ModeSum nonlin_b;  // type-(b) responses
    ModeSum lift_fast; // lifted Lambda_{2,3} modes (eps^{-1/2} decay)
    ModeSum w1_mf;     // lifted Lambda_1 modes, mean flow
    ModeSum w1_ii;     // lifted Lambda_1 modes, second harmonic
    double min_denom = 1e300;
    int skipped = 0;

    ModeSum w1_bl13() const { return nonlin_a; }
    ModeSum w1_bl12() const {
        ModeSum m = nonlin_b;
        m.append(lift_fast);
        return m;
    }
    ModeSum total() const {
        ModeSum m = nonlin_a;
        m.append(nonlin_b);
        m.append(lift_fast);
        m.append(w1_mf);
        m.append(w1_ii);
        return m;
    }
};

/// Assembles W1 from the four corrected interactions (a1), (a2), (b1), (b2).
/// The left and right copies of W0 should be built on staggered quadrature
/// nodes so that opposite-lobe pairs do not collide at k + k' = 0.
inline CorrectorSet assemble_w1(const PhysParams& p, const W0Parts& w0_left,
                                const W0Parts& w0_right, const CorrectorOpts& opts = {}) {
    CorrectorSet set;
    set.nonlin_a = ModeSum(p.x0);
    set.nonlin_b = ModeSum(p.x0);
    set.lift_fast = ModeSum(p.x0);
    set.w1_mf = ModeSum(p.x0);
    set.w1_ii = ModeSum(p.x0);
    if (p.delta == 0.0) { // all correctors carry the factor delta
        set.min_denom = 0.0;
        return set;
    }
    auto absorb = [&](CorrectorBuild&& b, bool type_a) {
        (type_a ? set.nonlin_a : set.nonlin_b).append(b.nonlin);
        set.lift_fast.append(b.lift_fast);
        set.w1_mf.append(b.lift_slow_mf);
        set.w1_ii.append(b.lift_slow_ii);
        set.min_denom = std::min(set.min_denom, b.min_denom);
        set.skipped += b.skipped;
    };
    absorb(nonlinear_corrector(p, w0_left.bl13, w0_right.bl13, opts), true);  // (a1)
    absorb(nonlinear_corrector(p, w0_left.inc, w0_right.bl13, opts), true);   // (a2)
    absorb(nonlinear_corrector(p, w0_left.bl13, w0_right.bl12, opts), false); // (b1)
    absorb(nonlinear_corrector(p, w0_left.inc, w0_right.bl12, opts), false);  // (b2)
    return set;
}

/// Uncorrected interactions delta((c1)+(c2)+(d1)+(d2)+(d3)) as a modal field
/// (exact projection); together with the linear residual of W1 this is r1.
inline ModeSum uncorrected_forcing(const PhysParams& p, const W0Parts& A, const W0Parts& B) {
    ModeSum r(A.inc.x0);
    r.append(convection_modal(A.inc, B.inc));   // (c1)
    r.append(convection_modal(A.bl13, B.inc));  // (c2)
    r.append(convection_modal(A.bl12, B.bl13)); // (d1)
    r.append(convection_modal(A.bl12, B.bl12)); // (d2)
    r.append(convection_modal(A.bl12, B.inc));  // (d3)
    return r.scaled(p.delta);
}

/// Corrected forcing delta((a1)+(a2)+(b1)+(b2)) as a modal field.
inline ModeSum corrected_forcing(const PhysParams& p, const W0Parts& A, const W0Parts& B) {
    ModeSum r(A.inc.x0);
    r.append(convection_modal(A.bl13, B.bl13)); // (a1)
    r.append(convection_modal(A.inc, B.bl13));  // (a2)
    r.append(convection_modal(A.bl13, B.bl12)); // (b1)
    r.append(convection_modal(A.inc, B.bl12));  // (b2)
    return r.scaled(p.delta);
}

/// Leading-order Duhamel kernel of the reduced (u, b) system for one pair;
/// the exact response approaches this as eps -> 0 on boundary-layer pairs.
inline std::pair<cplx, cplx> reduced_kernel(const PhysParams& p, const Mode& a, const Mode& b) {
    const double s = std::sin(p.gamma);
    const double alpha = a.Omega + b.Omega;
    const cplx S = a.U * (I * b.k) + a.W * b.rho;
    const cplx F = -p.delta * S;
    const cplx vp_u = 0.5 * (b.U + I * b.B), vp_b = 0.5 * (-I * b.U + b.B);
    const cplx vm_u = 0.5 * (b.U - I * b.B), vm_b = 0.5 * (I * b.U + b.B);
    const cplx cp = I * F / (alpha - s);
    const cplx cm = I * F / (alpha + s);
    return {cp * vp_u + cm * vm_u, cp * vp_b + cm * vm_b};
}

} // namespace beamlab
