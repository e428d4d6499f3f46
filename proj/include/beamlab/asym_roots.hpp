// Regime-specific asymptotic expansions of the three decaying roots of the
// characteristic polynomial, refined by Newton iteration on the full
// polynomial and certified by the localization lemma.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "beamlab/charpoly.hpp"
#include "beamlab/newton_cert.hpp"

namespace beamlab {

enum class Regime { critical, meanflow, secondharmonic };

struct RootTriple {
    std::array<cplx, 3> lambda{};   // refined roots, Re > 0
    std::array<cplx, 3> seed{};     // asymptotic seeds before refinement
    std::array<double, 3> radius{}; // certified radii at the refined points
    std::array<bool, 3> fallback{}; // certification rejected, brute-force root substituted
    Regime regime = Regime::critical;
    bool eta0_ok = true; // |k| >= eta0: the a-priori certification guarantee applies
};

struct RegimeConfig {
    double c0 = 0.5;   // lower regime constant in c0 eps^{1/3} < |omega -+ sin g|
    double C0 = 2.0;   // upper regime constant
    double sigma = 0;  // if > 0, enforce |k| <= 1/sigma
    double eta = 1.0;  // lower wavenumber bound
    bool enforce = true;
};

/// ell_{1,2}(theta) of the critical regime: the two decaying roots of
/// omega (kappa0+nu0) ell^3 + 2 sign(k) sin(g) cos(g) = 0 (k, omega share sign).
inline std::pair<cplx, cplx> critical_l12(double omega, double gamma, double nu0, double kappa0) {
    const double A =
        std::cbrt(2.0 * std::sin(gamma) * std::cos(gamma) / (std::abs(omega) * (kappa0 + nu0)));
    return {A * std::polar(1.0, M_PI / 3.0), A * std::polar(1.0, -M_PI / 3.0)};
}

/// ell_3(theta): decaying root of kappa0 nu0 ell^2 + i omega (kappa0+nu0) = 0.
inline cplx critical_l3(double omega, double gamma, double nu0, double kappa0) {
    (void)gamma;
    const double A = std::sqrt(std::abs(omega) * (kappa0 + nu0) / (kappa0 * nu0));
    return A * std::polar(1.0, (omega >= 0.0 ? -1.0 : 1.0) * M_PI / 4.0);
}

/// Leading-order fast roots in the |omega| << 1 regime: nu0 kappa0 ell^4 + sin^2 g = 0.
inline std::pair<cplx, cplx> meanflow_l23_leading(double gamma, double nu0, double kappa0) {
    const double s = std::sin(gamma);
    const double A = std::pow(s * s / (nu0 * kappa0), 0.25);
    return {A * std::polar(1.0, M_PI / 4.0), A * std::polar(1.0, -M_PI / 4.0)};
}

/// Wavenumber floor eta_0 below which the critical-regime certification is
/// not guaranteed: (16 zeta0^2 (|w|(k0+n0))^{2/3} / (2^{2/3} |sg cg|^{5/3}))^{3/5}.
inline double critical_eta0(const CharPolyParams& p) {
    const double z0 = p.zeta() / std::cbrt(p.eps);
    const double sc = std::abs(std::sin(p.gamma) * std::cos(p.gamma));
    const double num = 16.0 * z0 * z0 * std::pow(std::abs(p.omega) * (p.kappa0 + p.nu0), 2.0 / 3.0);
    const double den = std::pow(2.0, 2.0 / 3.0) * std::pow(sc, 5.0 / 3.0);
    return std::pow(num / den, 3.0 / 5.0);
}

namespace detail {

inline void refine_and_certify(const CharPolyParams& p, RootTriple& t) {
    const auto coeffs = charpoly_coeff_vec(p);
    BruteForceRoots brute; // computed lazily, only on fallback
    bool have_brute = false;
    for (int j = 0; j < 3; ++j) {
        cplx x = newton_polish(coeffs, t.seed[j], 80);
        Certificate cert = newton_localize(coeffs, x);
        if (!cert.accepted || x.real() <= 0.0) {
            if (!have_brute) { brute = roots_bruteforce(p); have_brute = true; }
            cplx best = x;
            double bd = std::numeric_limits<double>::infinity();
            for (const auto& r : brute.roots) {
                if (r.real() <= 0.0) continue;
                const double d = std::abs(r - t.seed[j]);
                if (d < bd) { bd = d; best = r; }
            }
            x = best;
            cert = newton_localize(coeffs, x);
            t.fallback[j] = true;
        }
        t.lambda[j] = x;
        t.radius[j] = cert.accepted ? cert.radius : 0.0;
    }
}

[[noreturn]] inline void regime_fail(const std::string& what) {
    throw std::domain_error("asym_roots: regime hypothesis violated: " + what);
}

} // namespace detail

/// Critical regime: c0 eps^{1/3} < | |omega| - sin(gamma) | <= C0 eps^{1/3}.
/// lambda_{1,2} = eps^{-1/3} |k|^{1/3} ell_{1,2}, lambda_3 = eps^{-1/2} ell_3.
inline RootTriple asym_roots_critical(const CharPolyParams& p, const RegimeConfig& cfg = {}) {
    const double e13 = std::cbrt(p.eps);
    const double gap = std::abs(std::abs(p.omega) - std::sin(p.gamma));
    if (cfg.enforce) {
        if (!(gap > cfg.c0 * e13))
            detail::regime_fail("| |omega| - sin gamma | <= c0 eps^{1/3}");
        if (!(gap <= cfg.C0 * e13))
            detail::regime_fail("| |omega| - sin gamma | > C0 eps^{1/3}");
        if (!(std::abs(p.k) >= cfg.eta))
            detail::regime_fail("|k| < eta");
        if (cfg.sigma > 0.0 && !(std::abs(p.k) <= 1.0 / cfg.sigma))
            detail::regime_fail("|k| > 1/sigma");
    }
    RootTriple t;
    t.regime = Regime::critical;
    // Below eta0 the a-priori guarantee lapses; certification remains the gate.
    t.eta0_ok = std::abs(p.k) >= critical_eta0(p);
    const auto [l1, l2] = critical_l12(p.omega, p.gamma, p.nu0, p.kappa0);
    const cplx l3 = critical_l3(p.omega, p.gamma, p.nu0, p.kappa0);
    const double amp12 = std::pow(p.eps, -1.0 / 3.0) * std::cbrt(std::abs(p.k));
    t.seed[0] = amp12 * l1;
    t.seed[1] = amp12 * l2;
    t.seed[2] = std::pow(p.eps, -0.5) * l3;
    detail::refine_and_certify(p, t);
    return t;
}

namespace detail {

/// Slow-root seeds: the two roots of zeta l^2 - 2 i l sg cg + cg^2 - w^2 = 0,
/// i.e. l_pm = i (sg cg pm w sqrt(1-w^2)) / zeta; lambda = k * l.
inline std::pair<cplx, cplx> slow_seeds(const CharPolyParams& p) {
    const double sg = std::sin(p.gamma), cg = std::cos(p.gamma);
    const cplx rt = std::sqrt(cplx(1.0 - p.omega * p.omega));
    const cplx a = I * (sg * cg + p.omega * rt) / p.zeta();
    const cplx b = I * (sg * cg - p.omega * rt) / p.zeta();
    return {p.k * a, p.k * b};
}

/// Fast-root seeds eps^{-1/2} ell with kappa0 nu0 ell^4 + i w (kappa0+nu0) ell^2 - zeta = 0.
inline std::pair<cplx, cplx> fast_seeds(const CharPolyParams& p) {
    const double kn = p.kappa0 * p.nu0, ks = p.kappa0 + p.nu0;
    const cplx disc = std::sqrt(cplx(-p.omega * p.omega * ks * ks + 4.0 * kn * p.zeta()));
    const cplx l2a = (-I * p.omega * ks + disc) / (2.0 * kn);
    const cplx l2b = (-I * p.omega * ks - disc) / (2.0 * kn);
    std::array<cplx, 4> cand{std::sqrt(l2a), -std::sqrt(l2a), std::sqrt(l2b), -std::sqrt(l2b)};
    std::array<cplx, 2> pos{};
    int n = 0;
    for (const auto& l : cand)
        if (l.real() > 0.0 && n < 2) pos[n++] = l;
    if (n < 2) regime_fail("fast-root reduced equation has < 2 decaying solutions");
    const double amp = std::pow(p.eps, -0.5);
    return {amp * pos[0], amp * pos[1]};
}

inline RootTriple slow_fast_triple(const CharPolyParams& p, Regime reg) {
    RootTriple t;
    t.regime = reg;
    const auto [sa, sb] = slow_seeds(p);
    const auto coeffs = charpoly_coeff_vec(p);
    // Of the two slow candidates exactly one continues to a decaying root.
    cplx pick = sa;
    cplx xa = newton_polish(coeffs, sa, 80);
    if (xa.real() <= 0.0) {
        const cplx xb = newton_polish(coeffs, sb, 80);
        if (xb.real() > 0.0) pick = sb;
    }
    t.seed[0] = pick;
    const auto [f1, f2] = fast_seeds(p);
    t.seed[1] = f1;
    t.seed[2] = f2;
    refine_and_certify(p, t);
    return t;
}

} // namespace detail

/// Non-critical regime with |omega| << 1 (mean flow): lambda_1 ~ k-scale with
/// Re(lambda_1) = eps k^3 Re(l1'') > 0; lambda_{2,3} ~ eps^{-1/2}.
inline RootTriple asym_roots_meanflow(const CharPolyParams& p, const RegimeConfig& cfg = {}) {
    if (cfg.enforce) {
        if (!(std::abs(p.omega) <= cfg.C0 * std::cbrt(p.eps)))
            detail::regime_fail("|omega| > C0 eps^{1/3} (mean-flow regime needs omega ~ eps^{1/3})");
        if (cfg.sigma > 0.0 && !(std::abs(p.k) <= 1.0 / cfg.sigma))
            detail::regime_fail("|k| > 1/sigma");
    }
    return detail::slow_fast_triple(p, Regime::meanflow);
}

/// Non-critical regime with omega, zeta both O(1) (second harmonic).
/// When omega^2 > 1 the slow root is evanescent: Re(lambda_1) = O(|k|).
inline RootTriple asym_roots_secondharmonic(const CharPolyParams& p, const RegimeConfig& cfg = {}) {
    if (cfg.enforce) {
        if (!(std::abs(p.zeta()) > 0.05))
            detail::regime_fail("|zeta| too small (second-harmonic regime needs zeta ~ 1)");
        if (!(p.eps * p.k * p.k <= 0.3))
            detail::regime_fail("eps k^2 not small (needs mu < 1/2: eps|k|^2 <= eps^{1-2mu} << 1)");
    }
    return detail::slow_fast_triple(p, Regime::secondharmonic);
}

} // namespace beamlab
