// Characteristic polynomial of the boundary-layer ansatz exp(-iwt+ikx-Ly)
// and a brute-force root oracle (companion matrix + Newton polish, with an
// Aberth-Ehrlich iteration as an independent cross-check).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "beamlab/dispersion.hpp"

namespace beamlab {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

struct CharPolyParams {
    double omega = 0.0;
    double k = 0.0;
    double eps = 0.0;
    double nu0 = 1.0;
    double kappa0 = 1.0;
    double gamma = M_PI / 5.0;

    // zeta is always derived from (omega, gamma), never stored.
    double zeta() const { return criticality(omega, gamma); }
};

/// Coefficients of P(L), ascending in powers of L (degree 6):
///   P(L) = -eps^2 k0 n0 L^6 + (-i eps w (k0+n0) + 3 n0 k0 eps^2 k^2) L^4
///        + (zeta + 2i w (k0+n0) eps k^2 - 3 n0 k0 eps^2 k^4) L^2
///        - 2i L k sin(g) cos(g)
///        + k^2 (cos^2 g - w^2 - i eps w (n0+k0) k^2 + n0 k0 eps^2 k^4).
inline std::array<cplx, 7> charpoly_coeffs(const CharPolyParams& p) {
    const double e = p.eps, w = p.omega, k = p.k, n0 = p.nu0, k0 = p.kappa0;
    const double sg = std::sin(p.gamma), cg = std::cos(p.gamma);
    const double k2 = k * k, k4 = k2 * k2;
    std::array<cplx, 7> c{};
    c[6] = -e * e * k0 * n0;
    c[5] = 0.0;
    c[4] = -I * e * w * (k0 + n0) + 3.0 * n0 * k0 * e * e * k2;
    c[3] = 0.0;
    c[2] = p.zeta() + 2.0 * I * w * (k0 + n0) * e * k2 - 3.0 * n0 * k0 * e * e * k4;
    c[1] = -2.0 * I * k * sg * cg;
    c[0] = k2 * (cg * cg - w * w - I * e * w * (n0 + k0) * k2 + n0 * k0 * e * e * k4);
    return c;
}

inline cplx poly_eval(const std::vector<cplx>& c, cplx x) {
    cplx v = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) v = v * x + c[j];
    return v;
}

inline std::vector<cplx> poly_derivative(const std::vector<cplx>& c) {
    std::vector<cplx> d;
    if (c.size() <= 1) return {cplx(0.0)};
    d.resize(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = double(j) * c[j];
    return d;
}

/// Effective degree: trailing near-zero leading coefficients are dropped
/// relative to the largest coefficient magnitude.
inline int poly_degree(const std::vector<cplx>& c, double rel = 1e-300) {
    double m = 0.0;
    for (const auto& cj : c) m = std::max(m, std::abs(cj));
    if (m == 0.0) return -1;
    for (std::size_t j = c.size(); j-- > 0;)
        if (std::abs(c[j]) > rel * m) return int(j);
    return -1;
}

inline std::vector<cplx> charpoly_coeff_vec(const CharPolyParams& p) {
    auto a = charpoly_coeffs(p);
    return std::vector<cplx>(a.begin(), a.end());
}

inline cplx charpoly_eval(cplx lambda, const CharPolyParams& p) {
    return poly_eval(charpoly_coeff_vec(p), lambda);
}
inline cplx charpoly_eval_d1(cplx lambda, const CharPolyParams& p) {
    return poly_eval(poly_derivative(charpoly_coeff_vec(p)), lambda);
}
inline cplx charpoly_eval_d2(cplx lambda, const CharPolyParams& p) {
    return poly_eval(poly_derivative(poly_derivative(charpoly_coeff_vec(p))), lambda);
}

/// One Newton polish pass; stops early when the step stagnates.
inline cplx newton_polish(const std::vector<cplx>& c, cplx x, int iters = 40) {
    const auto d = poly_derivative(c);
    for (int it = 0; it < iters; ++it) {
        const cplx f = poly_eval(c, x);
        const cplx fp = poly_eval(d, x);
        if (fp == cplx(0.0)) break;
        const cplx step = f / fp;
        x -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    return x;
}

/// All roots of a complex polynomial (ascending coefficients) via the
/// companion matrix of the monic rescaled polynomial, then Newton polishing.
/// `scale` conditions the companion matrix: roots are computed for
/// q(z) = p(scale*z) and mapped back.
inline std::vector<cplx> poly_roots_companion(const std::vector<cplx>& coeffs, double scale = 1.0) {
    const int n = poly_degree(coeffs);
    if (n < 1) return {};
    std::vector<cplx> c(coeffs.begin(), coeffs.begin() + n + 1);
    if (scale != 1.0) {
        double f = 1.0;
        for (int j = 0; j <= n; ++j) { c[j] *= f; f *= scale; }
    }
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) A(j, n - 1) = -c[j] / c[n];
    for (int j = 1; j < n; ++j) A(j, j - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, /*computeEigenvectors=*/false);
    std::vector<cplx> roots(n);
    for (int j = 0; j < n; ++j) {
        cplx r = es.eigenvalues()(j) * scale;
        roots[j] = newton_polish(coeffs, r);
    }
    return roots;
}

/// Aberth-Ehrlich simultaneous iteration (independent cross-check oracle).
inline std::vector<cplx> poly_roots_aberth(const std::vector<cplx>& coeffs, double scale = 1.0,
                                           int max_iter = 200) {
    const int n = poly_degree(coeffs);
    if (n < 1) return {};
    std::vector<cplx> c(coeffs.begin(), coeffs.begin() + n + 1);
    const auto d = poly_derivative(c);
    std::vector<cplx> z(n);
    for (int j = 0; j < n; ++j) {
        const double ang = 2.0 * M_PI * (j + 0.35) / n; // deliberately asymmetric start
        z[j] = scale * std::polar(1.0 + 0.2 * j / double(n), ang);
    }
    for (int it = 0; it < max_iter; ++it) {
        double moved = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx f = poly_eval(c, z[j]);
            const cplx fp = poly_eval(d, z[j]);
            if (fp == cplx(0.0)) continue;
            const cplx ratio = f / fp;
            cplx sum = 0.0;
            for (int l = 0; l < n; ++l)
                if (l != j) sum += 1.0 / (z[j] - z[l]);
            const cplx step = ratio / (1.0 - ratio * sum);
            z[j] -= step;
            moved = std::max(moved, std::abs(step) / (1.0 + std::abs(z[j])));
        }
        if (moved < 1e-15) break;
    }
    for (auto& r : z) r = newton_polish(coeffs, r);
    return z;
}

struct BruteForceRoots {
    std::vector<cplx> roots; // all roots of P (6, or fewer for degenerate eps)
    int degree = 6;
    double max_residual = 0.0; // max |P(root)| / (maxcoef * max(1,|root|)^deg)
};

/// Roots of the characteristic polynomial. For eps > 0 the degree-6
/// polynomial is rescaled by max(eps^{-1/3}|k|^{1/3}, eps^{-1/2}) before the
/// companion solve; for eps = 0 the reduced (quadratic) polynomial is solved
/// and the degree reported.
inline BruteForceRoots roots_bruteforce(const CharPolyParams& p) {
    const auto c = charpoly_coeff_vec(p);
    BruteForceRoots out;
    out.degree = poly_degree(c);
    double scale = 1.0;
    if (p.eps > 0.0) {
        const double ak = std::max(std::abs(p.k), 1.0);
        scale = std::max(std::pow(p.eps, -1.0 / 3.0) * std::cbrt(ak), std::pow(p.eps, -0.5));
    }
    out.roots = poly_roots_companion(c, scale);
    double maxc = 0.0;
    for (const auto& cj : c) maxc = std::max(maxc, std::abs(cj));
    for (const auto& r : out.roots) {
        const double den = maxc * std::pow(std::max(1.0, std::abs(r)), out.degree);
        out.max_residual = std::max(out.max_residual, std::abs(poly_eval(c, r)) / den);
    }
    return out;
}

/// Number of roots with Re > tol, tol = 1e-10 * max |root|.
inline int count_decaying_roots(const std::vector<cplx>& roots) {
    double m = 0.0;
    for (const auto& r : roots) m = std::max(m, std::abs(r));
    const double tol = 1e-10 * m;
    int n = 0;
    for (const auto& r : roots)
        if (r.real() > tol) ++n;
    return n;
}

} // namespace beamlab
