// Certified Newton localization: if |g(u0)| <= |g'(u0)|^2 / (4 sup |g''|),
// with the sup taken over the disk |v| <= 2|g(u0)|/|g'(u0)| around u0, then g
// has a unique root within radius 2|g(u0)|/|g'(u0)| of u0.
#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "beamlab/charpoly.hpp"

namespace beamlab {

struct Certificate {
    bool accepted = false;
    cplx root{};       // u0 itself; the certified disk is |z - root| <= radius
    double radius = 0.0;
    double lhs = 0.0;  // |g(u0)|
    double rhs = 0.0;  // |g'(u0)|^2 / (4 sup |g''|)
    std::string reason;
};

/// Majorant for sup_{|v| <= rho} |g''(u0 + v)| via coefficient moduli:
/// sum_j |c''_j| (|u0| + rho)^j — rigorous up to floating-point rounding.
inline double second_derivative_majorant(const std::vector<cplx>& g, cplx u0, double rho) {
    const auto g2 = poly_derivative(poly_derivative(g));
    const double R = std::abs(u0) + rho;
    double s = 0.0, pw = 1.0;
    for (const auto& cj : g2) { s += std::abs(cj) * pw; pw *= R; }
    return s;
}

/// Attempts to certify a root of g near u0. On success the returned disk
/// (root, radius) contains exactly one root of g.
inline Certificate newton_localize(const std::vector<cplx>& g, cplx u0) {
    Certificate cert;
    cert.root = u0;
    const cplx gv = poly_eval(g, u0);
    const cplx gp = poly_eval(poly_derivative(g), u0);
    cert.lhs = std::abs(gv);
    if (gv == cplx(0.0)) { // exact root: radius 0
        cert.accepted = true;
        cert.radius = 0.0;
        cert.rhs = std::numeric_limits<double>::infinity();
        return cert;
    }
    if (gp == cplx(0.0)) {
        cert.reason = "g'(u0) = 0";
        return cert;
    }
    const double r = std::abs(gv) / std::abs(gp);
    const double sup2 = second_derivative_majorant(g, u0, 2.0 * r);
    if (sup2 == 0.0) { // g'' vanishes identically: condition vacuous
        cert.accepted = true;
        cert.radius = 2.0 * r;
        cert.rhs = std::numeric_limits<double>::infinity();
        return cert;
    }
    cert.rhs = std::norm(gp) / (4.0 * sup2);
    if (cert.lhs <= cert.rhs) {
        cert.accepted = true;
        cert.radius = 2.0 * r;
    } else {
        cert.reason = "hypothesis |g| <= |g'|^2/(4 sup|g''|) fails";
    }
    return cert;
}

} // namespace beamlab
