// Compactly supported spectral amplitudes: radial cutoff in sigma|k| times
// two angular bump lobes of width ~eps^{1/3} around gamma and gamma+pi,
// carrying an order prefactor eps^p |k|^q.
#pragma once

#include <cmath>

#include "beamlab/bump.hpp"
#include "beamlab/phys.hpp"

namespace beamlab {

struct SpectralAmplitude {
    double eps = 1e-4;
    double sigma = 0.5;
    double gamma = M_PI / 5.0;
    double eta = 1.0;     // integration floor in |k|
    double order_p = 0.0; // prefactor eps^p
    double order_q = 0.0; // prefactor |k|^q
    bool lobe_plus = true;   // theta ~ gamma
    bool lobe_minus = true;  // theta ~ gamma + pi

    double angular(double theta) const {
        const double e13 = std::cbrt(eps);
        const double s = std::sin(theta), c = std::cos(theta);
        const double sg = std::sin(gamma), cg = std::cos(gamma);
        double v = 0.0;
        if (lobe_plus) v += chi_angular((s - sg) / e13) * chi_angular((c - cg) / e13);
        if (lobe_minus) v += chi_angular((s + sg) / e13) * chi_angular((c + cg) / e13);
        return v;
    }

    double radial(double kmod) const { return kmod < eta ? 0.0 : chi_radial(sigma * kmod); }

    /// Psi-hat(|k|, theta) including the order prefactor; 0 off support.
    double operator()(double kmod, double theta) const {
        const double r = radial(kmod);
        if (r == 0.0) return 0.0;
        const double a = angular(theta);
        if (a == 0.0) return 0.0;
        return r * a * std::pow(eps, order_p) * std::pow(kmod, order_q);
    }

    /// Radial support [max(eta, 1/(2 sigma)), 2/sigma].
    std::pair<double, double> radial_support() const {
        return {std::max(eta, 0.5 / sigma), 2.0 / sigma};
    }

    /// Angular support half-widths (below, above) around gamma for the plus
    /// lobe; the minus lobe mirrors them around gamma + pi.
    std::pair<double, double> angular_support() const {
        const double e13 = std::cbrt(eps);
        const double sg = std::sin(gamma), cg = std::cos(gamma);
        auto clamp1 = [](double v) { return std::min(1.0, std::max(-1.0, v)); };
        const double up = std::min(std::asin(clamp1(sg + e13)) - gamma,
                                   std::acos(clamp1(cg - e13)) - gamma);
        const double dn = std::min(gamma - std::asin(clamp1(sg - e13)),
                                   gamma - std::acos(clamp1(cg + e13)));
        return {dn, up};
    }

    static SpectralAmplitude from(const PhysParams& p, double order_p = 0.0,
                                  double order_q = 0.0) {
        SpectralAmplitude a;
        a.eps = p.eps;
        a.sigma = p.sigma;
        a.gamma = p.gamma;
        a.eta = p.eta;
        a.order_p = order_p;
        a.order_q = order_q;
        return a;
    }
};

} // namespace beamlab
