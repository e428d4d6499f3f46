// Physical parameter set for the rotated Boussinesq half-plane problem.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace beamlab {

/// Parameter tuple (eps, sigma, delta, nu0, kappa0, gamma, eta, mu, x0).
/// The effective viscosity/diffusivity are always nu = eps*nu0 and
/// kappa = eps*kappa0; they are never stored independently.
struct PhysParams {
    double eps = 1e-4;      // singular parameter in (0,1)
    double sigma = 0.5;     // beam spectral concentration scale in (0,1)
    double delta = 0.0;     // weak-nonlinearity amplitude, >= 0
    double nu0 = 1.0;       // viscosity prefactor, > 0
    double kappa0 = 1.0;    // diffusivity prefactor, > 0
    double gamma = M_PI / 5.0;  // slope angle, radians, in (0, pi/2)
    double eta = 1.0;       // wavenumber floor, > 0
    double mu = 0.120;      // spreading exponent in (0, 1/8)
    double x0 = 0.0;        // beam anchor abscissa
    double delta_cap = 4.0; // C in delta <= C * sigma^{2/3} * eps^{1/2}

    double nu() const { return eps * nu0; }
    double kappa() const { return eps * kappa0; }

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const {
        auto fail = [](const std::string& msg) { throw std::invalid_argument("PhysParams: " + msg); };
        if (!(eps > 0.0 && eps < 1.0)) fail("eps must lie in (0,1)");
        if (!(sigma > 0.0 && sigma < 1.0)) fail("sigma must lie in (0,1)");
        if (!(gamma > 0.0 && gamma < M_PI / 2.0))
            fail("gamma must lie in (0, pi/2): vertical propagation and flat bottom are excluded");
        if (!(nu0 > 0.0)) fail("nu0 must be positive");
        if (!(kappa0 > 0.0)) fail("kappa0 must be positive");
        if (!(eta > 0.0)) fail("eta must be positive");
        if (!(mu > 0.0 && mu < 0.125)) fail("mu must lie in (0, 1/8)");
        if (!(sigma > std::pow(eps, mu)))
            fail("admissible range requires sigma > eps^mu (got sigma = " + std::to_string(sigma) +
                 ", eps^mu = " + std::to_string(std::pow(eps, mu)) + ")");
        if (!(delta >= 0.0)) fail("delta must be nonnegative");
        if (delta > delta_cap * std::pow(sigma, 2.0 / 3.0) * std::sqrt(eps))
            fail("admissible range requires delta = O(sigma^{2/3} eps^{1/2})");
    }

    bool valid() const {
        try { validate(); return true; } catch (const std::invalid_argument&) { return false; }
    }

    /// Stability-threshold nonlinearity: delta = eps^{1/2} sigma^{2/3}.
    static double delta_star(double eps, double sigma) {
        return std::sqrt(eps) * std::pow(sigma, 2.0 / 3.0);
    }
};

} // namespace beamlab
