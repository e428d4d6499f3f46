// Coordinate rotations, the anisotropic internal-wave dispersion relation,
// incidence branch selection, and the criticality parameter.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

namespace beamlab {

/// Rotation of (x1, x2) by `angle`: x = x1 cos + x2 sin, y = -x1 sin + x2 cos.
inline std::pair<double, double> rotate_coords(double x1, double x2, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {x1 * c + x2 * s, -x1 * s + x2 * c};
}

enum class Branch { plus, minus };

/// Wavenumber in the slope-aligned frame. Polar convention:
/// k = |k| sin(theta+gamma), m = |k| cos(theta+gamma), so that
/// exp(ikx+imy) = exp(i|k|(x sin(theta+gamma) + y cos(theta+gamma))).
struct Wavevector {
    double k = 0.0; // along-slope
    double m = 0.0; // slope-normal

    static Wavevector from_polar(double kmod, double theta, double gamma) {
        return {kmod * std::sin(theta + gamma), kmod * std::cos(theta + gamma)};
    }
    double kmod() const { return std::hypot(k, m); }
    /// Inclination angle theta in [0, 2*pi).
    double theta(double gamma) const {
        double t = std::atan2(k, m) - gamma;
        while (t < 0.0) t += 2.0 * M_PI;
        while (t >= 2.0 * M_PI) t -= 2.0 * M_PI;
        return t;
    }
};

/// omega_pm = +-(k cos(gamma) - m sin(gamma)) / |k|. In polar form
/// omega_plus(|k|, theta) = sin(theta). Throws on a zero wavevector.
inline double omega(const Wavevector& kv, double gamma, Branch branch = Branch::plus) {
    const double r = kv.kmod();
    if (r == 0.0) throw std::domain_error("omega: zero wavevector");
    const double w = (kv.k * std::cos(gamma) - kv.m * std::sin(gamma)) / r;
    return branch == Branch::plus ? w : -w;
}

/// Gradient of omega_pm with respect to (k, m); the vertical component has
/// the closed form -+ k (m cos(gamma) + k sin(gamma)) / |k|^3.
inline std::pair<double, double> group_velocity(const Wavevector& kv, double gamma,
                                                Branch branch = Branch::plus) {
    const double r = kv.kmod();
    if (r == 0.0) throw std::domain_error("group_velocity: zero wavevector");
    const double w = omega(kv, gamma, Branch::plus);
    const double gk = std::cos(gamma) / r - w * kv.k / (r * r);
    const double gm = -std::sin(gamma) / r - w * kv.m / (r * r);
    return branch == Branch::plus ? std::make_pair(gk, gm) : std::make_pair(-gk, -gm);
}

/// Incidence condition: the unique branch with grad(omega) . (0,1) < 0.
/// Returns the signed frequency of that branch, or nullopt when the vertical
/// group velocity degenerates (|grad omega . e2| < tol, or omega = 0 where the
/// two branches coincide and no sign can be picked).
inline std::optional<double> incident_branch(const Wavevector& kv, double gamma,
                                             double tol = 1e-12) {
    const double w = omega(kv, gamma, Branch::plus);
    const double gv2 = group_velocity(kv, gamma, Branch::plus).second;
    if (std::abs(w) < tol || std::abs(gv2) < tol) return std::nullopt;
    return gv2 < 0.0 ? w : -w;
}

/// Criticality parameter zeta = omega^2 - sin^2(gamma).
inline double criticality(double omega_val, double gamma) {
    const double s = std::sin(gamma);
    return omega_val * omega_val - s * s;
}

} // namespace beamlab
