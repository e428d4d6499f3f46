// Smooth compactly supported cutoff profiles and window functions.
#pragma once

#include <cmath>

namespace beamlab {

/// Standard C-infinity bump: exp(1 - 1/(1-s^2)) on |s|<1, 0 outside.
/// Normalized so bump(0) = 1.
inline double bump(double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s2));
}

inline double bump_d1(double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    const double d = 1.0 - s2;
    return bump(s) * (-2.0 * s / (d * d));
}

/// Radial cutoff chi(u): bump supported on u in [1/2, 2], peak at u = 5/4.
inline double chi_radial(double u) { return bump((u - 1.25) / 0.75); }

/// Angular cutoff chi'(s): bump supported on |s| <= 1.
inline double chi_angular(double s) { return bump(s); }

/// C^2 smoothstep rising 0 -> 1 over [a, b].
inline double smoothstep(double x, double a, double b) {
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    const double t = (x - a) / (b - a);
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

/// Smooth plateau window on [lo, hi], tapering to 0 over margin w at both ends.
inline double taper_window(double x, double lo, double hi, double w) {
    return smoothstep(x, lo, lo + w) * (1.0 - smoothstep(x, hi - w, hi));
}

} // namespace beamlab
