// Localization diagnostics: energy fraction outside the reflection cones and
// boundary-layer energy above a height threshold.
#pragma once

#include <cmath>
#include <vector>

#include "beamlab/grid.hpp"
#include "beamlab/phys.hpp"

namespace beamlab {

/// C = C+ u C-: |(x-x0) sin(a) + y cos(a)| <= sigma^{1-rho}, a = 2g + tilt.
/// (The two cones coincide as sets; the tilt defaults to the printed
/// eps^{1/2-rho} value and can be switched off.)
struct ConeSpec {
    double half_width = 0.0;
    double angle = 0.0;
    double x0 = 0.0;

    static ConeSpec from(const PhysParams& p, double rho, bool tilted) {
        ConeSpec c;
        c.half_width = std::pow(p.sigma, 1.0 - rho);
        c.angle = 2.0 * p.gamma + (tilted ? std::pow(p.eps, 0.5 - rho) : 0.0);
        c.x0 = p.x0;
        return c;
    }
    bool inside(double x, double y) const {
        return std::abs((x - x0) * std::sin(angle) + y * std::cos(angle)) <= half_width;
    }
};

/// ||field||^2_{L2(outside C)} / ||field||^2_{L2}.
inline double cone_energy_fraction(const GridField& f, const ConeSpec& cone) {
    double out = 0.0, tot = 0.0;
    const double dx = f.g.dx();
    for (std::size_t q = 0; q < 3; ++q)
        for (std::size_t j = 0; j < f.g.ny(); ++j)
            for (std::size_t i = 0; i < f.g.nx(); ++i) {
                const double e = std::norm(f.c[q][j * f.g.nx() + i]) * f.g.wy[j] * dx;
                tot += e;
                if (!cone.inside(f.g.x[i], f.g.y[j])) out += e;
            }
    return tot > 0.0 ? out / tot : 0.0;
}

/// ||field||_{L2; y > y0} / ||field||_{L2} (norm ratio, not squared).
inline double strip_norm_fraction(const GridField& f, double y0) {
    double above = 0.0, tot = 0.0;
    const double dx = f.g.dx();
    for (std::size_t q = 0; q < 3; ++q)
        for (std::size_t j = 0; j < f.g.ny(); ++j) {
            double row = 0.0;
            for (std::size_t i = 0; i < f.g.nx(); ++i) row += std::norm(f.c[q][j * f.g.nx() + i]);
            row *= f.g.wy[j] * dx;
            tot += row;
            if (f.g.y[j] > y0) above += row;
        }
    return tot > 0.0 ? std::sqrt(above / tot) : 0.0;
}

} // namespace beamlab
