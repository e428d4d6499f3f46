// Quadratic convection Q(W, W') = P (u dx + w dy) W'. Two routes:
//  - modal: pairwise products with the exact half-plane projection (used in
//    residual assembly, where cancellations must be exact);
//  - grid: pointwise products of evaluated factors, spectral-x / odd-even-y
//    projection (used for the interaction-size table).
#pragma once

#include <array>
#include <cmath>

#include "beamlab/beams.hpp"
#include "beamlab/modal.hpp"

namespace beamlab {

/// Pairwise advection (u_l dx + w_l dy) W_r as a modal field; project = true
/// applies the exact Leray projection mode by mode.
inline ModeSum convection_modal(const ModeSum& left, const ModeSum& right, bool project = true) {
    ModeSum out(left.modes.empty() ? right.x0 : left.x0);
    out.modes.reserve(left.modes.size() * right.modes.size());
    for (const auto& a : left.modes)
        for (const auto& b : right.modes) {
            const cplx S = a.U * (I * b.k) + a.W * b.rho; // advection scalar
            Mode m;
            m.amp = a.amp * b.amp * S;
            m.k = a.k + b.k;
            m.rho = a.rho + b.rho;
            m.Omega = a.Omega + b.Omega;
            m.U = b.U;
            m.W = b.W;
            m.B = b.B;
            out.modes.push_back(m);
        }
    return project ? out.leray_project() : out;
}

/// Grid route: evaluate the advecting velocity and the (exact) derivatives of
/// the advected field, multiply pointwise, window in x, project.
inline GridField convection_grid(const ModeSum& left, const ModeSum& right, const Grid& g,
                                 double t, bool project = true, bool window = true) {
    const auto lf = left.evaluate(g, t);
    const auto rx = right.dx().evaluate(g, t);
    const auto ry = right.dy().evaluate(g, t);
    GridField out(g, t);
    for (int q = 0; q < 3; ++q)
        for (std::size_t n = 0; n < out.c[q].size(); ++n)
            out.c[q][n] = lf.c[0][n] * rx.c[q][n] + lf.c[1][n] * ry.c[q][n];
    if (window) out.window_x();
    if (!project) return out;
    if (out.g.ny() >= 2) {
        // taper the top if the product has not decayed there
        out.window_y_top(0.12);
    }
    return leray_project_grid(out);
}

/// Uniform grid sized for a product of two modal factors: the spacing
/// resolves the fastest layer of either factor, the extent the slowest decay
/// of the product (or the beam box when neither factor decays).
inline Grid interaction_grid(const PhysParams& p, const ModeSum& l, const ModeSum& r,
                             std::size_t max_nx = 1024, std::size_t max_ny = 2048) {
    const auto box = beam_window(p);
    const double rho_max = std::max(l.max_abs_re_rho(), r.max_abs_re_rho());
    const double decay_l = l.min_abs_re_rho_decaying();
    const double decay_r = r.min_abs_re_rho_decaying();
    double y_max = box.y_hi;
    const double slow =
        (std::isfinite(decay_l) ? decay_l : 0.0) + (std::isfinite(decay_r) ? decay_r : 0.0);
    if (slow > 0.0) y_max = std::min(y_max, 9.0 / slow);
    double dy = p.sigma / 8.0;
    if (rho_max > 0.0) dy = std::min(dy, 1.0 / (8.0 * rho_max));
    const double im_max = std::max(l.max_abs_im_rho(), r.max_abs_im_rho());
    if (im_max > 0.0) dy = std::min(dy, M_PI / (2.0 * im_max));
    std::size_t ny = std::size_t(std::ceil(y_max / dy)) + 1;
    if (ny > max_ny) ny = max_ny;
    const double dx = p.sigma / 8.0;
    std::size_t nx = std::size_t(std::ceil((box.x_hi - box.x_lo) / dx)) + 1;
    if (nx > max_nx) nx = max_nx;
    return Grid(uniform_nodes(box.x_lo, box.x_hi, nx), uniform_nodes(0.0, y_max, ny));
}

struct InteractionRow {
    const char* label;
    int left;  // 0 = incident, 1 = BL eps^{1/3}, 2 = BL eps^{1/2}
    int right;
    double eps_slope;
    double sigma_slope;
    const char* decay;
};

/// The nine quadratic interactions of W0 with their predicted L2 exponents.
inline std::array<InteractionRow, 9> table1() {
    return {{{"a1", 1, 1, -1.0 / 6.0, -7.0 / 6.0, "eps^{-1/3}"},
             {"a2", 0, 1, -1.0 / 6.0, -7.0 / 6.0, "eps^{-1/3}"},
             {"b1", 1, 2, -1.0 / 12.0, -7.0 / 6.0, "eps^{-1/2}"},
             {"b2", 0, 2, -1.0 / 12.0, -7.0 / 6.0, "eps^{-1/2}"},
             {"c1", 0, 0, 1.0 / 6.0, -2.0, "none"},
             {"c2", 1, 0, 1.0 / 6.0, -11.0 / 6.0, "eps^{-1/3}"},
             {"d1", 2, 1, 1.0 / 4.0, -11.0 / 6.0, "eps^{-1/2}"},
             {"d2", 2, 2, 1.0 / 4.0, -11.0 / 6.0, "eps^{-1/2}"},
             {"d3", 2, 0, 5.0 / 12.0, -13.0 / 6.0, "none"}}};
}

inline const ModeSum& w0_part(const W0Parts& w0, int which) {
    return which == 0 ? w0.inc : which == 1 ? w0.bl13 : w0.bl12;
}

/// Measured L2 of one table row at the given parameters.
inline double interaction_l2(const PhysParams& p, const W0Parts& w0, const InteractionRow& row,
                             double t = 0.0) {
    const auto& l = w0_part(w0, row.left);
    const auto& r = w0_part(w0, row.right);
    const Grid g = interaction_grid(p, l, r);
    return convection_grid(l, r, g, t).l2();
}

} // namespace beamlab
