// Boundary lifting: solve for the three boundary-layer amplitudes that cancel
// a given (u, w, d_y b) trace at y = 0.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "beamlab/asym_roots.hpp"
#include "beamlab/eigenvectors.hpp"

namespace beamlab {

struct LiftCoefficients {
    std::array<cplx, 3> a{};       // amplitudes attached to lambda_1..3
    std::array<ModeVector, 3> X{}; // the corresponding eigenvectors
    double solve_residual = 0.0;   // relative residual of the 3x3 solve
    double condition = 0.0;        // condition estimate after row scaling
};

/// Rows of the lift matrix M: (U_{Lj}), (W_{Lj}), (-Lj B_{Lj}); the third row
/// carries -lambda_j so the no-flux condition d_y b|_{y=0} is encoded.
inline Eigen::Matrix3cd lift_matrix(const std::array<cplx, 3>& lambda,
                                    const std::array<ModeVector, 3>& X) {
    Eigen::Matrix3cd M;
    for (int j = 0; j < 3; ++j) {
        M(0, j) = X[j].U;
        M(1, j) = X[j].W;
        M(2, j) = -lambda[j] * X[j].B;
    }
    return M;
}

/// Solves M a = -trace, trace = (u, w, d_y b)|_{y=0} of the field being
/// lifted, so that the total trace of field + lifted layers vanishes.
/// Rows are equilibrated before the solve (they span eps^{-1/3}..eps^{-5/6}).
inline LiftCoefficients lift_boundary(const std::array<cplx, 3>& trace,
                                      const RootTriple& roots, double k, double omega_val,
                                      const PhysParams& p) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(roots.lambda[i] - roots.lambda[j]) <=
                roots.radius[i] + roots.radius[j])
                throw std::domain_error("lift_boundary: certified roots not pairwise distinct");

    LiftCoefficients out;
    for (int j = 0; j < 3; ++j) out.X[j] = eigenvector_bl(k, roots.lambda[j], omega_val, p);
    Eigen::Matrix3cd M = lift_matrix(roots.lambda, out.X);
    Eigen::Vector3cd rhs;
    rhs << -trace[0], -trace[1], -trace[2];

    // Row equilibration.
    Eigen::Vector3d rs;
    for (int i = 0; i < 3; ++i) {
        rs(i) = M.row(i).cwiseAbs().maxCoeff();
        if (rs(i) == 0.0) rs(i) = 1.0;
        M.row(i) /= rs(i);
        rhs(i) /= rs(i);
    }
    Eigen::JacobiSVD<Eigen::Matrix3cd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.condition = svd.singularValues()(0) / svd.singularValues()(2);
    if (!(out.condition < 1e12))
        throw std::runtime_error("lift_boundary: lift matrix ill-conditioned (cond = " +
                                 std::to_string(out.condition) + ")");
    const Eigen::Vector3cd a = svd.solve(rhs);
    const double rn = rhs.norm();
    out.solve_residual = rn > 0.0 ? (M * a - rhs).norm() / rn : (M * a).norm();
    for (int j = 0; j < 3; ++j) out.a[j] = a(j);
    return out;
}

/// Leading-order amplitude sizes from the explicit inverse of M:
/// |a_1|, |a_2| ~ eps^{-1/3} |k|^{-2/3}, |a_3| ~ eps^{-1/6} |k|^{-1/3}.
inline std::array<double, 3> lift_amplitude_orders(double eps, double kmod) {
    const double a12 = std::pow(eps, -1.0 / 3.0) * std::pow(kmod, -2.0 / 3.0);
    const double a3 = std::pow(eps, -1.0 / 6.0) * std::pow(kmod, -1.0 / 3.0);
    return {a12, a12, a3};
}

/// det M recomputed from the leading-order expansion sum_{i != j} O(k Li/Lj);
/// used as a ratio check against the exact determinant.
inline double lift_det_leading(double k, const std::array<cplx, 3>& lambda) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) s += std::abs(k) * std::abs(lambda[i]) / std::abs(lambda[j]);
    return s;
}

} // namespace beamlab
