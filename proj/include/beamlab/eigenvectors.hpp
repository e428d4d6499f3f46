// Eigenvectors of the linearized system for interior (oscillatory) and
// boundary-layer (decaying) modes, plus the 4x4 system matrix used as the
// kernel-residual oracle.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "beamlab/charpoly.hpp"
#include "beamlab/phys.hpp"

namespace beamlab {

/// Amplitudes of (u, w, b, p) for a single mode.
struct ModeVector {
    cplx U{}, W{}, B{}, P{};
};

/// Interior eigenvector X_{k,m} = (1, -k/m, i(k cg - m sg)/(m w), p-entry).
inline ModeVector eigenvector_interior(const Wavevector& kv, double omega_val, double gamma) {
    if (kv.m == 0.0) throw std::domain_error("eigenvector_interior: m = 0");
    if (kv.k == 0.0) throw std::domain_error("eigenvector_interior: k = 0");
    if (omega_val == 0.0) throw std::domain_error("eigenvector_interior: omega = 0");
    const double cg = std::cos(gamma), sg = std::sin(gamma);
    const double q = (kv.k * cg - kv.m * sg) / (kv.m * omega_val);
    ModeVector X;
    X.U = 1.0;
    X.W = -kv.k / kv.m;
    X.B = I * q;
    X.P = (omega_val + sg * q) / kv.k;
    return X;
}

/// Boundary-layer eigenvector X_{k,L} for the ansatz exp(-iwt+ikx-Ly):
/// (1, ik/L, (L sg + ik cg)/(L(iw + eps kappa0 (L^2-k^2))), p-entry).
inline ModeVector eigenvector_bl(double k, cplx lambda, double omega_val, const PhysParams& p) {
    if (lambda == cplx(0.0)) throw std::domain_error("eigenvector_bl: lambda = 0");
    if (k == 0.0) throw std::domain_error("eigenvector_bl: k = 0");
    const double sg = std::sin(p.gamma), cg = std::cos(p.gamma);
    const cplx dker = I * omega_val + p.eps * p.kappa0 * (lambda * lambda - k * k);
    if (std::abs(dker) == 0.0) throw std::domain_error("eigenvector_bl: vanishing b-denominator");
    ModeVector X;
    X.U = 1.0;
    X.W = I * k / lambda;
    X.B = (lambda * sg + I * k * cg) / (lambda * dker);
    X.P = (I * omega_val + p.eps * p.nu0 * (lambda * lambda - k * k) + sg * X.B) / (I * k);
    return X;
}

/// 4x4 matrix of the linearized system applied to exp(-iwt+ikx-Ly)(U,W,B,P):
/// rows are the u, w, b momentum/buoyancy equations and the divergence.
/// det A_eps is proportional to the characteristic polynomial.
inline Eigen::Matrix4cd system_matrix(double omega_val, double kappa0, double nu0, double k,
                                      cplx lambda, double eps, double gamma) {
    const double sg = std::sin(gamma), cg = std::cos(gamma);
    const cplx lap = lambda * lambda - k * k; // Laplacian symbol on exp(ikx-Ly)
    Eigen::Matrix4cd A = Eigen::Matrix4cd::Zero();
    // u: -iw U - sg B + ik P - eps nu0 lap U = 0
    A(0, 0) = -I * omega_val - eps * nu0 * lap;
    A(0, 2) = -sg;
    A(0, 3) = I * k;
    // w: -iw W - cg B - lambda P - eps nu0 lap W = 0
    A(1, 1) = -I * omega_val - eps * nu0 * lap;
    A(1, 2) = -cg;
    A(1, 3) = -lambda;
    // b: -iw B + sg U + cg W - eps kappa0 lap B = 0
    A(2, 0) = sg;
    A(2, 1) = cg;
    A(2, 2) = -I * omega_val - eps * kappa0 * lap;
    // divergence: ik U - lambda W = 0
    A(3, 0) = I * k;
    A(3, 1) = -lambda;
    return A;
}

/// ||A X|| / (||A|| ||X||) — the kernel residual of a candidate mode.
inline double kernel_residual(double omega_val, double k, cplx lambda, const PhysParams& p,
                              const ModeVector& X) {
    const Eigen::Matrix4cd A = system_matrix(omega_val, p.kappa0, p.nu0, k, lambda, p.eps, p.gamma);
    Eigen::Vector4cd v;
    v << X.U, X.W, X.B, X.P;
    const double nA = A.norm(), nv = v.norm();
    if (nA == 0.0 || nv == 0.0) return 0.0;
    return (A * v).norm() / (nA * nv);
}

} // namespace beamlab
