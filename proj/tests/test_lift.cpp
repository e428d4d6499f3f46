#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "beamlab/lift.hpp"
#include "beamlab/sweep.hpp"

using namespace beamlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct LiftedNode {
    CharPolyParams cp;
    RootTriple roots;
    LiftCoefficients lift;
    ModeVector Xinc;
    double m = 0.0;
};

// Build the boundary lift for one incident spectral node (kmod, theta).
LiftedNode lift_node(const PhysParams& pp, double kmod, double theta) {
    LiftedNode n;
    const auto kv = Wavevector::from_polar(kmod, theta, pp.gamma);
    const double w = *incident_branch(kv, pp.gamma);
    n.m = kv.m;
    n.cp.eps = pp.eps;
    n.cp.nu0 = pp.nu0;
    n.cp.kappa0 = pp.kappa0;
    n.cp.gamma = pp.gamma;
    n.cp.omega = w;
    n.cp.k = kv.k;
    RegimeConfig cfg;
    cfg.eta = 0.0;
    cfg.enforce = false;
    n.roots = asym_roots_critical(n.cp, cfg);
    n.Xinc = eigenvector_interior(kv, w, pp.gamma);
    // trace = (u, w, d_y b) of the incident mode at y = 0
    const std::array<cplx, 3> trace{n.Xinc.U, n.Xinc.W, I * kv.m * n.Xinc.B};
    n.lift = lift_boundary(trace, n.roots, kv.k, w, pp);
    return n;
}

PhysParams base_params(double eps) {
    PhysParams pp;
    pp.eps = eps;
    pp.sigma = 0.5;
    pp.gamma = M_PI / 5;
    return pp;
}

} // namespace

TEST_CASE("BL eigenvector identities", "[lift]") {
    PhysParams pp = base_params(1e-6);
    const double theta = pp.gamma + std::cbrt(pp.eps);
    const auto kv = Wavevector::from_polar(3.0, theta, pp.gamma);
    const double w = *incident_branch(kv, pp.gamma);
    CharPolyParams cp{w, kv.k, pp.eps, pp.nu0, pp.kappa0, pp.gamma};
    RegimeConfig cfg;
    cfg.enforce = false;
    const auto roots = asym_roots_critical(cp, cfg);
    for (int j = 0; j < 3; ++j) {
        const auto X = eigenvector_bl(kv.k, roots.lambda[j], w, pp);
        // W entry equals ik/lambda exactly; BL divergence cancels exactly
        CHECK(X.W == I * kv.k / roots.lambda[j]);
        CHECK_THAT(std::abs(I * kv.k * X.U - roots.lambda[j] * X.W), WithinAbs(0.0, 1e-15));
        // kernel residual against the assembled 4x4 system
        CHECK(kernel_residual(w, kv.k, roots.lambda[j], pp, X) <= 1e-8);
    }
}

TEST_CASE("BL eigenvector kernel residual over 100 critical samples", "[lift]") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> uk(1.5, 6.0), ue(-7.0, -4.0), ut(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        PhysParams pp = base_params(std::pow(10.0, ue(rng)));
        const double theta = pp.gamma + 0.9 * ut(rng) * std::cbrt(pp.eps);
        const auto kv = Wavevector::from_polar(uk(rng), theta, pp.gamma);
        const double w = *incident_branch(kv, pp.gamma);
        CharPolyParams cp{w, kv.k, pp.eps, pp.nu0, pp.kappa0, pp.gamma};
        RegimeConfig cfg;
        cfg.enforce = false;
        const auto roots = asym_roots_critical(cp, cfg);
        for (int j = 0; j < 3; ++j) {
            const auto X = eigenvector_bl(kv.k, roots.lambda[j], w, pp);
            CHECK(kernel_residual(w, kv.k, roots.lambda[j], pp, X) <= 1e-8);
        }
    }
}

TEST_CASE("interior eigenvector identities", "[lift]") {
    const auto X = eigenvector_interior({1.0, 1.0}, 1.0 / std::sqrt(2.0), 0.0);
    CHECK_THAT(std::abs(X.W - cplx(-1.0)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(X.B - I * std::sqrt(2.0)), WithinAbs(0.0, 1e-14));
    // divergence and the B*omega identity on random inputs
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(-4, 4), ug(0.05, 1.5);
    for (int i = 0; i < 100; ++i) {
        Wavevector kv{u(rng), u(rng)};
        if (std::abs(kv.k) < 0.1 || std::abs(kv.m) < 0.1) continue;
        const double g = ug(rng);
        const double w = omega(kv, g);
        if (std::abs(w) < 1e-3) continue;
        const auto Y = eigenvector_interior(kv, w, g);
        CHECK_THAT(std::abs(I * kv.k * Y.U + I * kv.m * Y.W), WithinAbs(0.0, 1e-12));
        const cplx lhs = Y.B * w;
        const cplx rhs = I * (kv.k * std::cos(g) - kv.m * std::sin(g)) / kv.m;
        CHECK_THAT(std::abs(lhs - rhs), WithinAbs(0.0, 1e-12 * (1.0 + std::abs(rhs))));
    }
    CHECK_THROWS_AS(eigenvector_interior({1.0, 0.0}, 0.5, 0.3), std::domain_error);
    CHECK_THROWS_AS(eigenvector_interior({0.0, 1.0}, 0.5, 0.3), std::domain_error);
    CHECK_THROWS_AS(eigenvector_interior({1.0, 1.0}, 0.0, 0.3), std::domain_error);
}

TEST_CASE("zero trace lifts to zero", "[lift]") {
    PhysParams pp = base_params(1e-5);
    const double theta = pp.gamma + std::cbrt(pp.eps);
    const auto kv = Wavevector::from_polar(3.0, theta, pp.gamma);
    const double w = *incident_branch(kv, pp.gamma);
    CharPolyParams cp{w, kv.k, pp.eps, pp.nu0, pp.kappa0, pp.gamma};
    RegimeConfig cfg;
    cfg.enforce = false;
    const auto roots = asym_roots_critical(cp, cfg);
    const auto lift = lift_boundary({0.0, 0.0, 0.0}, roots, kv.k, w, pp);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(lift.a[j]) == 0.0);
}

TEST_CASE("lifted trace cancels the incident trace componentwise", "[lift]") {
    for (double eps : {1e-4, 1e-6, 1e-8}) {
        const auto n = lift_node(base_params(eps), 3.0, base_params(eps).gamma + std::cbrt(eps));
        CHECK(n.lift.solve_residual <= 1e-10);
        cplx su = n.Xinc.U, sw = n.Xinc.W, sb = I * n.m * n.Xinc.B;
        double su_s = std::abs(su), sw_s = std::abs(sw), sb_s = std::abs(sb);
        for (int j = 0; j < 3; ++j) {
            su += n.lift.a[j] * n.lift.X[j].U;
            sw += n.lift.a[j] * n.lift.X[j].W;
            sb += n.lift.a[j] * (-n.roots.lambda[j]) * n.lift.X[j].B;
            su_s = std::max(su_s, std::abs(n.lift.a[j] * n.lift.X[j].U));
            sw_s = std::max(sw_s, std::abs(n.lift.a[j] * n.lift.X[j].W));
            sb_s = std::max(sb_s, std::abs(n.lift.a[j] * n.roots.lambda[j] * n.lift.X[j].B));
        }
        // relative to the largest term in each cancelling sum
        CHECK_THAT(std::abs(su), WithinAbs(0.0, 1e-10 * su_s));
        CHECK_THAT(std::abs(sw), WithinAbs(0.0, 1e-10 * sw_s));
        CHECK_THAT(std::abs(sb), WithinAbs(0.0, 1e-10 * sb_s));
    }
}

TEST_CASE("amplitude scaling in eps and |k|", "[lift]") {
    // |a1| ~ eps^{-1/3} |k|^{-2/3}, |a3| ~ eps^{-1/6} |k|^{-1/3}
    std::vector<double> eps = geomspace(1e-8, 1e-5, 6);
    std::vector<double> a1e, a3e;
    for (double e : eps) {
        const auto n = lift_node(base_params(e), 3.0, base_params(e).gamma + std::cbrt(e));
        a1e.push_back(std::abs(n.lift.a[0]));
        a3e.push_back(std::abs(n.lift.a[2]));
    }
    CHECK(fit_loglog(eps, a1e, -1.0 / 3.0, 0.05).pass);
    CHECK(fit_loglog(eps, a3e, -1.0 / 6.0, 0.05).pass);

    std::vector<double> ks = geomspace(2.0, 40.0, 6);
    std::vector<double> a1k, a3k;
    const double e0 = 1e-8;
    for (double k : ks) {
        const auto n = lift_node(base_params(e0), k, base_params(e0).gamma + std::cbrt(e0));
        a1k.push_back(std::abs(n.lift.a[0]));
        a3k.push_back(std::abs(n.lift.a[2]));
    }
    CHECK(fit_loglog(ks, a1k, -2.0 / 3.0, 0.05).pass);
    CHECK(fit_loglog(ks, a3k, -1.0 / 3.0, 0.05).pass);
}

TEST_CASE("amplitudes sit in the factor-4 band of the leading order", "[lift]") {
    for (double eps : {1e-7, 1e-6, 1e-5}) {
        for (double kmod : {2.0, 4.0, 8.0}) {
            const auto n = lift_node(base_params(eps), kmod,
                                     base_params(eps).gamma + std::cbrt(eps));
            const auto ord = lift_amplitude_orders(eps, kmod);
            for (int j = 0; j < 3; ++j) {
                const double ratio = std::abs(n.lift.a[j]) / ord[j];
                CHECK(ratio > 0.25);
                CHECK(ratio < 4.0);
            }
        }
    }
}

TEST_CASE("det M against its leading-order magnitude", "[lift]") {
    for (double eps : {1e-7, 1e-6, 1e-5, 1e-4}) {
        const auto pp = base_params(eps);
        const double theta = pp.gamma + std::cbrt(eps);
        const auto kv = Wavevector::from_polar(3.0, theta, pp.gamma);
        const double w = *incident_branch(kv, pp.gamma);
        CharPolyParams cp{w, kv.k, eps, pp.nu0, pp.kappa0, pp.gamma};
        RegimeConfig cfg;
        cfg.enforce = false;
        const auto roots = asym_roots_critical(cp, cfg);
        std::array<ModeVector, 3> X;
        for (int j = 0; j < 3; ++j) X[j] = eigenvector_bl(kv.k, roots.lambda[j], w, pp);
        const double det = std::abs(lift_matrix(roots.lambda, X).determinant());
        const double lead = lift_det_leading(kv.k, roots.lambda);
        CHECK(det > 0.0);
        const double ratio = det / lead;
        CHECK(ratio > 0.1);
        CHECK(ratio < 10.0);
    }
}

TEST_CASE("direct solve approaches the explicit leading-order amplitudes", "[lift]") {
    // Independent route: assemble M from the asymptotic seeds and the
    // leading-order eigenvector entries only (B_{1,2} ~ sg/(iw),
    // B_3 ~ i sg nu0/(w kappa0)), invert, and compare with the direct solve.
    // |k| is coupled to eps as on the beam support (|k| ~ eps^{-mu}); at fixed
    // |k| the seeds carry an eps-free |k|^{-1} correction.
    std::vector<double> eps = geomspace(1e-9, 1e-5, 5);
    std::vector<double> dev;
    for (double e : eps) {
        const auto pp = base_params(e);
        const auto n = lift_node(pp, std::pow(e, -0.12), pp.gamma + std::cbrt(e));
        const double sg = std::sin(pp.gamma);
        const double w = n.cp.omega;
        const cplx B12 = sg / (I * w);
        const cplx B3 = I * sg * pp.nu0 / (w * pp.kappa0);
        Eigen::Matrix3cd M;
        for (int j = 0; j < 3; ++j) {
            const cplx L = n.roots.seed[j];
            const cplx B = (j < 2) ? B12 : B3;
            M(0, j) = 1.0;
            M(1, j) = I * n.cp.k / L;
            M(2, j) = -L * B;
        }
        Eigen::Vector3cd tr;
        tr << -n.Xinc.U, -n.Xinc.W, -I * n.m * n.Xinc.B;
        const Eigen::Vector3cd a_lead = M.fullPivLu().solve(tr);
        double d = 0.0;
        for (int j = 0; j < 3; ++j)
            d = std::max(d, std::abs(a_lead(j) - n.lift.a[j]) / std::abs(n.lift.a[j]));
        dev.push_back(d);
    }
    // agreement improves towards 0 as eps -> 0 (rate set by the seed gap,
    // ~eps^{2mu/3} on the support)
    CHECK(dev.front() < dev.back());
    CHECK(dev.front() < 0.15);
    const auto rep = fit_loglog(eps, dev, 2.0 * 0.12 / 3.0, 0.3);
    INFO("leading-inverse agreement slope " << rep.fitted_slope);
    CHECK(rep.fitted_slope > 0.04);
}
