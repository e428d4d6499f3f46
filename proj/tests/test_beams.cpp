#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "beamlab/beams.hpp"
#include "beamlab/localization.hpp"
#include "beamlab/sweep.hpp"

using namespace beamlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
PhysParams params(double eps, double sigma = 0.55) {
    PhysParams p;
    p.eps = eps;
    p.sigma = sigma;
    p.gamma = M_PI / 5;
    p.mu = 0.1249;
    p.eta = 0.5;
    return p;
}
} // namespace

TEST_CASE("spectral amplitude support and peak", "[beams]") {
    const auto p = params(1e-4);
    auto amp = SpectralAmplitude::from(p);
    // below the integration floor
    CHECK(amp(0.4 * p.eta, p.gamma) == 0.0);
    // centered bump: angular factor 1 at theta = gamma, radial peak at sigma|k| = 1.25
    const double kpk = 1.25 / p.sigma;
    CHECK_THAT(amp(kpk, p.gamma), WithinRel(chi_radial(1.25), 1e-12));
    CHECK_THAT(amp.angular(p.gamma), WithinAbs(1.0, 1e-12));
    CHECK_THAT(amp.angular(p.gamma + M_PI), WithinAbs(1.0, 1e-12));
    // off the angular support
    const double far = 10.0 * std::cbrt(p.eps);
    CHECK(amp(kpk, p.gamma + far) == 0.0);
    CHECK(amp(kpk, p.gamma + M_PI + far) == 0.0);
    // off the radial support
    CHECK(amp(2.1 / p.sigma, p.gamma) == 0.0);
    // profiles take values in [0, 1]
    for (double s = -2.0; s <= 2.0; s += 0.01) {
        CHECK(chi_angular(s) >= 0.0);
        CHECK(chi_angular(s) <= 1.0);
    }
}

TEST_CASE("quadrature converges under node doubling", "[beams]") {
    const auto p = params(1e-3);
    const auto w = beam_window(p);
    const double l2a = build_incident(p, 8, 4).l2_window(w);
    const double l2b = build_incident(p, 16, 8).l2_window(w);
    const double l2c = build_incident(p, 32, 16).l2_window(w);
    CHECK_THAT(l2b, WithinRel(l2c, 5e-4));
    CHECK_THAT(l2a, WithinRel(l2c, 2e-2));
    // doubling once more moves the norm by less than 1e-6 relative
    const double l2d = build_incident(p, 64, 32).l2_window(w);
    CHECK_THAT(std::abs(l2d - l2c) / l2d, WithinAbs(0.0, 1e-6));
}

TEST_CASE("two angular lobes give a real physical field", "[beams]") {
    const auto p = params(1e-3);
    const auto inc = build_incident(p, 10, 6);
    Grid g = beam_grid(p, inc, 0.6, 4.0, 512, 512);
    const auto fld = inc.evaluate(g, 0.37);
    double max_im = 0.0, max_abs = 0.0;
    for (int q = 0; q < 3; ++q)
        for (const auto& v : fld.c[q]) {
            max_im = std::max(max_im, std::abs(v.imag()));
            max_abs = std::max(max_abs, std::abs(v));
        }
    CHECK(max_im <= 1e-10 * max_abs);
}

TEST_CASE("zero amplitude gives a zero field", "[beams]") {
    auto p = params(1e-3);
    auto f = build_incident(p, 6, 4);
    for (auto& m : f.modes) m.amp = 0.0;
    CHECK(f.l2_window(beam_window(p)) == 0.0);
}

TEST_CASE("incident beam is divergence-free", "[beams]") {
    const auto p = params(1e-3);
    const auto inc = build_incident(p, 10, 6);
    double scale = 0.0;
    for (const auto& m : inc.modes)
        scale = std::max(scale, std::abs(m.amp) * std::abs(m.k));
    CHECK(inc.max_div_coeff() <= 1e-12 * scale);
}

TEST_CASE("W0 trace vanishes at y = 0", "[beams]") {
    const auto p = params(1e-4);
    const auto w0 = build_w0(p, 10, 6);
    const auto total = w0.total();
    const auto xs = uniform_nodes(p.x0 - 3.0, p.x0 + 3.0, 101);
    const auto tu = total.trace_y0(0, xs, 0.1);
    const auto tw = total.trace_y0(1, xs, 0.1);
    const auto tb = total.trace_y0(2, xs, 0.1, /*deriv_y=*/true);
    const auto ru = w0.inc.trace_y0(0, xs, 0.1);
    const auto rb = w0.inc.trace_y0(2, xs, 0.1, true);
    double scale_u = 0.0, scale_b = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        scale_u = std::max(scale_u, std::abs(ru[i]));
        scale_b = std::max(scale_b, std::abs(rb[i]));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(tu[i]) <= 1e-8 * scale_u);
        CHECK(std::abs(tw[i]) <= 1e-8 * scale_u);
        CHECK(std::abs(tb[i]) <= 1e-8 * scale_b);
    }
}

TEST_CASE("incident L2 is O(1) across a two-decade eps sweep", "[beams]") {
    std::vector<double> norms;
    for (double e : {1e-3, 1e-4, 1e-5}) {
        const auto p = params(e);
        norms.push_back(build_incident(p, 14, 7).l2_window(beam_window(p)));
    }
    const double lo = *std::min_element(norms.begin(), norms.end());
    const double hi = *std::max_element(norms.begin(), norms.end());
    INFO("incident L2 range [" << lo << ", " << hi << "]");
    CHECK(hi / lo <= 2.0);
}

TEST_CASE("incident Linf scalings", "[beams]") {
    // Linf ~ eps^{1/6} sigma^{-1}
    auto linf_at = [&](const PhysParams& p) {
        const auto inc = build_incident(p, 12, 6);
        Grid g = beam_grid(p, inc, 1.0, 4.0, 1024, 1024);
        return inc.evaluate(g, 0.0).linf();
    };
    std::vector<double> eps = {1e-3, 1e-4, 1e-5}, ve;
    for (double e : eps) ve.push_back(linf_at(params(e)));
    const auto re = fit_loglog(eps, ve, 1.0 / 6.0, 0.05);
    INFO("Linf eps-slope " << re.fitted_slope);
    CHECK(re.pass);

    std::vector<double> sig = {0.25, 0.35, 0.5, 0.7}, vs;
    for (double s : sig) vs.push_back(linf_at(params(1e-6, s)));
    const auto rs = fit_loglog(sig, vs, -1.0, 0.1);
    INFO("Linf sigma-slope " << rs.fitted_slope);
    CHECK(rs.pass);
}

TEST_CASE("norm rules for generic beam orders", "[beams]") {
    const double op = 0.25, oq = 0.5;
    // interior beam: L2 ~ eps^p sigma^{-q}
    std::vector<double> eps = geomspace(1e-5, 1e-3, 5), v;
    for (double e : eps) {
        const auto p = params(e);
        v.push_back(build_test_beam(p, op, oq, 10, 6).l2_window(beam_window(p)));
    }
    auto rep = fit_loglog(eps, v, op, 0.2);
    INFO("beam L2 eps-slope " << rep.fitted_slope);
    CHECK(rep.pass);

    std::vector<double> sig = geomspace(0.22, 0.7, 5);
    v.clear();
    for (double s : sig) {
        const auto p = params(1e-6, s);
        v.push_back(build_test_beam(p, op, oq, 10, 6).l2_window(beam_window(p)));
    }
    rep = fit_loglog(sig, v, -oq, 0.2);
    INFO("beam L2 sigma-slope " << rep.fitted_slope);
    CHECK(rep.pass);

    // Linf ~ eps^{p+1/6} sigma^{-q-1}
    v.clear();
    for (double e : eps) {
        const auto p = params(e);
        const auto f = build_test_beam(p, op, oq, 10, 6);
        v.push_back(f.evaluate(beam_grid(p, f, 1.0, 4.0, 1024, 1024), 0.0).linf());
    }
    rep = fit_loglog(eps, v, op + 1.0 / 6.0, 0.2);
    INFO("beam Linf eps-slope " << rep.fitted_slope);
    CHECK(rep.pass);
}

TEST_CASE("norm rules for generic boundary-layer orders", "[beams]") {
    const double op = 0.25, oq = 0.5;

    SECTION("alpha = 1/3, beta = 1/3") {
        std::vector<double> eps = geomspace(1e-5, 1e-3, 5), v;
        for (double e : eps) {
            const auto p = params(e);
            v.push_back(
                build_test_bl_beam(p, 1.0 / 3, 1.0 / 3, op, oq).l2_window(beam_window(p)));
        }
        auto rep = fit_loglog(eps, v, 1.0 / 6.0 + op + 1.0 / 6.0, 0.2);
        INFO("BL L2 eps-slope " << rep.fitted_slope);
        CHECK(rep.pass);

        std::vector<double> sig = geomspace(0.22, 0.7, 5);
        v.clear();
        for (double s : sig) {
            const auto p = params(1e-6, s);
            v.push_back(
                build_test_bl_beam(p, 1.0 / 3, 1.0 / 3, op, oq).l2_window(beam_window(p)));
        }
        rep = fit_loglog(sig, v, -oq - 0.5, 0.2);
        INFO("BL L2 sigma-slope " << rep.fitted_slope << " (beta/2 shift expected)");
        CHECK(rep.pass);
    }
    SECTION("alpha = 1/2, beta = 0") {
        std::vector<double> eps = geomspace(1e-5, 1e-3, 5), v;
        for (double e : eps) {
            const auto p = params(e);
            v.push_back(build_test_bl_beam(p, 0.5, 0.0, op, oq).l2_window(beam_window(p)));
        }
        const auto rep = fit_loglog(eps, v, 1.0 / 6.0 + op + 0.25, 0.2);
        INFO("BL L2 eps-slope " << rep.fitted_slope);
        CHECK(rep.pass);
    }
    SECTION("Linf of a BL beam ~ eps^{p+1/6} sigma^{-q-1}") {
        std::vector<double> eps = geomspace(1e-5, 1e-3, 4), v;
        for (double e : eps) {
            const auto p = params(e);
            const auto f = build_test_bl_beam(p, 1.0 / 3, 1.0 / 3, op, oq);
            v.push_back(f.evaluate(beam_grid(p, f, 1.0, 4.0, 1024, 1024), 0.0).linf());
        }
        const auto rep = fit_loglog(eps, v, op + 1.0 / 6.0, 0.2);
        INFO("BL Linf eps-slope " << rep.fitted_slope);
        CHECK(rep.pass);
    }
}

TEST_CASE("product norm rules", "[beams]") {
    const double p1 = 0.2, q1 = 0.3, p2 = 0.1, q2 = 0.6;
    auto product_l2 = [](const PhysParams& p, const ModeSum& a, const ModeSum& b) {
        Grid g = beam_grid(p, a, 1.0, 4.0, 768, 768);
        const auto fa = a.evaluate(g, 0.0);
        const auto fb = b.evaluate(g, 0.0);
        GridField prod(g, 0.0);
        for (std::size_t n = 0; n < fa.c[0].size(); ++n)
            prod.c[0][n] = fa.c[0][n] * fb.c[0][n];
        return prod.l2();
    };

    SECTION("beam x beam: eps^{p+p'+1/6} sigma^{-1-q-q'}") {
        std::vector<double> eps = geomspace(1e-5, 1e-3, 4), v;
        for (double e : eps) {
            const auto p = params(e);
            v.push_back(product_l2(p, build_test_beam(p, p1, q1, 10, 6),
                                   build_test_beam(p, p2, q2, 10, 6)));
        }
        auto rep = fit_loglog(eps, v, p1 + p2 + 1.0 / 6.0, 0.25);
        INFO("beam*beam eps-slope " << rep.fitted_slope);
        CHECK(rep.pass);

        std::vector<double> sig = geomspace(0.22, 0.7, 4);
        v.clear();
        for (double s : sig) {
            const auto p = params(1e-6, s);
            v.push_back(product_l2(p, build_test_beam(p, p1, q1, 10, 6),
                                   build_test_beam(p, p2, q2, 10, 6)));
        }
        rep = fit_loglog(sig, v, -1.0 - q1 - q2, 0.25);
        INFO("beam*beam sigma-slope " << rep.fitted_slope);
        CHECK(rep.pass);
    }
    SECTION("BL x BL: eps^{p+p'+max(a,a')/2+1/3}") {
        std::vector<double> eps = geomspace(1e-5, 1e-3, 4), v;
        for (double e : eps) {
            const auto p = params(e);
            v.push_back(product_l2(p, build_test_bl_beam(p, 1.0 / 3, 1.0 / 3, p1, q1),
                                   build_test_bl_beam(p, 0.5, 0.0, p2, q2)));
        }
        const auto rep = fit_loglog(eps, v, p1 + p2 + 0.25 + 1.0 / 3.0, 0.25);
        INFO("BL*BL eps-slope " << rep.fitted_slope);
        CHECK(rep.pass);
    }
    SECTION("BL x beam: eps^{p+p'+a/2+1/3}") {
        std::vector<double> eps = geomspace(1e-5, 1e-3, 4), v;
        for (double e : eps) {
            const auto p = params(e);
            v.push_back(product_l2(p, build_test_bl_beam(p, 1.0 / 3, 1.0 / 3, p1, q1),
                                   build_test_beam(p, p2, q2, 10, 6)));
        }
        const auto rep = fit_loglog(eps, v, p1 + p2 + 1.0 / 6.0 + 1.0 / 3.0, 0.25);
        INFO("BL*beam eps-slope " << rep.fitted_slope);
        CHECK(rep.pass);
    }
}

TEST_CASE("derivatives shift the order bookkeeping", "[beams]") {
    const double op = 0.2, oq = 0.4;
    SECTION("d/dx of a (p,q) beam is a (p,q+1) beam") {
        std::vector<double> sig = geomspace(0.22, 0.7, 5), v;
        for (double s : sig) {
            const auto p = params(1e-6, s);
            v.push_back(build_test_beam(p, op, oq, 10, 6).dx().l2_window(beam_window(p)));
        }
        const auto rep = fit_loglog(sig, v, -(oq + 1.0), 0.2);
        INFO("d/dx sigma-slope " << rep.fitted_slope);
        CHECK(rep.pass);
    }
    SECTION("d/dy of an (a,b,p,q) BL beam is an (a,b,p-a,q+b) BL beam") {
        const double al = 1.0 / 3, be = 1.0 / 3;
        std::vector<double> eps = geomspace(1e-5, 1e-3, 5), v;
        for (double e : eps) {
            const auto p = params(e);
            v.push_back(build_test_bl_beam(p, al, be, op, oq).dy().l2_window(beam_window(p)));
        }
        // L2 exponent of the derivative: 1/6 + (p - a) + a/2
        const auto rep = fit_loglog(eps, v, 1.0 / 6.0 + (op - al) + al / 2.0, 0.2);
        INFO("d/dy eps-slope " << rep.fitted_slope);
        CHECK(rep.pass);
    }
    SECTION("d/dx of a zero field is zero") {
        auto p = params(1e-3);
        auto f = build_test_beam(p, 0, 0, 6, 4);
        for (auto& m : f.modes) m.amp = 0.0;
        CHECK(f.dx().l2_window(beam_window(p)) == 0.0);
    }
}

TEST_CASE("Plancherel consistency for an interior beam", "[beams]") {
    const auto p = params(1e-3);
    const int nk = 40, nth = 20;
    const auto f = build_test_beam(p, 0.0, 0.0, nk, nth);
    // spectral closed form: half-plane L2 = sqrt(1/2) * 2pi * ||g||_{L2(k)}
    const auto amp = SpectralAmplitude::from(p);
    const auto nodes = beam_nodes(amp, nk, nth, p.gamma);
    const double pref = p.sigma * std::pow(p.eps, -1.0 / 6.0);
    double spec = 0.0;
    for (const auto& n : nodes) {
        const double g = pref * amp(n.kmod, n.theta);
        spec += g * g * n.weight;
    }
    const double closed = std::sqrt(0.5) * 2.0 * M_PI * std::sqrt(spec);
    // wide window: the physical tail decays fast (the first moment of the
    // radial profile vanishes at the origin)
    auto w = beam_window(p, 6.0, 20.0);
    const double win_l2 = f.l2_window(w);
    INFO("window " << win_l2 << " spectral " << closed);
    CHECK_THAT(win_l2, WithinRel(closed, 1e-3));
}

TEST_CASE("boundary-layer strip localization", "[beams]") {
    // ||W_BL^{1/3}||_{y > eps^{1/3-mu}} / ||W_BL^{1/3}|| ~ eps^{2mu/3}
    const double mu = 0.12;
    std::vector<double> eps = geomspace(1e-4, 1e-2, 5), frac;
    for (double e : eps) {
        const auto p = params(e, 0.62);
        const auto w0 = build_w0(p, 10, 6);
        auto w = beam_window(p);
        const double tot = w0.bl13.l2_window(w);
        auto wa = w;
        wa.y_lo = std::pow(e, 1.0 / 3.0 - mu);
        frac.push_back(w0.bl13.l2_window(wa) / tot);
    }
    const auto rep = fit_loglog(eps, frac, 2.0 * mu / 3.0, 0.2);
    INFO("BL strip fraction slope " << rep.fitted_slope << " predicted " << 2.0 * mu / 3.0);
    CHECK(rep.pass);
    // the eps^{1/2} layer is thinner still
    const auto p = params(1e-3, 0.62);
    const auto w0 = build_w0(p, 10, 6);
    auto w = beam_window(p);
    auto wa = w;
    wa.y_lo = std::pow(p.eps, 0.5 - mu);
    CHECK(w0.bl12.l2_window(wa) / w0.bl12.l2_window(w) < 0.7);
}

TEST_CASE("cone localization diagnostics", "[beams]") {
    const auto p = params(1e-3);
    const auto inc = build_incident(p, 10, 6);
    Grid g = beam_grid(p, inc, 1.2, 6.0, 1024, 1024);
    const auto fld = inc.evaluate(g, 0.0);
    const auto cone = ConeSpec::from(p, 0.05, true);
    const double frac = cone_energy_fraction(fld, cone);
    INFO("incident cone fraction at eps=1e-3: " << frac);
    CHECK(frac >= 0.0);
    CHECK(frac <= 1.0);

    // masked input supported inside the cone -> fraction 0
    GridField masked = fld;
    for (std::size_t q = 0; q < 3; ++q)
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i)
                if (!cone.inside(g.x[i], g.y[j])) masked.c[q][j * g.nx() + i] = 0.0;
    CHECK(cone_energy_fraction(masked, cone) == 0.0);
}
