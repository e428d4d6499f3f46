// Log-log slope fitting for scaling-law verification.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamlab {

struct ScalingReport {
    std::string quantity;
    std::string sweep_variable; // "eps", "sigma" or "delta"
    double fitted_slope = 0.0;
    double ci95 = 0.0;        // 95% confidence half-width of the slope
    double predicted_slope = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<double> params;
    std::vector<double> values;
};

namespace detail {
// Two-sided 97.5% Student-t quantiles for df = 1..30.
inline double t975(int df) {
    static const double q[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                               2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                               2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                               2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
    if (df < 1) return q[0];
    if (df > 30) return 1.96;
    return q[df - 1];
}
} // namespace detail

/// Ordinary least squares on (log param, log value). Throws on non-positive
/// quantity values. Sets pass = |fitted - predicted| <= tolerance.
inline ScalingReport fit_loglog(const std::vector<double>& params,
                                const std::vector<double>& values, double predicted,
                                double tolerance, const std::string& quantity = "",
                                const std::string& variable = "") {
    const std::size_t n = params.size();
    if (n != values.size() || n < 2) throw std::invalid_argument("fit_loglog: need >= 2 points");
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(params[i] > 0.0)) throw std::domain_error("fit_loglog: non-positive parameter");
        if (!(values[i] > 0.0)) throw std::domain_error("fit_loglog: non-positive quantity value");
        x[i] = std::log(params[i]);
        y[i] = std::log(values[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        sse += r * r;
    }
    ScalingReport rep;
    rep.quantity = quantity;
    rep.sweep_variable = variable;
    rep.fitted_slope = slope;
    if (n > 2) rep.ci95 = detail::t975(int(n) - 2) * std::sqrt(sse / (double(n) - 2.0) / sxx);
    rep.predicted_slope = predicted;
    rep.tolerance = tolerance;
    rep.pass = std::abs(slope - predicted) <= tolerance;
    rep.params = params;
    rep.values = values;
    return rep;
}

/// Sweep harness: evaluates `quantity` at each parameter value and fits.
inline ScalingReport sweep_fit(const std::function<double(double)>& quantity,
                               const std::vector<double>& params, double predicted,
                               double tolerance, const std::string& name = "",
                               const std::string& variable = "") {
    std::vector<double> vals(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) vals[i] = quantity(params[i]);
    return fit_loglog(params, vals, predicted, tolerance, name, variable);
}

/// Geometrically spaced sweep values from a to b inclusive.
inline std::vector<double> geomspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = a * std::pow(b / a, n == 1 ? 0.0 : double(i) / double(n - 1));
    return v;
}

} // namespace beamlab
