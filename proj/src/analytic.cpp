#include "zetagaps/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetagaps/errors.hpp"
#include "zetagaps/quadrature.hpp"

namespace zetagaps::analytic {

void BoundParams::validate() const {
    if (r < 1) throw ArgumentError("BoundParams: r must be >= 1");
    if (!(c > 0.0) || !std::isfinite(c))
        throw ArgumentError("BoundParams: c must be positive and finite");
    if (!(m > 0.0) || !std::isfinite(m))
        throw ArgumentError("BoundParams: M must be positive and finite");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw ArgumentError("BoundParams: delta must be positive and finite");
}

double pc_integrand(double u) {
    if (!std::isfinite(u) || u < 0.0)
        throw DomainError("pc_integrand: u must be finite and >= 0");
    if (u == 0.0) return 0.0;
    double s = std::sin(M_PI * u) / (M_PI * u);
    return std::clamp(1.0 - s * s, 0.0, 1.0);
}

QuadratureResult pair_correlation_f(double alpha, double tol) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw ArgumentError("pair_correlation_f: alpha must be finite and >= 0");
    if (!(tol > 0.0))
        throw ArgumentError("pair_correlation_f: tol must be positive");
    if (alpha == 0.0) {
        return {pc_integrand(0.0), 0.0, 1};
    }
    // Split at integer u: the integrand touches 1 there, giving the
    // oscillation a natural panel boundary.
    std::vector<double> breaks;
    for (double k = 1.0; k < alpha; k += 1.0) breaks.push_back(k);
    int max_panels = 4096 + 16 * static_cast<int>(breaks.size());
    quad::Integral q = quad::integrate_adaptive(
        [](double u) { return pc_integrand(u); }, 0.0, alpha, tol, breaks, 15,
        max_panels);
    return {q.value, q.abs_error, q.evaluations};
}

double solve_cr(int r, double tol) {
    if (r < 1) throw ArgumentError("solve_cr: r must be >= 1");
    if (!(tol > 0.0)) throw ArgumentError("solve_cr: tol must be positive");
    const double target = 1.0 / r;
    const double quad_tol = std::clamp(0.1 * tol, 1e-14, 1e-10);
    auto eval = [&](double c) {
        return pair_correlation_f(c, quad_tol).value - target;
    };

    // f(c) <= (pi c)^2 c / 9 on (0, 1/pi], so this point is at or below
    // the root for every r. Above, f(2) > 1 >= 1/r.
    double lo = std::min(std::cbrt(9.0 / (M_PI * M_PI * r)), 1.0 / M_PI);
    double hi = 2.0;
    double flo = eval(lo);
    if (std::abs(flo) <= tol) return lo;
    double fhi = eval(hi);
    while (fhi < 0.0) {
        hi *= 2.0;
        fhi = eval(hi);
        if (hi > 1e6)
            throw ConvergenceError("solve_cr: failed to bracket the root");
    }

    // Bisection narrows the bracket, then secant polishes inside it.
    for (int i = 0; i < 60 && hi - lo > 1e-3; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = eval(mid);
        if (std::abs(fm) <= tol) return mid;
        if (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double a = lo, b = hi, fa = flo, fb = fhi;
    for (int i = 0; i < 60; ++i) {
        double x = b - fb * (b - a) / (fb - fa);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        double fx = eval(x);
        if (std::abs(fx) <= tol) return x;
        if (fx < 0.0) lo = x; else hi = x;
        a = b;
        fa = fb;
        b = x;
        fb = fx;
    }
    throw ConvergenceError("solve_cr: residual above tolerance after secant");
}

double pcc_lower_bound(const BoundParams& p) {
    p.validate();
    return 1.0 - p.r * pair_correlation_f(p.c, 1e-10).value;
}

double wellspacing_lower_bound(const BoundParams& p) {
    p.validate();
    return 1.0 - p.r * p.m * std::pow(p.c, p.delta);
}

double cubic_bound(double c) {
    if (!std::isfinite(c) || c <= 0.0 || c > 1.0 / M_PI)
        throw DomainError("cubic_bound: valid only for 0 < c <= 1/pi, got " +
                          std::to_string(c));
    return M_PI * M_PI * c * c * c / 9.0;
}

double corollary_threshold(int r) {
    if (r < 1) throw ArgumentError("corollary_threshold: r must be >= 1");
    return std::min(1.0 / M_PI, std::cbrt(9.0 / (M_PI * M_PI * r)));
}

}  // namespace zetagaps::analytic
