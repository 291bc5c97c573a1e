#pragma once

namespace zetagaps::analytic {

// Result of a numerically integrated quantity.
struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

// Parameters for the run-count lower bounds: r consecutive gaps, gap
// threshold c in mean-spacing units, and the well-spacing constants
// (nearest-neighbor CDF bounded by M * u^delta near 0).
struct BoundParams {
    int r = 1;
    double c = 1.0;
    double m = 1.0;
    double delta = 3.0;
    void validate() const;  // throws ArgumentError on violation
};

// Pair-correlation density deficit 1 - (sin(pi u) / (pi u))^2. Defined
// as 0 at u = 0 (removable singularity). Always in [0, 1].
double pc_integrand(double u);

// f(alpha) = integral of pc_integrand over [0, alpha], by adaptive
// Gauss-Legendre panels split at integer u. abs_error_estimate <= tol.
QuadratureResult pair_correlation_f(double alpha, double tol = 1e-10);

// The unique c_r > 0 with f(c_r) = 1/r, refined until
// |f(c_r) - 1/r| <= tol. f is strictly increasing, so the root is
// unique and bracketable.
double solve_cr(int r, double tol = 1e-9);

// Lower bound 1 - r * f(c) on the proportion of indices opening a run
// of r moderate gaps (may be negative; positive means a positive
// proportion).
double pcc_lower_bound(const BoundParams& p);

// Same proportion bound under the well-spacing assumption:
// 1 - r * M * c^delta.
double wellspacing_lower_bound(const BoundParams& p);

// Upper bound (pi/3)^2 * c^3 >= f(c), valid for 0 < c <= 1/pi only
// (relies on 1 - sinc^2(pi u) <= (pi u)^2 / 3 there).
double cubic_bound(double c);

// Largest threshold for which the cubic bound certifies a positive run
// proportion: min(1/pi, (3/pi)^(2/3) * r^(-1/3)). Equals 1/pi for
// r <= 28 and decays like r^(-1/3) beyond.
double corollary_threshold(int r);

}  // namespace zetagaps::analytic
