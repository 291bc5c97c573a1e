#pragma once

#include <cstddef>

#include "zetagaps/zero_data.hpp"

namespace zetagaps::xi {

// Truncated zero-sum surrogate for the logarithmic derivative on the
// critical line: sum over ordinates within |gamma - t| <= delta of
// 1/(t - gamma), optionally adding the mirrored -gamma terms. The
// smooth drift this truncation drops varies slowly across one gap, so
// the surrogate keeps the pole/monotone structure that locates the
// critical point.
struct ZeroSumConfig {
    double delta = 50.0;  // truncation radius in t, >= 1
    bool include_conjugates = false;
    void validate() const;  // throws ArgumentError
};

struct CriticalPoint {
    std::size_t n = 0;        // gap index: bracket is (gamma_n, gamma_{n+1})
    double gamma_star = 0.0;  // the root, strictly interior
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;    // surrogate value at gamma_star
};

struct TjPoint {
    double value = 0.0;    // gamma_n + (log gamma_n)^(-C)
    bool below_next = false;  // whether value < gamma_{n+1}
};

// The truncated sum at t. Throws PoleError if t collides with an
// ordinate (within 1e-12), CoverageError if [t - delta, t + delta]
// leaves the table.
double xi_surrogate(const OrdinateTable& table, double t,
                    const ZeroSumConfig& cfg);

// The unique sign change of the surrogate strictly between
// ordinate(n) and ordinate(n+1), by bisection: the surrogate falls
// from +inf to -inf across the gap. delta is clipped to the table's
// coverage (never below 1). Ties (zero-width gap) are rejected.
CriticalPoint find_gamma_star(const OrdinateTable& table, std::size_t n,
                              const ZeroSumConfig& cfg, double tol = 1e-9);

// Evaluation height just above an ordinate: gamma_n + (log gamma_n)^(-C)
// with C > 2, plus whether that lands before the next ordinate.
TjPoint construct_tj(const OrdinateTable& table, std::size_t n, double C);

}  // namespace zetagaps::xi
