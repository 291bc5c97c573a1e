#pragma once

#include <functional>
#include <span>
#include <vector>

namespace zetagaps::quad {

// Gauss-Legendre rule on [-1, 1]. Nodes ascending, weights positive,
// sum of weights = 2.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order() const noexcept { return static_cast<int>(nodes.size()); }
};

// Returns the order-n rule from a process-wide cache. Thread safe; the
// cached rule for a given n is computed once and never mutated.
const Rule& gauss_legendre(int n);

// Applies a rule to fn over [a, b].
double apply(const Rule& rule, const std::function<double(double)>& fn,
             double a, double b);

struct Integral {
    double value = 0.0;
    double abs_error = 0.0;  // estimated, not guaranteed
    long evaluations = 0;
    int panels = 0;
};

// Adaptive composite Gauss-Legendre integration of fn over [a, b].
// `breakpoints` are interior points the initial panels must not straddle
// (kink locations); values outside (a, b) are ignored. Panels are split
// at their midpoint, worst estimated error first, until the total
// estimate falls below abs_tol or max_panels is reached (the latter
// throws ConvergenceError). Throws DomainError if fn returns a
// non-finite value.
Integral integrate_adaptive(const std::function<double(double)>& fn, double a,
                            double b, double abs_tol,
                            std::span<const double> breakpoints = {},
                            int rule_order = 15, int max_panels = 4096);

}  // namespace zetagaps::quad
