#pragma once

#include <cstddef>
#include <vector>

#include "zetagaps/zero_data.hpp"

namespace zetagaps::windows {

// Short-interval scan: r adjacent windows of width h = 2*pi*m / log T,
// so each window holds m ordinates on average near height T.
struct WindowConfig {
    double T = 0.0;        // base height; sites scan (T, 2T]
    int m = 1;             // target count per window
    int r = 1;             // windows per site
    double epsilon = 0.1;  // reserved slack parameter, in (0, 1)
    double c_exponent = 0.0;

    double h() const;
    void validate() const;  // throws ArgumentError / DomainError
};

// What counts as a gap inside a window. boundary_inclusive adds the
// two edge segments (window edge to nearest interior ordinate), which
// makes the count+1 segments sum exactly to h and the pigeonhole bound
// max_gap >= h/(count+1) unconditional. interior_only uses consecutive
// interior ordinates alone and can understate the emptiness near the
// edges.
enum class GapConvention { boundary_inclusive, interior_only };

struct WindowGap {
    double max_gap = 0.0;
    bool has_moderate_gap = false;
};

struct WindowReport {
    double site = 0.0;
    std::vector<std::size_t> counts;
    bool all_within_bounds = false;  // every count strictly in (m/2, 3m/2)
    std::vector<double> max_gaps;
    std::vector<bool> has_moderate_gap;
};

// The detection threshold 4*pi / (3 log T).
double moderate_gap_threshold(double T);

// Counts in the r windows (t + (j-1)h, t + jh], j = 1..r.
std::vector<std::size_t> window_counts(const OrdinateTable& table, double t,
                                       const WindowConfig& cfg);

// Exact value of the integral over (T, 2T] of (N(t+h) - N(t) - m)^2 dt.
// m defaults to h log T / (2*pi), the mean count of a width-h window;
// pass m explicitly to center on another value. The integrand is a
// step function with breakpoints at ordinates and at ordinates shifted
// left by h; the sum over segments is exact, no grid involved.
double variance_integral(const OrdinateTable& table, double T, double h,
                         double m = -1.0);

// Fraction of grid sites t in (T, 2T] (step grid_step, default h/16
// when <= 0) whose r window counts all lie strictly in (m/2, 3m/2).
double good_set_measure(const OrdinateTable& table, const WindowConfig& cfg,
                        double grid_step = 0.0);

// Exact Lebesgue measure (as a fraction of T) of the same set for
// r = 1, by sweeping the breakpoints of the count step function.
double good_set_measure_exact(const OrdinateTable& table,
                              const WindowConfig& cfg);

// Largest gap in each window and whether it reaches the detection
// threshold.
std::vector<WindowGap> window_moderate_gap(
    const OrdinateTable& table, double t, const WindowConfig& cfg,
    GapConvention convention = GapConvention::boundary_inclusive);

// counts + gaps + bounds check for one site.
WindowReport window_report(const OrdinateTable& table, double t,
                           const WindowConfig& cfg,
                           GapConvention convention =
                               GapConvention::boundary_inclusive);

}  // namespace zetagaps::windows
