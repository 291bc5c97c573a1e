#include "zetagaps/window_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetagaps/errors.hpp"

namespace zetagaps::windows {

double WindowConfig::h() const { return 2.0 * M_PI * m / std::log(T); }

void WindowConfig::validate() const {
    if (!std::isfinite(T) || T <= 1.0)
        throw DomainError("WindowConfig: requires T > 1");
    if (m < 1) throw ArgumentError("WindowConfig: m must be >= 1");
    if (r < 1) throw ArgumentError("WindowConfig: r must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ArgumentError("WindowConfig: epsilon must be in (0, 1)");
}

double moderate_gap_threshold(double T) {
    if (!std::isfinite(T) || T <= 1.0)
        throw DomainError("moderate_gap_threshold: requires T > 1");
    return 4.0 * M_PI / (3.0 * std::log(T));
}

std::vector<std::size_t> window_counts(const OrdinateTable& table, double t,
                                       const WindowConfig& cfg) {
    cfg.validate();
    double h = cfg.h();
    std::vector<std::size_t> counts(cfg.r);
    std::size_t prev = table.count_upto(t);
    for (int j = 1; j <= cfg.r; ++j) {
        std::size_t cur = table.count_upto(t + j * h);
        counts[j - 1] = cur - prev;
        prev = cur;
    }
    return counts;
}

namespace {

void require_window_coverage(const OrdinateTable& table, double upper,
                             const char* op) {
    if (upper > table.height_max())
        throw CoverageError(std::string(op) + ": needs coverage up to " +
                            std::to_string(upper) + " but table ends at " +
                            std::to_string(table.height_max()));
}

// Signed +1/-1 changes of the window count D(t) = #{gamma : t < gamma
// <= t + h}, as a sorted event list over (T, 2T). D increases when t
// reaches gamma - h (the ordinate enters on the right) and decreases
// when t reaches gamma (it leaves on the left). Working with the
// rounded gamma - h values keeps the sweep self-consistent: every
// change of the stepped D is exactly one event.
struct Sweep {
    std::vector<std::pair<double, int>> events;
    long long d0 = 0;  // D just right of T
};

Sweep build_sweep(const OrdinateTable& table, double T, double h) {
    Sweep sw;
    auto ords = table.ordinates();
    for (double g : ords) {
        double enter = g - h;
        if (enter > 2.0 * T) break;
        if (enter <= T) {
            if (g > T) ++sw.d0;  // already inside the window at t = T
            continue;
        }
        sw.events.emplace_back(enter, +1);
    }
    for (double g : ords) {
        if (g >= 2.0 * T) break;
        if (g > T) sw.events.emplace_back(g, -1);
    }
    std::sort(sw.events.begin(), sw.events.end());
    return sw;
}

}  // namespace

double variance_integral(const OrdinateTable& table, double T, double h,
                         double m) {
    if (!std::isfinite(T) || T <= 1.0)
        throw DomainError("variance_integral: requires T > 1");
    if (!(h > 0.0) || !std::isfinite(h))
        throw ArgumentError("variance_integral: h must be positive");
    require_window_coverage(table, 2.0 * T + h, "variance_integral");

    if (m < 0.0) m = h * std::log(T) / (2.0 * M_PI);
    Sweep sw = build_sweep(table, T, h);
    double sum = 0.0;
    double prev = T;
    long long d = sw.d0;
    for (auto [pos, delta] : sw.events) {
        double dev = static_cast<double>(d) - m;
        sum += (pos - prev) * dev * dev;
        d += delta;
        prev = pos;
    }
    double dev = static_cast<double>(d) - m;
    sum += (2.0 * T - prev) * dev * dev;
    return sum;
}

double good_set_measure(const OrdinateTable& table, const WindowConfig& cfg,
                        double grid_step) {
    cfg.validate();
    double h = cfg.h();
    if (grid_step <= 0.0) grid_step = h / 16.0;
    require_window_coverage(table, 2.0 * cfg.T + cfg.r * h,
                            "good_set_measure");
    double lo_bound = cfg.m / 2.0;
    double hi_bound = 3.0 * cfg.m / 2.0;
    std::size_t n_sites = static_cast<std::size_t>(cfg.T / grid_step);
    if (n_sites == 0)
        throw ArgumentError("good_set_measure: grid_step larger than T");
    std::size_t good = 0;
    for (std::size_t k = 1; k <= n_sites; ++k) {
        double t = cfg.T + static_cast<double>(k) * grid_step;
        std::size_t prev = table.count_upto(t);
        bool ok = true;
        for (int j = 1; j <= cfg.r; ++j) {
            std::size_t cur = table.count_upto(t + j * h);
            double cnt = static_cast<double>(cur - prev);
            if (!(cnt > lo_bound && cnt < hi_bound)) {
                ok = false;
                break;
            }
            prev = cur;
        }
        if (ok) ++good;
    }
    return static_cast<double>(good) / static_cast<double>(n_sites);
}

double good_set_measure_exact(const OrdinateTable& table,
                              const WindowConfig& cfg) {
    cfg.validate();
    if (cfg.r != 1)
        throw ArgumentError(
            "good_set_measure_exact: event sweep covers r = 1 only");
    double h = cfg.h();
    require_window_coverage(table, 2.0 * cfg.T + h, "good_set_measure_exact");
    double lo_bound = cfg.m / 2.0;
    double hi_bound = 3.0 * cfg.m / 2.0;
    Sweep sw = build_sweep(table, cfg.T, h);
    double good_len = 0.0;
    double prev = cfg.T;
    long long d = sw.d0;
    for (auto [pos, delta] : sw.events) {
        double cnt = static_cast<double>(d);
        if (cnt > lo_bound && cnt < hi_bound) good_len += pos - prev;
        d += delta;
        prev = pos;
    }
    if (static_cast<double>(d) > lo_bound && static_cast<double>(d) < hi_bound)
        good_len += 2.0 * cfg.T - prev;
    return good_len / cfg.T;
}

std::vector<WindowGap> window_moderate_gap(const OrdinateTable& table,
                                           double t, const WindowConfig& cfg,
                                           GapConvention convention) {
    cfg.validate();
    double h = cfg.h();
    double thr = moderate_gap_threshold(cfg.T);
    auto ords = table.ordinates();
    std::vector<WindowGap> out(cfg.r);
    for (int j = 1; j <= cfg.r; ++j) {
        double lo = t + (j - 1) * h;
        double hi = t + j * h;
        std::size_t i1 = table.count_upto(lo);   // first interior, 0-based
        std::size_t i2 = table.count_upto(hi);   // one past last interior
        double max_gap = 0.0;
        if (convention == GapConvention::boundary_inclusive) {
            if (i1 == i2) {
                max_gap = hi - lo;  // empty window: one segment of length h
            } else {
                max_gap = ords[i1] - lo;
                for (std::size_t i = i1 + 1; i < i2; ++i)
                    max_gap = std::max(max_gap, ords[i] - ords[i - 1]);
                max_gap = std::max(max_gap, hi - ords[i2 - 1]);
            }
        } else {
            for (std::size_t i = i1 + 1; i < i2; ++i)
                max_gap = std::max(max_gap, ords[i] - ords[i - 1]);
        }
        out[j - 1].max_gap = max_gap;
        out[j - 1].has_moderate_gap = (max_gap >= thr);
    }
    return out;
}

WindowReport window_report(const OrdinateTable& table, double t,
                           const WindowConfig& cfg, GapConvention convention) {
    WindowReport rep;
    rep.site = t;
    rep.counts = window_counts(table, t, cfg);
    double lo_bound = cfg.m / 2.0;
    double hi_bound = 3.0 * cfg.m / 2.0;
    rep.all_within_bounds = true;
    for (std::size_t c : rep.counts) {
        double cnt = static_cast<double>(c);
        if (!(cnt > lo_bound && cnt < hi_bound)) {
            rep.all_within_bounds = false;
            break;
        }
    }
    auto gaps = window_moderate_gap(table, t, cfg, convention);
    rep.max_gaps.reserve(gaps.size());
    rep.has_moderate_gap.reserve(gaps.size());
    for (const WindowGap& g : gaps) {
        rep.max_gaps.push_back(g.max_gap);
        rep.has_moderate_gap.push_back(g.has_moderate_gap);
    }
    return rep;
}

}  // namespace zetagaps::windows
