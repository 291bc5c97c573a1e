#include "zetagaps/xi_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetagaps/errors.hpp"

namespace zetagaps::xi {

namespace {

constexpr double kPoleRadius = 1e-12;

}  // namespace

void ZeroSumConfig::validate() const {
    if (!std::isfinite(delta) || delta < 1.0)
        throw ArgumentError("ZeroSumConfig: delta must be >= 1");
}

double xi_surrogate(const OrdinateTable& table, double t,
                    const ZeroSumConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(t)) throw ArgumentError("xi_surrogate: t must be finite");
    if (t + cfg.delta > table.height_max())
        throw CoverageError("xi_surrogate: window [t - delta, t + delta] "
                            "reaches past table height " +
                            std::to_string(table.height_max()));
    auto ords = table.ordinates();
    auto lo = std::lower_bound(ords.begin(), ords.end(), t - cfg.delta);
    auto hi = std::upper_bound(ords.begin(), ords.end(), t + cfg.delta);
    double sum = 0.0;
    for (auto it = lo; it != hi; ++it) {
        double d = t - *it;
        if (std::abs(d) < kPoleRadius)
            throw PoleError("xi_surrogate: t collides with ordinate " +
                            std::to_string(*it));
        sum += 1.0 / d;
    }
    if (cfg.include_conjugates) {
        // Mirrored ordinates -gamma with |t - (-gamma)| <= delta.
        auto mhi = std::upper_bound(ords.begin(), ords.end(), cfg.delta - t);
        for (auto it = ords.begin(); it != mhi; ++it) sum += 1.0 / (t + *it);
    }
    return sum;
}

CriticalPoint find_gamma_star(const OrdinateTable& table, std::size_t n,
                              const ZeroSumConfig& cfg, double tol) {
    cfg.validate();
    if (!(tol > 0.0)) throw ArgumentError("find_gamma_star: tol must be > 0");
    double lo = table.ordinate(n);
    double hi = table.ordinate(n + 1);
    if (lo == hi)
        throw ValidationError("find_gamma_star: degenerate interval, "
                              "ordinates " + std::to_string(n) + " and " +
                              std::to_string(n + 1) + " coincide");

    ZeroSumConfig eff = cfg;
    eff.delta = std::min(cfg.delta, table.height_max() - hi);
    if (eff.delta < 1.0)
        throw CoverageError("find_gamma_star: less than one unit of table "
                            "coverage above the gap");

    double gap = hi - lo;
    double tiny = std::max(2e-12, 1e-9 * gap);
    double a = lo + tiny;
    double b = hi - tiny;
    if (!(a < b))
        throw ValidationError("find_gamma_star: gap too narrow to search");
    auto f = [&](double t) { return xi_surrogate(table, t, eff); };
    double fa = f(a);
    double fb = f(b);
    // The pole terms dominate at the endpoints: + on the right of
    // gamma_n, - on the left of gamma_{n+1}.
    if (!(fa > 0.0 && fb < 0.0))
        throw NumericError("find_gamma_star: endpoints do not bracket a "
                           "descent through zero");

    CriticalPoint cp;
    cp.n = n;
    cp.bracket_lo = lo;
    cp.bracket_hi = hi;
    double mid = 0.5 * (a + b);
    double fm = f(mid);
    for (int i = 0; i < 200 && b - a > tol && std::abs(fm) > tol; ++i) {
        if (fm > 0.0) a = mid; else b = mid;
        mid = 0.5 * (a + b);
        fm = f(mid);
    }
    cp.gamma_star = mid;
    cp.residual = fm;
    return cp;
}

TjPoint construct_tj(const OrdinateTable& table, std::size_t n, double C) {
    if (!std::isfinite(C) || C <= 2.0)
        throw ArgumentError("construct_tj: requires C > 2");
    double g = table.ordinate(n);
    double g_next = table.ordinate(n + 1);
    if (g <= std::exp(1.0))
        throw DomainError("construct_tj: requires ordinate > e");
    TjPoint tj;
    tj.value = g + std::pow(std::log(g), -C);
    tj.below_next = tj.value < g_next;
    return tj;
}

}  // namespace zetagaps::xi
