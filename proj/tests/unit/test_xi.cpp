#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "zetagaps/errors.hpp"
#include "zetagaps/xi_diagnostics.hpp"

using namespace zetagaps;
using namespace zetagaps::xi;
using testsupport::make_table;
using testsupport::ref_table;

namespace {

ZeroSumConfig with_delta(double d) {
    ZeroSumConfig cfg;
    cfg.delta = d;
    return cfg;
}

}  // namespace

TEST_CASE("xi_surrogate cancels exactly on a symmetric configuration") {
    // Zeros paired around 100; every reciprocal cancels its mirror.
    auto t = make_table({98.0, 99.5, 100.5, 102.0});
    CHECK(xi_surrogate(t, 100.0, with_delta(2.0)) == 0.0);
}

TEST_CASE("xi_surrogate is pole-dominated next to an ordinate") {
    auto t = ref_table();
    double g = t.ordinate(10);
    CHECK(xi_surrogate(t, g + 1e-6, with_delta(30.0)) > 1e5);
    CHECK(xi_surrogate(t, g - 1e-6, with_delta(30.0)) < -1e5);
}

TEST_CASE("xi_surrogate pole and coverage and argument errors") {
    auto t = ref_table();
    CHECK_THROWS_AS(xi_surrogate(t, t.ordinate(10), with_delta(30.0)),
                    PoleError);
    CHECK_THROWS_AS(xi_surrogate(t, t.ordinate(10) + 1e-13, with_delta(30.0)),
                    PoleError);
    CHECK_THROWS_AS(xi_surrogate(t, 260.0, with_delta(50.0)), CoverageError);
    CHECK_THROWS_AS(xi_surrogate(t, 100.0, with_delta(0.5)), ArgumentError);
}

TEST_CASE("conjugate terms add the mirrored reciprocals") {
    auto t = ref_table();
    double base = xi_surrogate(t, 20.0, with_delta(40.0));
    ZeroSumConfig conj = with_delta(40.0);
    conj.include_conjugates = true;
    // Only gamma_1 <= delta - t = 20 mirrors into range.
    CHECK(xi_surrogate(t, 20.0, conj) ==
          base + 1.0 / (20.0 + t.ordinate(1)));
}

TEST_CASE("xi_surrogate derivative matches the termwise sum of squares") {
    auto t = ref_table();
    auto ords = t.ordinates();
    double delta = 30.0;
    double h = 1e-6;
    std::uint64_t s = 99;
    int tested = 0;
    for (int i = 0; i < 300 && tested < 60; ++i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        double u = static_cast<double>(s >> 11) * 0x1.0p-53;
        double x = t.ordinate(5) + 1.0 + u * (t.ordinate(50) - t.ordinate(5) - 2.0);
        // Keep clear of poles and of the truncation-window edges so the
        // zero set in the window is constant across the stencil.
        bool usable = true;
        for (double g : ords) {
            if (std::abs(g - x) < 0.05 || std::abs(g - (x - delta)) < 0.01 ||
                std::abs(g - (x + delta)) < 0.01) {
                usable = false;
                break;
            }
        }
        if (!usable) continue;
        ++tested;
        double fd = (xi_surrogate(t, x + h, with_delta(delta)) -
                     xi_surrogate(t, x - h, with_delta(delta))) /
                    (2.0 * h);
        double expect = 0.0;
        for (double g : ords)
            if (g >= x - delta && g <= x + delta)
                expect -= 1.0 / ((x - g) * (x - g));
        CHECK(fd < 0.0);
        CHECK(std::abs(fd - expect) <= 1e-3 * std::abs(expect));
    }
    REQUIRE(tested >= 50);
}

TEST_CASE("find_gamma_star lands on the midpoint of a symmetric gap") {
    auto t = make_table({97.0, 99.0, 101.0, 103.0});
    auto cp = find_gamma_star(t, 2, with_delta(50.0), 1e-12);
    CHECK(cp.n == 2);
    CHECK(cp.bracket_lo == 99.0);
    CHECK(cp.bracket_hi == 101.0);
    CHECK(std::abs(cp.gamma_star - 100.0) <= 1e-10);
    CHECK(std::abs(cp.residual) <= 1e-10);
}

TEST_CASE("find_gamma_star on reference data") {
    auto t = ref_table();
    auto cp = find_gamma_star(t, 1, with_delta(50.0));
    CHECK(cp.bracket_lo == t.ordinate(1));
    CHECK(cp.bracket_hi == t.ordinate(2));
    CHECK(cp.gamma_star > cp.bracket_lo);
    CHECK(cp.gamma_star < cp.bracket_hi);
    // Frozen from a verified run; the residual and scan tests below keep
    // this from drifting silently.
    CHECK(std::abs(cp.gamma_star - 15.5434027996) <= 1e-6);
    CHECK(std::abs(cp.residual) <= 1e-6);
    // A much larger truncation radius is clipped to the table but still
    // finds an interior root of the same gap.
    auto wide = find_gamma_star(t, 1, with_delta(1e6));
    CHECK(wide.gamma_star > t.ordinate(1));
    CHECK(wide.gamma_star < t.ordinate(2));
}

TEST_CASE("the surrogate changes sign exactly once per gap") {
    auto t = ref_table();
    ZeroSumConfig cfg = with_delta(30.0);
    for (std::size_t n = 1; n <= 20; ++n) {
        double lo = t.ordinate(n);
        double hi = t.ordinate(n + 1);
        double gap = hi - lo;
        double step = gap / 1e4;
        double margin = 1e-6 * gap;
        int flips = 0;
        double prev = xi_surrogate(t, lo + margin, cfg);
        CHECK(prev > 0.0);
        double last = prev;
        for (double x = lo + margin + step; x < hi - margin; x += step) {
            double v = xi_surrogate(t, x, cfg);
            if ((prev > 0.0) != (v > 0.0)) ++flips;
            prev = v;
            last = v;
        }
        CHECK(flips == 1);
        CHECK(last < 0.0);
    }
}

TEST_CASE("gamma_star drifts slowly in the truncation radius") {
    // Doubling the window shifts the root by a bounded fraction of the
    // gap; at this low height the window asymmetry moves it by about
    // 0.36 on a 4.65 gap, well inside the gap/8 budget, and both roots
    // stay strictly inside the bracket.
    auto t = ref_table();
    std::size_t n = 5;
    double lo = t.ordinate(n), hi = t.ordinate(n + 1);
    double gap = hi - lo;
    double g1 = find_gamma_star(t, n, with_delta(20.0)).gamma_star;
    double g2 = find_gamma_star(t, n, with_delta(40.0)).gamma_star;
    CHECK(std::abs(g2 - g1) <= gap / 8.0);
    CHECK(g1 > lo);
    CHECK(g1 < hi);
    CHECK(g2 > lo);
    CHECK(g2 < hi);
}

TEST_CASE("find_gamma_star rejects bad inputs") {
    auto tie = make_table({50.0, 50.0, 60.0, 62.0});
    CHECK_THROWS_AS(find_gamma_star(tie, 1, with_delta(50.0)), ValidationError);
    auto thin = make_table({50.0, 52.0, 52.5});
    CHECK_THROWS_AS(find_gamma_star(thin, 1, with_delta(50.0)), CoverageError);
    auto t = ref_table();
    CHECK_THROWS_AS(find_gamma_star(t, 1, with_delta(50.0), 0.0),
                    ArgumentError);
    CHECK_THROWS_AS(find_gamma_star(t, 0, with_delta(50.0)), CoverageError);
    CHECK_THROWS_AS(find_gamma_star(t, t.size(), with_delta(50.0)),
                    CoverageError);
}

TEST_CASE("construct_tj closed form and flags") {
    auto t = make_table({std::exp(10.0), std::exp(10.0) + 1.0});
    auto tj = construct_tj(t, 1, 2.5);
    CHECK(tj.value ==
          doctest::Approx(std::exp(10.0) + std::pow(10.0, -2.5))
              .epsilon(1e-12));
    CHECK(tj.below_next);

    auto rt = ref_table();
    auto t1 = construct_tj(rt, 1, 3.0);
    CHECK(std::abs(t1.value - 14.18854) <= 1e-4);
    CHECK(t1.below_next);

    // The offset shrinks as C grows once log(gamma) > 1.
    CHECK(construct_tj(rt, 1, 2.5).value > construct_tj(rt, 1, 3.0).value);
    CHECK(construct_tj(rt, 1, 3.0).value > construct_tj(rt, 1, 4.0).value);

    auto crowded = make_table({std::exp(10.0), std::exp(10.0) + 1e-6});
    CHECK_FALSE(construct_tj(crowded, 1, 2.5).below_next);
}

TEST_CASE("construct_tj validation") {
    auto rt = ref_table();
    CHECK_THROWS_AS(construct_tj(rt, 1, 2.0), ArgumentError);
    CHECK_THROWS_AS(construct_tj(rt, 1, -3.0), ArgumentError);
    auto low = make_table({2.0, 30.0});
    CHECK_THROWS_AS(construct_tj(low, 1, 3.0), DomainError);
    auto pair = make_table({std::exp(10.0), std::exp(10.0) + 1.0});
    CHECK_THROWS_AS(construct_tj(pair, 2, 2.5), CoverageError);
}
