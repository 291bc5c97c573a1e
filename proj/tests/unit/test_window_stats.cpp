#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "zetagaps/errors.hpp"
#include "zetagaps/window_stats.hpp"

using namespace zetagaps;
using namespace zetagaps::windows;
using testsupport::lattice_ordinates;
using testsupport::lcg_ordinates;
using testsupport::make_table;
using testsupport::ref_table;

TEST_CASE("window width and detection threshold formulas") {
    WindowConfig cfg;
    cfg.T = 100.0;
    cfg.m = 4;
    CHECK(cfg.h() == 2.0 * M_PI * 4.0 / std::log(100.0));
    CHECK(std::abs(moderate_gap_threshold(5000.0) - 0.49180) <= 1e-4);
    CHECK(moderate_gap_threshold(100.0) ==
          doctest::Approx(4.0 * M_PI / (3.0 * std::log(100.0)))
              .epsilon(1e-14));
    CHECK_THROWS_AS(moderate_gap_threshold(1.0), DomainError);
    CHECK_THROWS_AS(moderate_gap_threshold(0.0), DomainError);
}

TEST_CASE("WindowConfig validation") {
    WindowConfig cfg;
    cfg.T = 100.0;
    cfg.m = 2;
    cfg.r = 3;
    CHECK_NOTHROW(cfg.validate());
    WindowConfig bad = cfg;
    bad.T = 0.5;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = cfg;
    bad.m = 0;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = cfg;
    bad.r = 0;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = cfg;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = cfg;
    bad.epsilon = 1.0;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("window_counts telescopes to the total count") {
    auto t = ref_table();
    WindowConfig cfg;
    cfg.T = 100.0;
    cfg.m = 2;
    cfg.r = 3;
    double h = cfg.h();
    for (double site : {101.0, 120.5, 150.25, 200.0}) {
        auto counts = window_counts(t, site, cfg);
        REQUIRE(counts.size() == 3);
        std::size_t sum = 0;
        for (std::size_t c : counts) sum += c;
        CHECK(sum == t.count_upto(site + 3 * h) - t.count_upto(site));
    }
    // A window past the last ordinate cannot be counted silently.
    CHECK_THROWS_AS(window_counts(t, 265.0, cfg), CoverageError);
}

TEST_CASE("window_counts sees an empty stretch as zeros") {
    auto t = make_table({1.0, 500.0});
    WindowConfig cfg;
    cfg.T = 100.0;
    cfg.m = 1;
    cfg.r = 4;
    for (std::size_t c : window_counts(t, 150.0, cfg)) CHECK(c == 0);
}

TEST_CASE("variance_integral closed-form cases") {
    // No ordinates ever inside the sliding window: constant deviation m.
    auto empty_band = make_table({5.0, 30.0});
    CHECK(variance_integral(empty_band, 10.0, 1.0, 2.0) == 40.0);
    // One ordinate crossing the window interior: deviation 1 on a
    // t-interval of exactly the window width.
    auto one_zero = make_table({17.0, 30.0});
    CHECK(variance_integral(one_zero, 10.0, 1.0, 0.0) == 1.0);
}

TEST_CASE("variance_integral validation") {
    auto t = make_table({5.0});
    CHECK_THROWS_AS(variance_integral(t, 10.0, 1.0, 0.0), CoverageError);
    auto big = make_table({5.0, 30.0});
    CHECK_THROWS_AS(variance_integral(big, 0.5, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(variance_integral(big, 10.0, 0.0, 0.0), ArgumentError);
    CHECK_THROWS_AS(variance_integral(big, 10.0, -2.0, 0.0), ArgumentError);
}

TEST_CASE("variance_integral matches the segment-enumeration oracle") {
    auto rt = ref_table();
    auto rords = rt.ordinates();
    for (double m : {0.0, 3.0, 2.0 * std::log(60.0) / (2.0 * M_PI)}) {
        double lib = variance_integral(rt, 60.0, 2.0, m);
        double orc = testsupport::segment_variance(rords, 60.0, 2.0, m);
        CHECK(std::abs(lib - orc) <= 1e-9 * std::max(1.0, std::abs(orc)));
    }
    auto st = make_table(lcg_ordinates(1000, 11));
    auto sords = st.ordinates();
    for (double m : {0.0, 5.0}) {
        double lib = variance_integral(st, 150.0, 3.0, m);
        double orc = testsupport::segment_variance(sords, 150.0, 3.0, m);
        CHECK(std::abs(lib - orc) <= 1e-9 * std::max(1.0, std::abs(orc)));
    }
}

TEST_CASE("variance_integral default m equals the mean window count") {
    auto rt = ref_table();
    double derived = 2.0 * std::log(60.0) / (2.0 * M_PI);
    CHECK(variance_integral(rt, 60.0, 2.0) ==
          variance_integral(rt, 60.0, 2.0, derived));
}

TEST_CASE("variance_integral agrees with a fine Riemann sum on lattice data") {
    // Dyadic fixture: ordinates on the 1/64 grid, T and h powers of two,
    // step 2^-10. Every breakpoint of the step integrand then lies on the
    // Riemann grid, so the left-endpoint sum is the exact integral.
    auto ords = lattice_ordinates(2500, 64.0, 3);
    auto t = make_table(ords);
    REQUIRE(t.height_max() >= 129.0);
    double step = 0.0009765625;  // 2^-10, below 1e-3 * h
    double sweep = variance_integral(t, 64.0, 1.0, 16.0);
    double riemann =
        testsupport::riemann_variance(t.ordinates(), 64.0, 1.0, 16.0, step);
    CHECK(std::abs(sweep - riemann) <= 1e-6 * std::abs(sweep));
}

TEST_CASE("good_set_measure on hand-checkable tables") {
    // No ordinates at all in the scanned band: every site fails m = 1.
    auto barren = make_table({1.0, 500.0});
    WindowConfig cfg;
    cfg.T = 100.0;
    cfg.m = 1;
    cfg.r = 1;
    CHECK(good_set_measure(barren, cfg) == 0.0);
    CHECK(good_set_measure_exact(barren, cfg) == 0.0);

    // A single ordinate in the band: the good set is one interval of
    // length exactly h (the site positions whose window holds it).
    auto lone = make_table({1.0, 180.0, 500.0});
    double h = cfg.h();
    double exact = good_set_measure_exact(lone, cfg);
    CHECK(exact == doctest::Approx(h / 100.0).epsilon(1e-9));
    double grid = good_set_measure(lone, cfg);
    CHECK(std::abs(grid - exact) <= 2.0 * (h / 16.0) / 100.0);
}

TEST_CASE("grid and exact good-set measures agree on synthetic data") {
    auto t = make_table(lcg_ordinates(3000, 21));
    WindowConfig cfg;
    cfg.T = 300.0;
    cfg.m = 2;
    cfg.r = 1;
    double exact = good_set_measure_exact(t, cfg);
    double grid = good_set_measure(t, cfg, cfg.h() / 128.0);
    CHECK(exact > 0.0);
    CHECK(exact < 1.0);
    CHECK(std::abs(grid - exact) <= 0.02);
}

TEST_CASE("good_set_measure argument handling") {
    auto t = make_table(lcg_ordinates(3000, 21));
    WindowConfig cfg;
    cfg.T = 300.0;
    cfg.m = 2;
    cfg.r = 1;
    CHECK_THROWS_AS(good_set_measure(t, cfg, 400.0), ArgumentError);
    WindowConfig multi = cfg;
    multi.r = 2;
    CHECK_THROWS_AS(good_set_measure_exact(t, multi), ArgumentError);
    CHECK_NOTHROW(good_set_measure(t, multi));
    WindowConfig far = cfg;
    far.T = 2000.0;  // band ends beyond the table
    CHECK_THROWS_AS(good_set_measure(t, far), CoverageError);
}

TEST_CASE("window_moderate_gap conventions") {
    auto t = make_table({1.0, 180.0, 500.0});
    WindowConfig cfg;
    cfg.T = 100.0;
    cfg.m = 1;
    cfg.r = 1;
    double h = cfg.h();
    double thr = moderate_gap_threshold(cfg.T);

    // Empty window: the whole width is one boundary gap.
    auto empty_b = window_moderate_gap(t, 150.0, cfg);
    REQUIRE(empty_b.size() == 1);
    CHECK(empty_b[0].max_gap == doctest::Approx(h).epsilon(1e-12));
    CHECK(empty_b[0].has_moderate_gap);
    auto empty_i =
        window_moderate_gap(t, 150.0, cfg, GapConvention::interior_only);
    CHECK(empty_i[0].max_gap == 0.0);
    CHECK_FALSE(empty_i[0].has_moderate_gap);

    // One interior ordinate at 180, site 179: boundary convention sees the
    // left edge segment of length 1, interior convention sees nothing.
    auto one_b = window_moderate_gap(t, 179.0, cfg);
    CHECK(one_b[0].max_gap == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one_b[0].has_moderate_gap == (one_b[0].max_gap >= thr));
    auto one_i =
        window_moderate_gap(t, 179.0, cfg, GapConvention::interior_only);
    CHECK(one_i[0].max_gap == 0.0);
}

TEST_CASE("window gaps on a unit lattice") {
    // Ordinates k + 0.25 with h very close to 2: each window holds two
    // ordinates spaced 1 apart, so the largest segment is 1 under the
    // boundary convention, clearly above the threshold 2/3.
    std::vector<double> lattice;
    for (int k = 1; k <= 1100; ++k) lattice.push_back(k + 0.25);
    auto t = make_table(lattice);
    WindowConfig cfg;
    cfg.T = std::exp(2.0 * M_PI);
    cfg.m = 2;
    cfg.r = 2;
    auto gaps = window_moderate_gap(t, 540.25, cfg);
    REQUIRE(gaps.size() == 2);
    for (const auto& g : gaps) {
        CHECK(g.max_gap == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(g.has_moderate_gap);
    }
}

TEST_CASE("boundary-convention max gap obeys the pigeonhole bound") {
    auto t = ref_table();
    WindowConfig cfg;
    cfg.T = 100.0;
    cfg.m = 2;
    cfg.r = 3;
    double h = cfg.h();
    for (double site = 101.0; site + 3 * h < 260.0; site += 7.0) {
        auto rep = window_report(t, site, cfg);
        REQUIRE(rep.max_gaps.size() == rep.counts.size());
        for (std::size_t j = 0; j < rep.counts.size(); ++j) {
            double bound = h / (static_cast<double>(rep.counts[j]) + 1.0);
            CHECK(rep.max_gaps[j] + 1e-9 >= bound);
        }
    }
}

TEST_CASE("window_report bound flag is consistent with its counts") {
    auto t = ref_table();
    WindowConfig cfg;
    cfg.T = 100.0;
    cfg.m = 2;
    cfg.r = 3;
    for (double site : {101.0, 130.0, 166.5, 210.0}) {
        auto rep = window_report(t, site, cfg);
        bool expect = true;
        for (std::size_t c : rep.counts) {
            double cnt = static_cast<double>(c);
            if (!(cnt > cfg.m / 2.0 && cnt < 3.0 * cfg.m / 2.0)) expect = false;
        }
        CHECK(rep.all_within_bounds == expect);
        CHECK(rep.site == site);
        CHECK(rep.has_moderate_gap.size() == rep.max_gaps.size());
    }
}
