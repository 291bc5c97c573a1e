#include "zetagaps/gap_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zetagaps/errors.hpp"

namespace zetagaps::gapstats {

namespace {

constexpr std::size_t kNoFailure = std::numeric_limits<std::size_t>::max();

void require_log_height(double T, const char* op) {
    if (!std::isfinite(T) || T <= 1.0)
        throw DomainError(std::string(op) + ": requires T > 1");
}

std::size_t counted_total(const OrdinateTable& table, double T,
                          const char* op) {
    std::size_t n_total = table.count_upto(T);
    if (n_total == 0)
        throw DomainError(std::string(op) +
                          ": no ordinates at or below T, statistic undefined");
    return n_total;
}

void require_lookahead(const OrdinateTable& table, std::size_t n_total,
                       std::size_t ahead, const char* op) {
    if (n_total + ahead > table.size())
        throw CoverageError(std::string(op) + ": needs " +
                            std::to_string(ahead) +
                            " ordinates beyond N(T) = " +
                            std::to_string(n_total) + " but table has " +
                            std::to_string(table.size()));
}

// first_failure[i] = smallest gap index j >= i (0-based, within
// [0, n_gaps)) whose gap falls below thr, or kNoFailure.
std::vector<std::size_t> first_failure_index(std::span<const double> ords,
                                             std::size_t n_gaps, double thr) {
    std::vector<std::size_t> next(n_gaps + 1, kNoFailure);
    for (std::size_t i = n_gaps; i-- > 0;) {
        double gap = ords[i + 1] - ords[i];
        next[i] = (gap < thr) ? i : next[i + 1];
    }
    return next;
}

}  // namespace

double moderate_threshold(double T, double c) {
    require_log_height(T, "moderate_threshold");
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("moderate_threshold: c must be positive and finite");
    return 2.0 * M_PI * c / std::log(T);
}

RunReport count_runs(const OrdinateTable& table, int r, double c, double T,
                     PartitionConvention convention) {
    if (r < 1) throw ArgumentError("count_runs: r must be >= 1");
    double thr = moderate_threshold(T, c);
    std::size_t n_total = counted_total(table, T, "count_runs");
    std::size_t ru = static_cast<std::size_t>(r);
    // The literal convention inspects one gap past the run window.
    std::size_t ahead =
        (convention == PartitionConvention::minimal_failure) ? ru : ru + 1;
    require_lookahead(table, n_total, ahead, "count_runs");

    auto ords = table.ordinates();
    std::size_t n_gaps = n_total - 1 + ahead;
    std::vector<std::size_t> next = first_failure_index(ords, n_gaps, thr);

    RunReport rep;
    rep.r = r;
    rep.c = c;
    rep.T = T;
    rep.n_total = n_total;
    rep.s_sizes.assign(ru, 0);
    for (std::size_t n = 0; n < n_total; ++n) {  // 0-based; gap n is g_{n+1}
        std::size_t f =
            (next[n] == kNoFailure) ? kNoFailure : next[n] - n;  // offset
        if (f >= ru) ++rep.n_runs;
        if (convention == PartitionConvention::minimal_failure) {
            if (f < ru) ++rep.s_sizes[f];
        } else {
            // literal_prefix: exactly f leading moderate gaps, then a
            // failure at offset f; covers 1 <= f <= r only.
            if (f >= 1 && f <= ru) ++rep.s_sizes[f - 1];
        }
    }
    long long sum = 0;
    for (std::size_t s : rep.s_sizes) sum += static_cast<long long>(s);
    rep.partition_residual = static_cast<long long>(rep.n_total) -
                             static_cast<long long>(rep.n_runs) - sum;
    return rep;
}

std::vector<std::size_t> partition_sj(const OrdinateTable& table, int r,
                                      double c, double T,
                                      PartitionConvention convention) {
    return count_runs(table, r, c, T, convention).s_sizes;
}

double empirical_pair_correlation(const OrdinateTable& table, double c,
                                  double T) {
    double thr = moderate_threshold(T, c);
    std::size_t n_total = counted_total(table, T, "empirical_pair_correlation");
    auto ords = table.ordinates();
    std::size_t lo = 0;
    std::size_t tie_streak = 0;
    unsigned long long pairs = 0;
    for (std::size_t n = 1; n < n_total; ++n) {
        while (ords[n] - ords[lo] >= thr) ++lo;
        tie_streak = (ords[n] == ords[n - 1]) ? tie_streak + 1 : 0;
        // Window [lo, n) holds every m with difference < thr; the
        // trailing tie_streak of them are exact ties, excluded by the
        // strict 0 < difference.
        pairs += (n - lo) - tie_streak;
    }
    return static_cast<double>(pairs) / static_cast<double>(n_total);
}

namespace {

double neighbor_threshold(double T, double c, const char* op) {
    require_log_height(T, op);
    if (!(c >= 0.0) || !std::isfinite(c))
        throw ArgumentError(std::string(op) + ": c must be >= 0 and finite");
    return 2.0 * M_PI * c / std::log(T);
}

}  // namespace

double neighbor_spacing_cdf(const OrdinateTable& table, std::size_t ell,
                            double c, double T) {
    if (ell < 1) throw ArgumentError("neighbor_spacing_cdf: ell must be >= 1");
    double thr = neighbor_threshold(T, c, "neighbor_spacing_cdf");
    std::size_t n_total = counted_total(table, T, "neighbor_spacing_cdf");
    require_lookahead(table, n_total, ell, "neighbor_spacing_cdf");
    auto ords = table.ordinates();
    std::size_t hits = 0;
    for (std::size_t n = 0; n < n_total; ++n)
        if (ords[n + ell] - ords[n] <= thr) ++hits;
    return static_cast<double>(hits) / static_cast<double>(n_total);
}

double joint_run_probability(const OrdinateTable& table,
                             std::span<const double> thresholds, double T) {
    if (thresholds.empty())
        throw ArgumentError("joint_run_probability: needs at least one threshold");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] >= 0.0) || !std::isfinite(thresholds[i]))
            throw ArgumentError(
                "joint_run_probability: thresholds must be >= 0 and finite");
        if (i > 0 && thresholds[i] < thresholds[i - 1])
            throw ArgumentError(
                "joint_run_probability: thresholds must be nondecreasing");
    }
    require_log_height(T, "joint_run_probability");
    std::size_t n_total = counted_total(table, T, "joint_run_probability");
    std::size_t r = thresholds.size();
    require_lookahead(table, n_total, r, "joint_run_probability");
    double scale = 2.0 * M_PI / std::log(T);
    auto ords = table.ordinates();
    std::size_t hits = 0;
    for (std::size_t n = 0; n < n_total; ++n) {
        bool ok = true;
        for (std::size_t l = 1; l <= r; ++l) {
            if (ords[n + l] - ords[n] > scale * thresholds[l - 1]) {
                ok = false;
                break;
            }
        }
        if (ok) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n_total);
}

double ah_rescaled_difference(const OrdinateTable& table, std::size_t n) {
    double lo = table.ordinate(n);
    double hi = table.ordinate(n + 1);  // CoverageError when absent
    if (lo <= 1.0)
        throw DomainError("ah_rescaled_difference: requires ordinate > 1");
    return (hi * std::log(hi) - lo * std::log(lo)) / (2.0 * M_PI);
}

AhHistogram ah_binning(const OrdinateTable& table, double T) {
    std::size_t n_total = counted_total(table, T, "ah_binning");
    require_lookahead(table, n_total, 1, "ah_binning");
    AhHistogram h;
    h.T = T;
    for (std::size_t n = 1; n <= n_total; ++n) {
        double d = ah_rescaled_difference(table, n);
        // Unique k with max(k/2 - 1/4, 0) <= d < k/2 + 1/4.
        int k = std::max(0, static_cast<int>(std::floor(2.0 * d + 0.5)));
        ++h.bin_counts[k];
    }
    for (const auto& [k, cnt] : h.bin_counts)
        h.p_values[k] = static_cast<double>(cnt) / static_cast<double>(n_total);
    return h;
}

SpacingDistribution spacing_histogram(const OrdinateTable& table,
                                      std::size_t ell, double T,
                                      Normalization normalization,
                                      double bin_width, double max_value) {
    if (ell < 1) throw ArgumentError("spacing_histogram: ell must be >= 1");
    if (!(bin_width > 0.0) || !(max_value > 0.0))
        throw ArgumentError(
            "spacing_histogram: bin_width and max_value must be positive");
    require_log_height(T, "spacing_histogram");
    std::size_t n_total = counted_total(table, T, "spacing_histogram");
    require_lookahead(table, n_total, ell, "spacing_histogram");

    std::size_t n_bins =
        static_cast<std::size_t>(std::ceil(max_value / bin_width));
    SpacingDistribution dist;
    dist.normalization = normalization;
    dist.bin_edges.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i)
        dist.bin_edges[i] = static_cast<double>(i) * bin_width;
    dist.counts.assign(n_bins, 0);
    dist.n_samples = n_total;

    double global_scale = std::log(T) / (2.0 * M_PI);
    auto ords = table.ordinates();
    for (std::size_t n = 0; n < n_total; ++n) {
        double gap = ords[n + ell] - ords[n];
        double scale = (normalization == Normalization::global_log_t)
                           ? global_scale
                           : std::log(ords[n]) / (2.0 * M_PI);
        double x = gap * scale;
        auto bin = static_cast<std::size_t>(x / bin_width);
        if (x >= 0.0 && bin < n_bins) ++dist.counts[bin];
    }
    return dist;
}

}  // namespace zetagaps::gapstats
