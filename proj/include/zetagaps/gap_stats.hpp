#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "zetagaps/zero_data.hpp"

namespace zetagaps::gapstats {

// Which log normalizes a gap to mean-spacing units: the global log T
// of the run statistics, or the local log(gamma_n) of the rescaled
// consecutive differences. Never mix the two in one distribution.
enum class Normalization { global_log_t, local_log_gamma };

// How the complement of the run event is partitioned into failure
// classes S_j. minimal_failure classes an index by the position of its
// FIRST sub-threshold gap, which makes {runs} + S_1 + ... + S_r an
// exact partition of the indices up to N(T). literal_prefix classes by
// "j leading gaps at or above threshold, then a failure", which skips
// indices whose first gap already fails twice over; it is kept for
// comparison and carries no partition identity.
enum class PartitionConvention { minimal_failure, literal_prefix };

struct RunReport {
    int r = 0;
    double c = 0.0;
    double T = 0.0;
    std::size_t n_total = 0;  // N(T)
    std::size_t n_runs = 0;   // indices whose next r gaps are all moderate
    std::vector<std::size_t> s_sizes;  // |S_1| ... |S_r|
    // n_total - n_runs - sum(s_sizes); 0 under minimal_failure.
    long long partition_residual = 0;
};

struct SpacingDistribution {
    std::vector<double> bin_edges;       // strictly increasing
    std::vector<std::size_t> counts;     // size = edges - 1
    std::size_t n_samples = 0;           // includes out-of-range samples
    Normalization normalization = Normalization::global_log_t;
};

struct AhHistogram {
    double T = 0.0;
    std::map<int, std::size_t> bin_counts;  // half-integer index k -> count
    std::map<int, double> p_values;         // k -> bin_count / N(T)
};

// Absolute gap size 2*pi*c / log T that counts as "moderate" at
// height T.
double moderate_threshold(double T, double c);

// N_r(T, c) with the S_j partition. Needs r lookahead ordinates past
// N(T); missing lookahead is a CoverageError, never a silent drop.
RunReport count_runs(const OrdinateTable& table, int r, double c, double T,
                     PartitionConvention convention =
                         PartitionConvention::minimal_failure);

// Just the |S_j| sizes of count_runs.
std::vector<std::size_t> partition_sj(const OrdinateTable& table, int r,
                                      double c, double T,
                                      PartitionConvention convention =
                                          PartitionConvention::minimal_failure);

// (1/N(T)) * #{ordered pairs m < n, both ordinates <= T, with
// 0 < gamma_n - gamma_m < 2*pi*c/log T}. Two-pointer sweep, O(N + pairs).
// Exact ties are excluded by the strict lower inequality.
double empirical_pair_correlation(const OrdinateTable& table, double c,
                                  double T);

// (1/N(T)) * #{n <= N(T): gamma_{n+ell} - gamma_n <= 2*pi*c/log T}.
double neighbor_spacing_cdf(const OrdinateTable& table, std::size_t ell,
                            double c, double T);

// (1/N(T)) * #{n <= N(T): gamma_{n+ell} - gamma_n <= 2*pi*c_ell/log T
// for every ell}. Thresholds must be nondecreasing (anything else is a
// disguised tightening; rejected to avoid silent reinterpretation).
double joint_run_probability(const OrdinateTable& table,
                             std::span<const double> thresholds, double T);

// (gamma_{n+1} log gamma_{n+1} - gamma_n log gamma_n) / (2*pi), the
// locally rescaled consecutive difference.
double ah_rescaled_difference(const OrdinateTable& table, std::size_t n);

// Bins each rescaled difference to its nearest half-integer k/2:
// bin k covers [max(k/2 - 1/4, 0), k/2 + 1/4). The bins tile [0, inf),
// so the p_values over ordinates up to T sum to 1.
AhHistogram ah_binning(const OrdinateTable& table, double T);

// Histogram of normalized ell-th neighbor gaps for ordinates up to T.
// Bin edges are {0, bin_width, ..., ceil(max_value/bin_width) bins};
// samples at or above the last edge are counted in n_samples only.
SpacingDistribution spacing_histogram(const OrdinateTable& table,
                                      std::size_t ell, double T,
                                      Normalization normalization,
                                      double bin_width, double max_value);

}  // namespace zetagaps::gapstats
