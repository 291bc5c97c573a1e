#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace zetagaps::gue {

// Discretization of the sine-kernel integral operator for an interval
// of t mean spacings, mapped to (-1, 1): kernel (t/2) *
// sinc(pi t (u - v) / 2), symmetrized with the quadrature weights.
// Eigenvalues descending, all in [0, 1) up to discretization noise;
// their sum equals t (the operator trace).
struct SineKernelModel {
    int quad_order = 0;
    double t = 0.0;
    std::vector<double> eigenvalues;
};

// Cached by (t, quad_order); the returned reference stays valid for
// the process lifetime, and cached results are identical to uncached
// recomputation.
const SineKernelModel& sine_kernel_model(double t, int quad_order = 40);

// det(I - Q_t) = prod(1 - lambda_i): probability that an interval of t
// mean spacings holds no point. Exactly 1 at t = 0; nonincreasing.
double fredholm_det(double t, int quad_order = 40);

// Nearest-neighbor spacing density p2(t) = second t-derivative of
// fredholm_det, by a central difference with one Richardson step.
// *accuracy_warning (optional) is set when the two step sizes disagree
// enough that fd_step is suspect. Requires t > fd_step > 0.
double p2_density(double t, int quad_order = 40, double fd_step = 1e-3,
                  bool* accuracy_warning = nullptr);

// CDF of the nearest-neighbor spacing: integral of p2_density over
// [0, c], in [0, 1]. Panel results are cached on an absolute grid so
// repeated calls stay cheap.
double nn_cdf(double c, int quad_order = 40);

// E(k; s) for k = 0..k_max: probability that an interval of s mean
// spacings holds exactly k points. Computed from the eigenvalue
// product det(I - zQ_s) = prod(1 - z lambda_i) as a polynomial in z,
// via the elementary-symmetric-function recurrence; no finite
// differencing.
struct LevelProbabilities {
    double s = 0.0;
    std::vector<double> probs;
};
LevelProbabilities level_probabilities(double s, int k_max,
                                       int quad_order = 40);

// Monte-Carlo side: tridiagonal Hermite (beta = 2) sampler whose
// eigenvalue law equals the GUE's, unfolded by the integrated
// semicircle so bulk spacings have mean 1.
struct GueSampleConfig {
    int dim = 200;
    int n_matrices = 1000;
    std::uint64_t seed = 1;
    double bulk_fraction = 0.8;  // central fraction kept after unfolding
    void validate() const;       // throws ArgumentError
};

// One ascending unfolded bulk sequence per matrix. Deterministic for a
// given (config, build): per-matrix generator seeds are derived from
// (seed, matrix index), so the thread count never changes values.
std::vector<std::vector<double>> sample_gue(const GueSampleConfig& cfg,
                                            int n_threads = 1);

// Consecutive unfolded spacings pooled over all matrices.
std::vector<double> collect_spacings(const GueSampleConfig& cfg,
                                     int n_threads = 1);

// Monte-Carlo estimate of the joint run event: fraction of bulk
// indices n with u_{n+l} - u_n <= thresholds[l-1] for every l.
// Thresholds nondecreasing. std_error is the between-matrix standard
// error of the per-matrix proportions.
struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_hits = 0;
    std::size_t n_indices = 0;
};
McEstimate mc_joint_run_probability(const GueSampleConfig& cfg,
                                    std::span<const double> thresholds,
                                    int n_threads = 1);

// Kolmogorov-Smirnov distance between an empirical spacing sample and
// the model CDF nn_cdf (evaluated on a fine grid with linear
// interpolation, error far below the distances of interest).
double ks_distance_vs_nn_cdf(std::span<const double> spacings,
                             int quad_order = 40);

}  // namespace zetagaps::gue
