#include "zetagaps/gue.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <utility>

#include "zetagaps/errors.hpp"
#include "zetagaps/parallel.hpp"
#include "zetagaps/quadrature.hpp"

namespace zetagaps::gue {

namespace {

double sinc(double z) {
    if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

SineKernelModel build_model(double t, int quad_order) {
    const quad::Rule& rule = quad::gauss_legendre(quad_order);
    Eigen::MatrixXd a(quad_order, quad_order);
    for (int i = 0; i < quad_order; ++i) {
        double si = std::sqrt(rule.weights[i]);
        for (int j = 0; j <= i; ++j) {
            double arg = 0.5 * M_PI * t * (rule.nodes[i] - rule.nodes[j]);
            double k = 0.5 * t * sinc(arg);
            double v = si * std::sqrt(rule.weights[j]) * k;
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a,
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("sine-kernel eigensolver failed at t = " +
                           std::to_string(t));
    SineKernelModel model;
    model.quad_order = quad_order;
    model.t = t;
    model.eigenvalues.resize(quad_order);
    for (int i = 0; i < quad_order; ++i)
        model.eigenvalues[i] = es.eigenvalues()(quad_order - 1 - i);
    return model;
}

void check_order(int quad_order) {
    if (quad_order < 2)
        throw ArgumentError("quad_order must be >= 2, got " +
                            std::to_string(quad_order));
}

}  // namespace

const SineKernelModel& sine_kernel_model(double t, int quad_order) {
    check_order(quad_order);
    if (!std::isfinite(t) || t < 0.0)
        throw ArgumentError("sine_kernel_model: t must be finite and >= 0");
    static std::mutex mu;
    static std::map<std::pair<int, double>, std::unique_ptr<SineKernelModel>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(quad_order, t);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache
                 .emplace(key, std::make_unique<SineKernelModel>(
                                   build_model(t, quad_order)))
                 .first;
    }
    return *it->second;
}

double fredholm_det(double t, int quad_order) {
    check_order(quad_order);
    if (!std::isfinite(t) || t < 0.0)
        throw ArgumentError("fredholm_det: t must be finite and >= 0");
    if (t == 0.0) return 1.0;
    const SineKernelModel& model = sine_kernel_model(t, quad_order);
    double det = 1.0;
    for (double lam : model.eigenvalues) det *= (1.0 - lam);
    return det;
}

namespace {

double p2_finite_difference(double t, int quad_order, double step,
                            bool* accuracy_warning) {
    auto det = [&](double x) { return fredholm_det(x, quad_order); };
    double e0 = det(t);
    double half = 0.5 * step;
    double d_full = (det(t - step) - 2.0 * e0 + det(t + step)) / (step * step);
    double d_half = (det(t - half) - 2.0 * e0 + det(t + half)) / (half * half);
    double rich = (4.0 * d_half - d_full) / 3.0;
    if (accuracy_warning)
        *accuracy_warning =
            std::abs(d_half - d_full) > 1e-4 + 0.01 * std::abs(rich);
    return rich;
}

// Small-t series of the spacing density, used where the finite
// difference would straddle t = 0: p2(t) = pi^2 t^2/3 - 2 pi^4 t^4/45
// + O(t^6), accurate to ~1e-8 at the switch point.
constexpr double kSeriesCutoff = 0.02;

double p2_series(double t) {
    double p2 = M_PI * M_PI;
    return p2 * t * t / 3.0 - 2.0 * p2 * p2 * t * t * t * t / 45.0;
}

double p2_smooth(double t, int quad_order) {
    if (t <= kSeriesCutoff) return p2_series(t);
    return p2_finite_difference(t, quad_order, 1e-3, nullptr);
}

}  // namespace

double p2_density(double t, int quad_order, double fd_step,
                  bool* accuracy_warning) {
    check_order(quad_order);
    if (!(fd_step > 0.0) || !(t > fd_step))
        throw ArgumentError("p2_density: requires t > fd_step > 0");
    return p2_finite_difference(t, quad_order, fd_step, accuracy_warning);
}

namespace {

constexpr double kPanelWidth = 0.05;

// Cumulative integral of p2_smooth at multiples of kPanelWidth, per
// quadrature order. Grown on demand; guarded so concurrent callers see
// identical values.
double nn_cdf_impl(double c, int quad_order) {
    static std::mutex mu;
    static std::map<int, std::vector<double>> cum_by_order;
    const quad::Rule& rule = quad::gauss_legendre(8);
    auto p2 = [&](double x) { return p2_smooth(x, quad_order); };

    std::size_t full = static_cast<std::size_t>(c / kPanelWidth);
    double base, tail_from;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto& cum = cum_by_order[quad_order];
        if (cum.empty()) cum.push_back(0.0);
        while (cum.size() <= full) {
            double a = (cum.size() - 1) * kPanelWidth;
            cum.push_back(cum.back() + quad::apply(rule, p2, a, a + kPanelWidth));
        }
        base = cum[full];
        tail_from = full * kPanelWidth;
    }
    if (c > tail_from) base += quad::apply(rule, p2, tail_from, c);
    return std::clamp(base, 0.0, 1.0);
}

}  // namespace

double nn_cdf(double c, int quad_order) {
    check_order(quad_order);
    if (!std::isfinite(c) || c < 0.0)
        throw ArgumentError("nn_cdf: c must be finite and >= 0");
    if (c == 0.0) return 0.0;
    return nn_cdf_impl(c, quad_order);
}

LevelProbabilities level_probabilities(double s, int k_max, int quad_order) {
    check_order(quad_order);
    if (!std::isfinite(s) || s < 0.0)
        throw ArgumentError("level_probabilities: s must be finite and >= 0");
    if (k_max < 0)
        throw ArgumentError("level_probabilities: k_max must be >= 0");
    if (k_max > quad_order)
        throw ArgumentError(
            "level_probabilities: k_max exceeds quad_order; the discretized "
            "operator has only quad_order eigenvalues");
    LevelProbabilities lp;
    lp.s = s;
    lp.probs.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    if (s == 0.0) {
        lp.probs[0] = 1.0;
        return lp;
    }
    const SineKernelModel& model = sine_kernel_model(s, quad_order);
    // Pointwise recurrence for prod(1 - lambda + lambda) split by
    // occupancy: after absorbing each eigenvalue, probs[k] is the
    // probability of k occupied modes among those seen so far.
    lp.probs[0] = 1.0;
    for (double lam_raw : model.eigenvalues) {
        double lam = std::clamp(lam_raw, 0.0, 1.0);
        for (std::size_t j = lp.probs.size(); j-- > 1;)
            lp.probs[j] = lp.probs[j] * (1.0 - lam) + lp.probs[j - 1] * lam;
        lp.probs[0] *= (1.0 - lam);
    }
    return lp;
}

void GueSampleConfig::validate() const {
    if (dim < 16) throw ArgumentError("GueSampleConfig: dim must be >= 16");
    if (n_matrices < 1)
        throw ArgumentError("GueSampleConfig: n_matrices must be >= 1");
    if (!(bulk_fraction > 0.0 && bulk_fraction <= 1.0))
        throw ArgumentError(
            "GueSampleConfig: bulk_fraction must be in (0, 1]");
    auto drop = static_cast<long long>(
        std::llround(dim * (1.0 - bulk_fraction) / 2.0));
    if (dim - 2 * drop < 2)
        throw ArgumentError(
            "GueSampleConfig: bulk_fraction keeps fewer than 2 eigenvalues");
}

namespace {

// Integrated semicircle density of the dim-n model (support
// [-2 sqrt(n), 2 sqrt(n)]): F(x) counts eigenvalues expected below x,
// so F-images of the spectrum have unit mean spacing.
double semicircle_cdf(double x, int n) {
    double radius = 2.0 * std::sqrt(static_cast<double>(n));
    x = std::clamp(x, -radius, radius);
    double root = std::sqrt(std::max(0.0, radius * radius - x * x));
    double asin_arg = std::clamp(x / radius, -1.0, 1.0);
    return 0.5 * n +
           (x * root + 4.0 * n * std::asin(asin_arg)) / (4.0 * M_PI);
}

std::vector<double> sample_one_matrix(const GueSampleConfig& cfg,
                                      std::size_t index) {
    std::mt19937_64 rng(derive_stream_seed(cfg.seed, index));
    int n = cfg.dim;
    Eigen::VectorXd diag(n), subdiag(n - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < n; ++i) diag(i) = gauss(rng);
    for (int k = 0; k < n - 1; ++k) {
        // chi with 2(n-1-k) degrees of freedom, divided by sqrt(2)
        std::chi_squared_distribution<double> chisq(2.0 * (n - 1 - k));
        subdiag(k) = std::sqrt(chisq(rng) / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("tridiagonal eigensolver failed at matrix " +
                           std::to_string(index));
    auto drop = static_cast<std::size_t>(
        std::llround(n * (1.0 - cfg.bulk_fraction) / 2.0));
    std::size_t keep = static_cast<std::size_t>(n) - 2 * drop;
    std::vector<double> unfolded(keep);
    for (std::size_t i = 0; i < keep; ++i)
        unfolded[i] = semicircle_cdf(es.eigenvalues()(drop + i), n);
    return unfolded;
}

}  // namespace

std::vector<std::vector<double>> sample_gue(const GueSampleConfig& cfg,
                                            int n_threads) {
    cfg.validate();
    std::vector<std::vector<double>> out(cfg.n_matrices);
    parallel_for(static_cast<std::size_t>(cfg.n_matrices), n_threads,
                 [&](std::size_t i) { out[i] = sample_one_matrix(cfg, i); });
    return out;
}

std::vector<double> collect_spacings(const GueSampleConfig& cfg,
                                     int n_threads) {
    auto seqs = sample_gue(cfg, n_threads);
    std::vector<double> spacings;
    for (const auto& seq : seqs)
        for (std::size_t i = 1; i < seq.size(); ++i)
            spacings.push_back(seq[i] - seq[i - 1]);
    return spacings;
}

McEstimate mc_joint_run_probability(const GueSampleConfig& cfg,
                                    std::span<const double> thresholds,
                                    int n_threads) {
    if (thresholds.empty())
        throw ArgumentError(
            "mc_joint_run_probability: needs at least one threshold");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] >= 0.0) || !std::isfinite(thresholds[i]))
            throw ArgumentError(
                "mc_joint_run_probability: thresholds must be >= 0");
        if (i > 0 && thresholds[i] < thresholds[i - 1])
            throw ArgumentError(
                "mc_joint_run_probability: thresholds must be nondecreasing");
    }
    auto seqs = sample_gue(cfg, n_threads);
    std::size_t r = thresholds.size();
    McEstimate est;
    std::vector<double> props;
    props.reserve(seqs.size());
    for (const auto& seq : seqs) {
        if (seq.size() <= r) continue;
        std::size_t idx = seq.size() - r;
        std::size_t hits = 0;
        for (std::size_t n = 0; n < idx; ++n) {
            bool ok = true;
            for (std::size_t l = 1; l <= r; ++l) {
                if (seq[n + l] - seq[n] > thresholds[l - 1]) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++hits;
        }
        est.n_hits += hits;
        est.n_indices += idx;
        props.push_back(static_cast<double>(hits) / static_cast<double>(idx));
    }
    if (est.n_indices == 0)
        throw ArgumentError(
            "mc_joint_run_probability: no indices (r too large for the bulk)");
    est.value =
        static_cast<double>(est.n_hits) / static_cast<double>(est.n_indices);
    if (props.size() > 1) {
        double mean = 0.0;
        for (double p : props) mean += p;
        mean /= static_cast<double>(props.size());
        double var = 0.0;
        for (double p : props) var += (p - mean) * (p - mean);
        var /= static_cast<double>(props.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(props.size()));
    }
    return est;
}

double ks_distance_vs_nn_cdf(std::span<const double> spacings,
                             int quad_order) {
    check_order(quad_order);
    if (spacings.empty())
        throw ArgumentError("ks_distance_vs_nn_cdf: empty sample");
    std::vector<double> sorted(spacings.begin(), spacings.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0.0)
        throw ArgumentError("ks_distance_vs_nn_cdf: negative spacing");

    // Dense CDF grid + linear interpolation; grid error is O(1e-6),
    // far below sampling noise at any realistic sample size.
    const double step = 0.01;
    std::size_t n_grid =
        static_cast<std::size_t>(std::ceil(sorted.back() / step)) + 1;
    std::vector<double> grid(n_grid + 1);
    grid[0] = 0.0;
    const quad::Rule& rule = quad::gauss_legendre(6);
    auto p2 = [&](double x) { return p2_smooth(x, quad_order); };
    for (std::size_t k = 1; k <= n_grid; ++k) {
        double a = (k - 1) * step;
        double raw = grid[k - 1] + quad::apply(rule, p2, a, a + step);
        grid[k] = std::clamp(raw, grid[k - 1], 1.0);
    }
    auto model_cdf = [&](double x) {
        double u = x / step;
        auto k = static_cast<std::size_t>(u);
        if (k >= n_grid) return grid[n_grid];
        double frac = u - static_cast<double>(k);
        return grid[k] + frac * (grid[k + 1] - grid[k]);
    };

    double ks = 0.0;
    std::size_t n = sorted.size();
    for (std::size_t i = 0; i < n; ++i) {
        double f = model_cdf(sorted[i]);
        double lo = static_cast<double>(i) / static_cast<double>(n);
        double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        ks = std::max({ks, std::abs(f - lo), std::abs(f - hi)});
    }
    return ks;
}

}  // namespace zetagaps::gue
