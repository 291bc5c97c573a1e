#include "zetagaps/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <sstream>

#include "zetagaps/errors.hpp"

namespace zetagaps::quad {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    // (1 - x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x))
    double deriv = n * (p0 - x * p1) / (1.0 - x * x);
    return {p1, deriv};
}

Rule build_rule(int n) {
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-flavored initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            auto [p, dp] = legendre_with_derivative(n, x);
            deriv = dp;
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                deriv = legendre_with_derivative(n, x).second;
                break;
            }
        }
        double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
        double dp = legendre_with_derivative(n, 0.0).second;
        rule.weights[n / 2] = 2.0 / (dp * dp);
    }
    return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
    if (n < 2 || n > 512) {
        throw ArgumentError("gauss_legendre: order must be in [2, 512], got " +
                            std::to_string(n));
    }
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Rule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_unique<Rule>(build_rule(n))).first;
    }
    return *it->second;
}

double apply(const Rule& rule, const std::function<double(double)>& fn,
             double a, double b) {
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < rule.order(); ++i) {
        double x = mid + half * rule.nodes[i];
        double v = fn(x);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "integrand returned non-finite value at x = " << x;
            throw DomainError(os.str());
        }
        sum += rule.weights[i] * v;
    }
    return half * sum;
}

namespace {

struct Panel {
    double a, b;
    double refined;  // two-half estimate, the value we report
    double left, right;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace

Integral integrate_adaptive(const std::function<double(double)>& fn, double a,
                            double b, double abs_tol,
                            std::span<const double> breakpoints, int rule_order,
                            int max_panels) {
    if (!(std::isfinite(a) && std::isfinite(b))) {
        throw ArgumentError("integrate_adaptive: endpoints must be finite");
    }
    if (a > b) {
        throw ArgumentError("integrate_adaptive: requires a <= b");
    }
    if (abs_tol <= 0.0) {
        throw ArgumentError("integrate_adaptive: abs_tol must be positive");
    }
    Integral out;
    if (a == b) return out;

    const Rule& rule = gauss_legendre(rule_order);
    long evals = 0;
    auto eval_panel = [&](double lo, double hi) {
        evals += rule.order();
        return apply(rule, fn, lo, hi);
    };
    // whole: one-shot estimate over [lo, hi], reused from the parent split.
    auto make_panel = [&](double lo, double hi, double whole) {
        double mid = 0.5 * (lo + hi);
        Panel p;
        p.a = lo;
        p.b = hi;
        p.left = eval_panel(lo, mid);
        p.right = eval_panel(mid, hi);
        p.refined = p.left + p.right;
        p.err = std::abs(whole - p.refined);
        return p;
    };

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints) {
        if (x > a && x < b) edges.push_back(x);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = make_panel(edges[i], edges[i + 1],
                             eval_panel(edges[i], edges[i + 1]));
        total += p.refined;
        total_err += p.err;
        heap.push(p);
    }

    while (total_err > abs_tol &&
           static_cast<int>(heap.size()) < max_panels) {
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Panel is at floating-point resolution; its error estimate
            // cannot shrink further. Accept it and move on.
            total_err -= worst.err;
            worst.err = 0.0;
            heap.push(worst);
            continue;
        }
        total -= worst.refined;
        total_err -= worst.err;
        Panel lo = make_panel(worst.a, mid, worst.left);
        Panel hi = make_panel(mid, worst.b, worst.right);
        total += lo.refined + hi.refined;
        total_err += lo.err + hi.err;
        heap.push(lo);
        heap.push(hi);
    }
    if (total_err > abs_tol) {
        std::ostringstream os;
        os << "integrate_adaptive: error estimate " << total_err
           << " above tolerance " << abs_tol << " after " << heap.size()
           << " panels";
        throw ConvergenceError(os.str());
    }

    out.value = total;
    out.abs_error = total_err;
    out.evaluations = evals;
    out.panels = static_cast<int>(heap.size());
    return out;
}

}  // namespace zetagaps::quad
