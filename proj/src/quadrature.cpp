#include "heatkern/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "heatkern/errors.hpp"

namespace heatkern {

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const double w = 2.0 / ((1 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw InputError("Gauss rule needs at least one node");
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

double integrate_gauss(const std::function<double(double)>& f, double lo, double hi, int n) {
    const GaussRule& rule = gauss_legendre(n);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double acc = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

double integrate_graded(const std::function<double(double)>& f, double scale, double tol,
                             int nodes) {
    // Breakpoints 0, h, 2h, 4h, ..., 1.
    std::vector<double> breaks{0.0};
    const double h = std::clamp(scale, 1e-14, 1.0);
    for (double v = h; v < 1.0; v *= 2.0) breaks.push_back(v);
    breaks.push_back(1.0);

    auto composite = [&](int n) {
        double acc = 0;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
            acc += integrate_gauss(f, breaks[i], breaks[i + 1], n);
        return acc;
    };

    double prev = composite(nodes);
    for (int n = 2 * nodes; n <= 512; n *= 2) {
        const double cur = composite(n);
        if (std::abs(cur - prev) <= tol * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    throw ResolutionError("graded Gauss-Legendre quadrature did not converge");
}

}  // namespace heatkern
