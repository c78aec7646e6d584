#include "heatkern/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "heatkern/errors.hpp"
#include "heatkern/quadrature.hpp"

namespace heatkern {

namespace {

constexpr double pi = std::numbers::pi;

bool is_nonpositive_integer(double s) { return s <= 0 && s == std::round(s); }

// sum over n in Z of exp(-c n^2), c > 0.
double gaussian_sum(double c) {
    double sum = 1.0;
    for (int n = 1;; ++n) {
        const double term = 2.0 * std::exp(-c * n * n);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

double theta_direct(double t) {
    if (!(t > 0)) throw DomainError("theta needs t > 0");
    return gaussian_sum(pi * pi / t);
}

double theta_dual(double t) {
    if (!(t > 0)) throw DomainError("theta needs t > 0");
    return std::sqrt(t / pi) * gaussian_sum(t);
}

double theta(double t, const SpecialFunctionConfig& cfg) {
    if (!(t > 0)) throw DomainError("theta needs t > 0");
    return t <= cfg.theta_crossover ? theta_direct(t) : theta_dual(t);
}

double alpha_series(double z) {
    // term_k = k!/(2k+1)! (-z)^k; term_{k+1}/term_k = -z / (2(2k+3)).
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 1000; ++k) {
        term *= -z / (2.0 * (2 * k + 3));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

namespace {

constexpr double alpha_series_radius = 4.0;

double alpha_derivative_series(double z) {
    // sum_{k>=1} k * k!/(2k+1)! (-1)^k z^{k-1}
    double coeff = 1.0;  // k!/(2k+1)! (-1)^k at k = 0
    double sum = 0.0, zpow = 1.0;
    for (int k = 1; k < 1000; ++k) {
        coeff *= -1.0 / (2.0 * (2 * k + 1));
        const double term = k * coeff * zpow;
        sum += term;
        zpow *= z;
        if (k > 2 && std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Length scale in v = 1 - xi on which exp(-v(2-v) z/4) varies.
double alpha_scale(double z) { return z > 4.0 ? 4.0 / z : 1.0; }

}  // namespace

double alpha(double z, const SpecialFunctionConfig& cfg) {
    if (std::abs(z) <= alpha_series_radius) return alpha_series(z);
    return integrate_graded([z](double v) { return std::exp(-v * (2.0 - v) * z / 4.0); },
                            alpha_scale(z), cfg.tolerance, cfg.nodes);
}

double alpha_derivative(double z, const SpecialFunctionConfig& cfg) {
    if (std::abs(z) <= alpha_series_radius) return alpha_derivative_series(z);
    return integrate_graded(
        [z](double v) {
            const double w = v * (2.0 - v) / 4.0;
            return -w * std::exp(-w * z);
        },
        alpha_scale(z), cfg.tolerance, cfg.nodes);
}

double f_minus_half_closed(double z) {
    if (z < 0) throw DomainError("f_q needs z >= 0");
    if (z == 0) return 1.0;
    return 2.0 / std::sqrt(z) * std::asin(1.0 / std::sqrt(1.0 + 4.0 / z));
}

double f_q_quadrature(double q, double z, const SpecialFunctionConfig& cfg) {
    if (z < 0) throw DomainError("f_q needs z >= 0");
    const double scale = z > 4.0 ? 4.0 / z : 1.0;
    return integrate_graded([q, z](double v) { return std::pow(1.0 + v * (2.0 - v) * z / 4.0, q); },
                            scale, cfg.tolerance, cfg.nodes);
}

double f_q(double q, double z, const SpecialFunctionConfig& cfg) {
    if (z < 0) throw DomainError("f_q needs z >= 0");
    if (z == 0) return 1.0;
    if (q == -1.5) return 4.0 / (z + 4.0);
    if (q == -0.5) return f_minus_half_closed(z);
    if (q >= 0 && q == std::round(q) && q <= 64) {
        // sum_j q!/(q-j)! * j!/(2j+1)! z^j
        const int m = static_cast<int>(q);
        double coeff = 1.0, sum = 1.0, zpow = 1.0;
        for (int j = 1; j <= m; ++j) {
            coeff *= static_cast<double>(m - j + 1) * j / ((2.0 * j) * (2.0 * j + 1));
            zpow *= z;
            sum += coeff * zpow;
        }
        return sum;
    }
    return f_q_quadrature(q, z, cfg);
}

double f_q_asymptotic_prefactor(double q) {
    if (!(q > -1)) throw DomainError("large-z law of f_q needs q > -1");
    const double g = std::tgamma(q + 1.0);
    return g * g / std::tgamma(2.0 * q + 2.0);
}

namespace {

// gamma(s, x) / (x^s e^{-x}) = sum_j x^j / (s (s+1) ... (s+j)), valid for
// any s that is not a non-positive integer.
double lower_series_scaled(double s, double x) {
    double term = 1.0 / s, sum = term;
    for (int j = 1; j < 100000; ++j) {
        term *= x / (s + j);
        sum += term;
        if (s + j > x && std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Modified Lentz evaluation of Gamma(s, x) e^x x^{-s}.
double upper_fraction_scaled(double s, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return h;
    }
    throw ResolutionError("incomplete gamma continued fraction did not converge");
}

double exponential_integral_e1(double x) {
    if (x >= 1.0) return std::exp(-x) * upper_fraction_scaled(0.0, x);
    // E1(x) = -gamma - ln x - sum_{j>=1} (-x)^j / (j j!)
    double term = 1.0, sum = 0.0;
    for (int j = 1; j < 200; ++j) {
        term *= -x / j;
        sum += term / j;
        if (std::abs(term) < 1e-18) break;
    }
    return -std::numbers::egamma - std::log(x) - sum;
}

}  // namespace

double upper_gamma(double s, double x) {
    if (!(x > 0)) throw DomainError("upper incomplete gamma needs x > 0");
    if (x >= 1.0 && x >= s + 1.0) return std::exp(-x + s * std::log(x)) * upper_fraction_scaled(s, x);
    if (s > 0) {
        return std::tgamma(s) - std::exp(-x + s * std::log(x)) * lower_series_scaled(s, x);
    }
    // s <= 0 and x < 1: recur downwards from s0 in (0, 1], or from E1 when
    // s is an integer, with Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s.
    double value;
    double s0;
    if (is_nonpositive_integer(s)) {
        s0 = 0.0;
        value = exponential_integral_e1(x);
    } else {
        s0 = s - std::floor(s);
        value = upper_gamma(s0, x);
    }
    for (double sc = s0 - 1.0; sc >= s - 0.5; sc -= 1.0)
        value = (value - std::exp(-x + sc * std::log(x))) / sc;
    return value;
}

double lower_gamma_continued(double s, double x) {
    if (!(x > 0)) throw DomainError("incomplete gamma needs x > 0");
    if (is_nonpositive_integer(s)) throw DomainError("lower incomplete gamma has a pole at s <= 0 integer");
    if (x <= std::max(1.0, s + 1.0)) return std::exp(-x + s * std::log(x)) * lower_series_scaled(s, x);
    return std::tgamma(s) - upper_gamma(s, x);
}

double partial_laplace_power(double s, double mu, double upper) {
    if (!(upper > 0)) throw DomainError("partial Laplace integral needs an upper limit > 0");
    if (is_nonpositive_integer(s)) throw DomainError("partial Laplace integral has a pole at s <= 0 integer");
    if (mu > 0 && mu * upper > 4.0) return std::pow(mu, -s) * lower_gamma_continued(s, mu * upper);
    // sum_j (-mu)^j T^{s+j} / (j! (s+j))
    double pw = std::pow(upper, s);
    double sum = pw / s;
    for (int j = 1; j < 1000; ++j) {
        pw *= -mu * upper / j;
        const double term = pw / (s + j);
        sum += term;
        if (s + j > 0 && std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace heatkern
