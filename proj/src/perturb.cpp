#include "heatkern/perturb.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heatkern/errors.hpp"
#include "heatkern/heat_coeffs.hpp"
#include "heatkern/parallel.hpp"
#include "heatkern/quadrature.hpp"
#include "heatkern/specfun.hpp"

namespace heatkern {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double gaussian_cut = 1e-16;

// sqrt(tau/pi) sum_n exp(-tau (n - c)^2), through its Poisson dual
// 1 + 2 sum_m exp(-pi^2 m^2 / tau) cos(2 pi m c) when tau is small.
double shifted_theta(double tau, double c) {
    if (tau <= pi) {
        double sum = 1.0;
        for (int m = 1;; ++m) {
            const double g = std::exp(-pi * pi * m * m / tau);
            if (g < gaussian_cut) break;
            sum += 2.0 * g * std::cos(2.0 * pi * m * c);
        }
        return sum;
    }
    const double base = std::floor(c);
    double sum = 0;
    for (int j = 0;; ++j) {
        const double g1 = std::exp(-tau * (base - j - c) * (base - j - c));
        const double g2 = std::exp(-tau * (base + 1 + j - c) * (base + 1 + j - c));
        sum += g1 + g2;
        if (g1 < gaussian_cut && g2 < gaussian_cut) break;
    }
    return std::sqrt(tau / pi) * sum;
}

double trace_q0(const SpectralProblem& problem) { return problem.potential.mode(0).trace().real(); }

}  // namespace

double beta_k(int k, double tau) {
    if (!(tau > 0)) throw DomainError("beta_k needs tau > 0");
    // Completing the square in n: the exponent is
    // -tau (n - c)^2 - tau k^2 (1 - xi^2) / 4 with c = (1 + xi) k / 2.
    const double kk = static_cast<double>(k) * k;
    const double scale = tau * kk > 4.0 ? 4.0 / (tau * kk) : 1.0;
    return integrate_graded(
        [&](double v) {
            const double xi = 1.0 - v;
            return std::exp(-tau * kk * v * (2.0 - v) / 4.0) * shifted_theta(tau, (1.0 + xi) * k / 2.0);
        },
        scale, 1e-13);
}

PerturbativeTrace omega_exact2(const SpectralProblem& problem, double t) {
    if (!(t > 0)) throw DomainError("omega needs t > 0");
    const double a = problem.radius();
    const double tau = t / (a * a);
    const int band = problem.mode_cutoff();
    PerturbativeTrace out;
    out.value = theta(tau) * 2.0 * pi * a * (problem.dim() - t * trace_q0(problem));
    out.contributions.assign(static_cast<std::size_t>(2 * band + 1), 0.0);
    for (int k = 0; k <= band; ++k) {
        const double b = beta_k(k, tau);
        for (int sign : {1, -1}) {
            if (k == 0 && sign < 0) continue;
            const int n = sign * k;
            const double c = pi * a * t * t * problem.potential.mode_norm2(n) * b;
            out.contributions[static_cast<std::size_t>(n + band)] = c;
            out.value += c;
        }
    }
    out.validity.tau = tau;
    out.validity.epsilon = sup_norm_bound(problem.potential) * t;
    return out;
}

double omega_large_radius(const SpectralProblem& problem, double t) {
    if (!(t > 0)) throw DomainError("omega needs t > 0");
    const double a = problem.radius();
    double value = 2.0 * pi * a * (problem.dim() - t * trace_q0(problem));
    const int band = problem.mode_cutoff();
    for (int n = -band; n <= band; ++n)
        value += pi * a * t * t * problem.potential.mode_norm2(n) * alpha(t * n * n / (a * a));
    return value;
}

SpectralForms bq_gamma(const SpectralProblem& problem, double q, double lambda) {
    if (!(lambda < 0)) throw DomainError("spectral forms need lambda < 0");
    const double mu = -lambda;
    const double a = problem.radius();
    const double tr0 = trace_q0(problem);
    const int band = problem.mode_cutoff();

    auto b_of = [&](double qq) {
        double sum = 0;
        for (int n = -band; n <= band; ++n) {
            const double z = static_cast<double>(n) * n / (mu * a * a);
            sum += problem.potential.mode_norm2(n) * f_q(qq - 2.0, z);
        }
        return 2.0 * pi * a * qq * std::pow(mu, qq - 1.0) * tr0 +
               pi * a * qq * (qq - 1.0) * std::pow(mu, qq - 2.0) * sum;
    };

    SpectralForms out;
    out.b_q = b_of(q);
    double sum_all = 0, sum_positive = 0;
    for (int n = -band; n <= band; ++n) {
        const double term = problem.potential.mode_norm2(n) / (static_cast<double>(n) * n + 4.0 * mu * a * a);
        sum_all += term;
        if (n >= 1) sum_positive += term;
    }
    const double root = std::sqrt(mu);
    out.gamma = pi * a * tr0 / root - pi * a * a * a / root * sum_all;
    out.gamma_printed = pi * a * tr0 / root - pi * a * a * a / root * sum_positive;

    const double via_b = b_of(0.5);
    if (std::abs(via_b - out.gamma) > 1e-12 * std::max(1.0, std::abs(out.gamma)))
        throw std::logic_error("gamma disagrees with b_{1/2}");

    out.validity.tau = 1.0 / (mu * a * a);
    out.validity.epsilon = sup_norm_bound(problem.potential) / mu;
    out.validity.a_sqrt_mu = a * root;
    return out;
}

ResummedTrace resummed_omega(const SpectralProblem& problem, double t, int order,
                             const std::vector<double>& invariants) {
    if (order < 0) throw InputError("series order must be non-negative");
    const std::vector<double> ak = static_cast<int>(invariants.size()) > order
                                       ? invariants
                                       : heat_invariants(order, problem.potential);
    ResummedTrace out;
    out.order = order;
    double term = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) term *= -t / k;
        out.value += term * ak[static_cast<std::size_t>(k)];
    }
    const double a = problem.radius();
    out.validity.tau = t / (a * a);
    out.validity.epsilon = sup_norm_bound(problem.potential) * t;
    return out;
}

std::vector<TraceRow> trace_table(const SpectralProblem& problem, const std::vector<double>& ts,
                                  int order) {
    if (ts.empty()) throw InputError("t-grid is empty");
    double t_min = ts.front();
    for (double t : ts) {
        if (!(t > 0)) throw InputError("t-grid must be strictly positive");
        t_min = std::min(t_min, t);
    }
    const EigenData eigen = solve(problem, n_max_for_trace(problem, t_min, 1e-15));
    const std::vector<double> ak = heat_invariants(order, problem.potential);
    std::vector<TraceRow> rows(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
        const double t = ts[i];
        rows[i] = {t, omega(eigen, problem, t), omega_exact2(problem, t).value, resummed_omega(problem, t, order, ak).value};
    });
    return rows;
}

std::vector<DetRow> det_table(const SpectralProblem& problem, const std::vector<double>& lambdas,
                              const MellinPlan& plan) {
    if (lambdas.empty()) throw InputError("lambda-grid is empty");
    MellinPlan p = plan;
    if (static_cast<int>(p.invariants.size()) <= p.order)
        p.invariants = heat_invariants(p.order, problem.potential);
    const EigenData eigen = solve(problem, n_max_for_mellin(problem, p));
    for (double lambda : lambdas)
        if (!(lambda < 0)) throw InputError("lambda-grid must be strictly negative");
    std::vector<DetRow> rows(lambdas.size());
    const double a = problem.radius();
    parallel_for(lambdas.size(), [&](std::size_t i) {
        const double lambda = lambdas[i];
        rows[i] = {lambda, log_det(eigen, problem, lambda, p), 2.0 * pi * a * problem.dim() * std::sqrt(-lambda),
                   bq_gamma(problem, 0.5, lambda).gamma};
    });
    return rows;
}

}  // namespace heatkern
