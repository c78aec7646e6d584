#pragma once

// Second-order perturbative heat trace and its Mellin consequences, plus
// the truncated small-t resummation.

#include <vector>

#include "heatkern/oracle.hpp"

namespace heatkern {

/// Where an asymptotic formula is being used. tau = t/a^2 (or 1/(a^2 mu)
/// for lambda-side formulas), epsilon = sup|Q| * t (or sup|Q| / mu).
struct Validity {
    double tau = 0;
    double epsilon = 0;
    double a_sqrt_mu = 0;  // lambda-side only
};

/// beta_k(tau) = sqrt(tau/pi) int_0^1 dxi sum_n exp(-tau [n^2 + (1+xi)/2 (k^2 - 2nk)]).
double beta_k(int k, double tau);

struct PerturbativeTrace {
    double value = 0;
    std::vector<double> contributions;  // pi a t^2 |q_k|^2 beta_k, k = -B..B
    Validity validity;
};

/// theta(tau) 2 pi a (N - t tr q_0) + pi a t^2 sum_{k in Z} |q_k|^2 beta_k(tau).
PerturbativeTrace omega_exact2(const SpectralProblem& problem, double t);

struct SpectralForms {
    double b_q = 0;
    double gamma = 0;
    /// gamma with the sums over n >= 1 and coefficients exactly as printed
    /// in the large-radius spectral form (kept for comparison).
    double gamma_printed = 0;
    Validity validity;
};

/// b_q(lambda) = 2 pi a q mu^{q-1} tr q_0
///             + pi a q(q-1) mu^{q-2} sum_{n in Z} |q_n|^2 f_{q-2}(n^2 / (mu a^2)),
/// gamma(lambda) = pi a tr q_0 / sqrt(mu) - pi a^3 / sqrt(mu) sum_{n in Z} |q_n|^2 / (n^2 + 4 mu a^2),
/// mu = -lambda > 0. gamma is checked against b_{1/2}.
SpectralForms bq_gamma(const SpectralProblem& problem, double q, double lambda);

/// Large-radius form of Omega:
/// 2 pi a (N - t tr q_0) + pi a t^2 sum_{n in Z} |q_n|^2 alpha(t n^2 / a^2).
double omega_large_radius(const SpectralProblem& problem, double t);

struct ResummedTrace {
    double value = 0;
    int order = 0;
    Validity validity;
};

/// sum_{k <= K} (-t)^k / k! A_k. `invariants` (A_0..A_K) is computed when
/// shorter than K + 1.
ResummedTrace resummed_omega(const SpectralProblem& problem, double t, int order,
                             const std::vector<double>& invariants = {});

struct TraceRow {
    double t = 0;
    double omega_oracle = 0;
    double omega_perturbative = 0;
    double omega_resummed = 0;
};

/// (t, Omega_oracle, Omega_exact2, Omega_resummed) over a t-grid.
std::vector<TraceRow> trace_table(const SpectralProblem& problem, const std::vector<double>& ts,
                                  int order);

struct DetRow {
    double lambda = 0;
    double log_det_oracle = 0;
    double weyl = 0;   // 2 pi a N sqrt(-lambda)
    double gamma = 0;
};

/// (lambda, log Det oracle, Weyl term, gamma) over a lambda-grid (lambda < 0).
std::vector<DetRow> det_table(const SpectralProblem& problem, const std::vector<double>& lambdas,
                              const MellinPlan& plan = {});

}  // namespace heatkern
