#pragma once

// Special functions of the perturbative heat trace: the theta sum, alpha(z),
// f_q(z), and the incomplete gamma integrals used by the Mellin transforms.

namespace heatkern {

struct SpecialFunctionConfig {
    double tolerance = 1e-14;      // series and quadrature target (relative)
    int nodes = 16;                // starting Gauss-Legendre nodes per panel
    double theta_crossover = 3.141592653589793;
};

/// theta(t) = sum_n exp(-pi^2 n^2 / t), evaluated with whichever of the two
/// dual series converges faster. Throws DomainError for t <= 0.
double theta(double t, const SpecialFunctionConfig& cfg = {});

/// The two representations separately (for duality checks).
double theta_direct(double t);  // sum_n exp(-pi^2 n^2 / t)
double theta_dual(double t);    // sqrt(t / pi) sum_n exp(-t n^2)

/// alpha(z) = int_0^1 exp(-(1 - xi^2) z / 4) dxi.
double alpha(double z, const SpecialFunctionConfig& cfg = {});

/// d alpha / dz.
double alpha_derivative(double z, const SpecialFunctionConfig& cfg = {});

/// Partial sum of sum_k k!/(2k+1)! (-z)^k up to convergence.
double alpha_series(double z);

/// f_q(z) = int_0^1 (1 + (1 - xi^2) z / 4)^q dxi for z >= 0. Uses
/// 4/(z+4) at q = -3/2, the arcsine form at q = -1/2 and the terminating
/// polynomial at non-negative integer q; quadrature otherwise.
double f_q(double q, double z, const SpecialFunctionConfig& cfg = {});

/// f_q by quadrature only.
double f_q_quadrature(double q, double z, const SpecialFunctionConfig& cfg = {});

/// (2/sqrt z) asin((1 + 4/z)^{-1/2}).
double f_minus_half_closed(double z);

/// Gamma(q+1)^2 / Gamma(2q+2), the large-z prefactor of f_q.
double f_q_asymptotic_prefactor(double q);

/// Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for real s (any sign) and x > 0.
double upper_gamma(double s, double x);

/// Analytic continuation in s of int_0^x t^{s-1} e^{-t} dt, i.e.
/// Gamma(s) - Gamma(s, x). Throws DomainError at s = 0, -1, -2, ...
double lower_gamma_continued(double s, double x);

/// int_0^T t^{s-1} e^{-mu t} dt, continued in s like lower_gamma_continued.
/// Any real mu; T > 0.
double partial_laplace_power(double s, double mu, double upper);

}  // namespace heatkern
