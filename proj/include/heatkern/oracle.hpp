#pragma once

// Brute-force spectral side: plane-wave truncation of L = -D^2 + Q, its
// eigenvalues, the heat trace, and the Mellin-transform machinery for
// zeta(s, lambda), B_q(lambda) and log Det(L - lambda).

#include <optional>
#include <vector>

#include "heatkern/periodic_function.hpp"
#include "heatkern/precision.hpp"

namespace heatkern {

/// L = -D^2 + Q on a circle of radius a with an N x N Hermitian potential.
struct SpectralProblem {
    PeriodicFunction potential;

    double radius() const { return potential.radius(); }
    int dim() const { return potential.dim(); }
    /// Largest |n| with a nonzero mode.
    int mode_cutoff() const { return potential.effective_bandwidth(); }

    /// Throws InputError unless a > 0 and q_{-n} = q_n^dagger.
    void validate() const;

    static SpectralProblem free(double radius, int dim);
    static SpectralProblem constant(double radius, const CMatrix& value);
    /// Scalar Q(x) = amplitude * cos(x / a).
    static SpectralProblem cosine(double radius, double amplitude);
};

/// Plane-wave matrix (n^2/a^2) delta_nm I + q_{n-m}, |n|, |m| <= n_max,
/// basis index (n + n_max) * N + i. Throws ResolutionError if n_max is
/// below the mode cutoff.
CMatrix assemble(const SpectralProblem& problem, int n_max);

struct EigenData {
    int n_max = 0;
    double radius = 1.0;
    int dim = 1;
    std::vector<double> values;  // ascending
    std::vector<Quad> precise;   // ascending; empty unless requested

    double lowest() const { return values.front(); }
    bool has_precise() const { return !precise.empty(); }
};

/// Dense Hermitian eigensolve of the truncated matrix. With `precise`, every
/// eigenvalue is refined in quadruple precision by Sturm-count bisection on
/// the banded matrix.
EigenData solve(const SpectralProblem& problem, int n_max, bool precise = false);

/// Bound on the heat-trace weight of the modes lost to truncation at n_max:
/// 2N sum_{n > n_max - n_Q} exp(-t (n^2/a^2 - sup|Q|)).
double trace_truncation_bound(const SpectralProblem& problem, int n_max, double t);

/// Smallest n_max (>= mode cutoff) with trace_truncation_bound <= tol for
/// every t >= t_min.
int n_max_for_trace(const SpectralProblem& problem, double t_min, double tol);

/// Theta(t) = sum exp(-t lambda_n). Throws ResolutionError (carrying the
/// needed n_max) when exp(-t lambda) at the truncation edge exceeds `tol`.
double heat_trace(const EigenData& eigen, const SpectralProblem& problem, double t,
                  double tol = 1e-14);

/// Omega(t) = (4 pi t)^{1/2} Theta(t).
double omega(const EigenData& eigen, const SpectralProblem& problem, double t, double tol = 1e-14);

/// Omega(t) from the quadruple-precision eigenvalues.
Quad omega_precise(const EigenData& eigen, const SpectralProblem& problem, Quad t,
                   double tol = 1e-32);

/// zeta(s, lambda) = sum (lambda_n - lambda)^{-s}, s > 1/2, with the
/// eigenvalues beyond the reliable part of the truncation replaced by the
/// asymptotic spectrum n^2/a^2 + eig(q_0) + a^2 S / (4 n^2).
double zeta(const EigenData& eigen, const SpectralProblem& problem, double s, double lambda);

/// Sum of the Frobenius norms of the modes; bounds sup_x |Q(x)|.
double sup_norm_bound(const PeriodicFunction& q);

struct MellinPlan {
    std::optional<double> split;  // t*; see split_point
    int order = 6;                // small-t series order K
    double match_tolerance = 1e-6;
    std::vector<double> invariants;  // A_0..A_K if precomputed

    /// The explicit split if set, else min(a^2/4, 1/(4 sup|Q|)): the series
    /// in t needs both t/a^2 and t|Q| small.
    double split_point(const SpectralProblem& problem) const;
};

/// B_q(lambda) = Gamma(-q)^{-1} int_0^inf t^{-q-1} e^{t lambda} Omega(t) dt,
/// continued in q. Integer q >= 0 uses sum_j C(q,j) (-lambda)^j A_{q-j}.
/// Otherwise (0, t*) uses the K-term small-t series integrated exactly and
/// (t*, inf) the eigenvalue sum with closed-form incomplete gammas.
double b_function(const EigenData& eigen, const SpectralProblem& problem, double q, double lambda,
                  const MellinPlan& plan = {});

/// The two pieces of b_function separately (for diagnostics and tests).
struct MellinSplit {
    double head = 0;
    double tail = 0;
    double series_at_split = 0;  // e^{t* lambda} Omega(t*) from the series
    double trace_at_split = 0;   // the same from the eigenvalues
};
MellinSplit b_function_split(const EigenData& eigen, const SpectralProblem& problem, double q,
                             double lambda, const MellinPlan& plan = {});

/// log Det(L - lambda) = B_{1/2}(lambda).
double log_det(const EigenData& eigen, const SpectralProblem& problem, double lambda,
               const MellinPlan& plan = {});

/// zeta(s, lambda) through (4 pi)^{-1/2} Gamma(s - 1/2)/Gamma(s) B_{1/2 - s}(lambda).
double zeta_from_b(const EigenData& eigen, const SpectralProblem& problem, double s, double lambda,
                   const MellinPlan& plan = {});

/// n_max adequate for b_function with the plan's split point.
int n_max_for_mellin(const SpectralProblem& problem, const MellinPlan& plan = {});

}  // namespace heatkern
