#include "heatkern/oracle.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

#include "heatkern/errors.hpp"
#include "heatkern/heat_coeffs.hpp"
#include "heatkern/specfun.hpp"

namespace heatkern {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

double sup_norm_bound(const PeriodicFunction& q) {
    double s = 0;
    for (int n = -q.bandwidth(); n <= q.bandwidth(); ++n) s += q.mode(n).norm();
    return s;
}

double MellinPlan::split_point(const SpectralProblem& problem) const {
    if (split) return *split;
    const double a = problem.radius();
    const double qs = sup_norm_bound(problem.potential);
    return qs > 0 ? std::min(a * a / 4, 1 / (4 * qs)) : a * a / 4;
}

void SpectralProblem::validate() const {
    if (!(radius() > 0)) throw InputError("radius must be positive");
    if (!potential.is_hermitian(1e-12 * std::max(1.0, sup_norm_bound(potential))))
        throw InputError("potential is not Hermitian: q_{-n} must equal q_n^dagger");
}

SpectralProblem SpectralProblem::free(double radius, int dim) {
    return {PeriodicFunction(radius, dim, 0)};
}

SpectralProblem SpectralProblem::constant(double radius, const CMatrix& value) {
    return {PeriodicFunction::constant(radius, value)};
}

SpectralProblem SpectralProblem::cosine(double radius, double amplitude) {
    const std::vector<Complex> modes{amplitude / 2, 0.0, amplitude / 2};
    return {PeriodicFunction::scalar(radius, modes)};
}

CMatrix assemble(const SpectralProblem& problem, int n_max) {
    const int nq = problem.mode_cutoff();
    if (n_max < nq)
        throw ResolutionError("n_max = " + std::to_string(n_max) + " is below the potential's mode cutoff " +
                              std::to_string(nq));
    const int dim = problem.dim();
    const int size = (2 * n_max + 1) * dim;
    const double a = problem.radius();
    CMatrix h = CMatrix::Zero(size, size);
    for (int n = -n_max; n <= n_max; ++n) {
        const int row = (n + n_max) * dim;
        for (int m = std::max(-n_max, n - nq); m <= std::min(n_max, n + nq); ++m) {
            h.block(row, (m + n_max) * dim, dim, dim) = problem.potential.mode(n - m);
        }
        for (int i = 0; i < dim; ++i) h(row + i, row + i) += static_cast<double>(n) * n / (a * a);
    }
    return h;
}

namespace {

using QComplex = std::complex<Quad>;

// Lower band of the truncated matrix in quadruple precision:
// band[r][k] = H(r, r - k), k = 0..b. T is Quad when every mode is real.
Quad real_part(const Quad& x);
Quad real_part(const QComplex& x);

template <class T>
struct QuadBand {
    int size = 0;
    int width = 0;
    std::vector<std::vector<T>> band;
};

bool has_real_modes(const PeriodicFunction& q) {
    for (int n = -q.bandwidth(); n <= q.bandwidth(); ++n) {
        if (q.mode(n).imag().norm() != 0) return false;
    }
    return true;
}

template <class T>
QuadBand<T> quad_band(const SpectralProblem& problem, int n_max) {
    const int nq = problem.mode_cutoff();
    const int dim = problem.dim();
    QuadBand<T> qb;
    qb.size = (2 * n_max + 1) * dim;
    qb.width = (nq + 1) * dim - 1;
    qb.band.assign(static_cast<std::size_t>(qb.size),
                   std::vector<T>(static_cast<std::size_t>(qb.width + 1)));
    const Quad a = problem.radius();
    for (int r = 0; r < qb.size; ++r) {
        const int n = r / dim - n_max, i = r % dim;
        for (int k = 0; k <= qb.width && r - k >= 0; ++k) {
            const int c = r - k;
            const int m = c / dim - n_max, j = c % dim;
            if (std::abs(n - m) > nq) continue;
            const Complex v = problem.potential.mode(n - m)(i, j);
            T entry;
            if constexpr (std::is_same_v<T, Quad>) {
                entry = Quad(v.real());
            } else {
                entry = QComplex(Quad(v.real()), Quad(v.imag()));
            }
            if (k == 0) entry = T(real_part(entry) + Quad(n) * Quad(n) / (a * a));
            qb.band[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = entry;
        }
    }
    return qb;
}

Quad real_part(const Quad& x) { return x; }
Quad real_part(const QComplex& x) { return x.real(); }
Quad conj_of(const Quad& x) { return x; }
QComplex conj_of(const QComplex& x) { return std::conj(x); }

// Number of eigenvalues below sigma: negative pivots of the banded LDL^H
// factorisation of H - sigma (Sylvester inertia).
template <class T>
int sturm_count(const QuadBand<T>& qb, Quad sigma, std::vector<std::vector<T>>& work) {
    const int n = qb.size, b = qb.width;
    work = qb.band;
    int count = 0;
    const Quad tiny = Quad(1e-300) * Quad(1e-300);
    for (int j = 0; j < n; ++j) {
        auto& rowj = work[static_cast<std::size_t>(j)];
        // Sigma only shifts the diagonal, so it is applied when the pivot is read.
        Quad d = real_part(rowj[0]) - sigma;
        if (d == 0) d = tiny;
        if (d < 0) ++count;
        // Rows i > j within the band: M(i, k) -= M(i, j) conj(M(k, j)) / d.
        for (int i = j + 1; i <= std::min(j + b, n - 1); ++i) {
            auto& rowi = work[static_cast<std::size_t>(i)];
            const T mij = rowi[static_cast<std::size_t>(i - j)];
            if (mij == T(0)) continue;
            const T f = mij / d;
            for (int k = j + 1; k <= i; ++k) {
                const T mkj = work[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - j)];
                if (mkj == T(0)) continue;
                rowi[static_cast<std::size_t>(i - k)] -= f * conj_of(mkj);
            }
        }
    }
    return count;
}

// Bisection on the inertia count, started from the double-precision values.
template <class T>
std::vector<Quad> refine(const QuadBand<T>& qb, const std::vector<double>& values) {
    std::vector<std::vector<T>> work;
    std::vector<Quad> out(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        const int target = static_cast<int>(j);
        const double guess = values[j];
        Quad delta = Quad(1e-10) * Quad(1.0 + std::abs(guess));
        Quad lo = Quad(guess) - delta, hi = Quad(guess) + delta;
        while (sturm_count(qb, lo, work) > target) lo -= (delta *= 2);
        while (sturm_count(qb, hi, work) <= target) hi += (delta *= 2);
        const Quad scale = std::max(Quad(1), abs(Quad(guess)));
        for (int it = 0; it < 200 && hi - lo > Quad(1e-33) * scale; ++it) {
            const Quad mid = (lo + hi) / 2;
            if (sturm_count(qb, mid, work) <= target) lo = mid; else hi = mid;
        }
        out[j] = (lo + hi) / 2;
    }
    return out;
}

}  // namespace

EigenData solve(const SpectralProblem& problem, int n_max, bool precise) {
    problem.validate();
    const CMatrix h = assemble(problem, n_max);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ResolutionError("Hermitian eigensolver failed");
    EigenData out;
    out.n_max = n_max;
    out.radius = problem.radius();
    out.dim = problem.dim();
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (!precise) return out;

    if (has_real_modes(problem.potential)) {
        out.precise = refine(quad_band<Quad>(problem, n_max), out.values);
    } else {
        out.precise = refine(quad_band<QComplex>(problem, n_max), out.values);
    }
    return out;
}

double trace_truncation_bound(const SpectralProblem& problem, int n_max, double t) {
    const double a = problem.radius();
    const double qs = sup_norm_bound(problem.potential);
    const int start = std::max(0, n_max - problem.mode_cutoff()) + 1;
    double sum = 0;
    for (int n = start;; ++n) {
        const double term = std::exp(-t * (static_cast<double>(n) * n / (a * a) - qs));
        sum += term;
        if (term < 1e-40 || term < 1e-20 * sum) break;
    }
    return 2.0 * problem.dim() * sum;
}

int n_max_for_trace(const SpectralProblem& problem, double t_min, double tol) {
    // Theta(t) >= N exp(-t sup|Q|): the n = 0 block spans N Rayleigh quotients <= sup|Q|.
    const double floor = problem.dim() * std::exp(-t_min * sup_norm_bound(problem.potential));
    int n = std::max(problem.mode_cutoff(), 1);
    while (trace_truncation_bound(problem, n, t_min) > tol * floor) {
        n += std::max(1, n / 8);
        if (n > 200000) throw ResolutionError("heat trace needs an unreasonable truncation");
    }
    return n;
}

namespace {

void check_trace_truncation(const EigenData& eigen, const SpectralProblem& problem, double t,
                            double tol) {
    const double floor = problem.dim() * std::exp(-t * sup_norm_bound(problem.potential));
    if (trace_truncation_bound(problem, eigen.n_max, t) > tol * floor) {
        throw ResolutionError("truncation n_max = " + std::to_string(eigen.n_max) +
                              " too small for t = " + std::to_string(t) + "; need n_max >= " +
                              std::to_string(n_max_for_trace(problem, t, tol)));
    }
}

}  // namespace

double heat_trace(const EigenData& eigen, const SpectralProblem& problem, double t, double tol) {
    if (!(t > 0)) throw DomainError("heat trace needs t > 0");
    check_trace_truncation(eigen, problem, t, tol);
    double sum = 0;
    // Largest eigenvalues first keeps the small terms from being swamped.
    for (auto it = eigen.values.rbegin(); it != eigen.values.rend(); ++it) sum += std::exp(-t * *it);
    return sum;
}

double omega(const EigenData& eigen, const SpectralProblem& problem, double t, double tol) {
    return std::sqrt(4 * pi * t) * heat_trace(eigen, problem, t, tol);
}

Quad omega_precise(const EigenData& eigen, const SpectralProblem& problem, Quad t, double tol) {
    if (!eigen.has_precise()) throw InputError("eigenvalues were not refined in quadruple precision");
    if (!(t > 0)) throw DomainError("heat trace needs t > 0");
    check_trace_truncation(eigen, problem, static_cast<double>(t), tol);
    Quad sum = 0;
    for (auto it = eigen.precise.rbegin(); it != eigen.precise.rend(); ++it) sum += exp(-t * *it);
    return sqrt(4 * boost::math::constants::pi<Quad>() * t) * sum;
}

namespace {

void check_lambda(const EigenData& eigen, double lambda) {
    const double margin = 1e-3 / (eigen.radius * eigen.radius);
    if (!(lambda < eigen.lowest() - margin))
        throw DomainError("lambda must lie below the lowest eigenvalue " +
                          std::to_string(eigen.lowest()) + " by at least 1e-3/a^2");
}

}  // namespace

double zeta(const EigenData& eigen, const SpectralProblem& problem, double s, double lambda) {
    if (!(s > 0.5)) throw DomainError("zeta by direct summation needs s > 1/2");
    check_lambda(eigen, lambda);
    const int dim = problem.dim();
    const double a = problem.radius();
    const int nq = problem.mode_cutoff();
    // Eigenvalues near the truncation edge are polluted; keep |n| <= nc.
    const int nc = eigen.n_max - std::max(8, 2 * nq);
    if (nc < 2) throw ResolutionError("zeta needs n_max >= 2 * mode cutoff + 10");
    const std::size_t kept = static_cast<std::size_t>((2 * nc + 1) * dim);

    double head = 0;
    for (std::size_t j = kept; j-- > 0;) head += std::pow(eigen.values[j] - lambda, -s);

    // Asymptotic levels n^2/a^2 + c_i + a^2 S / (4 n^2), c_i = eig(q_0),
    // S = sum_{m != 0} |q_m|^2 / N; each n > nc counts twice (+n and -n).
    Eigen::SelfAdjointEigenSolver<CMatrix> es(problem.potential.mode(0), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd c = es.eigenvalues();
    double big_s = 0;
    for (int m = 1; m <= nq; ++m)
        big_s += problem.potential.mode_norm2(m) + problem.potential.mode_norm2(-m);
    big_s /= dim;
    auto level_sum = [&](double n) {
        double g = 0;
        for (int i = 0; i < dim; ++i) {
            const double level = n * n / (a * a) + c(i) + a * a * big_s / (4 * n * n) - lambda;
            g += std::pow(level, -s);
        }
        return 2.0 * g;
    };
    const int explicit_end = nc + 100000;
    double tail = 0;
    for (int n = explicit_end - 1; n > nc; --n) tail += level_sum(n);
    // Euler-Maclaurin for n >= explicit_end.
    const double m0 = explicit_end;
    boost::math::quadrature::exp_sinh<double> integrator;
    const double integral = integrator.integrate([&](double x) { return level_sum(m0 + x); });
    const double h = 1e-2 * m0;
    const double deriv = (level_sum(m0 + h) - level_sum(m0 - h)) / (2 * h);
    tail += integral + level_sum(m0) / 2 - deriv / 12;
    return head + tail;
}

int n_max_for_mellin(const SpectralProblem& problem, const MellinPlan& plan) {
    return n_max_for_trace(problem, plan.split_point(problem), 1e-17);
}

namespace {

std::vector<double> mellin_invariants(const SpectralProblem& problem, const MellinPlan& plan, int k) {
    if (static_cast<int>(plan.invariants.size()) > k) return plan.invariants;
    return heat_invariants(k, problem.potential);
}

double binomial(int n, int k) {
    double b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

MellinSplit b_function_split(const EigenData& eigen, const SpectralProblem& problem, double q,
                             double lambda, const MellinPlan& plan) {
    check_lambda(eigen, lambda);
    if (q >= 0 && q == std::round(q)) throw DomainError("integer q >= 0 has no Mellin split");
    const double split = plan.split_point(problem);
    if (!(split > 0)) throw InputError("Mellin split point must be positive");
    const int order = plan.order;
    const std::vector<double> ak = mellin_invariants(problem, plan, order);
    const double inv_gamma = 1.0 / std::tgamma(-q);

    MellinSplit out;
    // (0, t*): sum_k (-1)^k A_k / k! int_0^t* t^{k-q-1} e^{lambda t} dt.
    double factorial = 1;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) factorial *= k;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out.head += sign * ak[static_cast<std::size_t>(k)] / factorial *
                    partial_laplace_power(k - q, -lambda, split);
        out.series_at_split += sign * ak[static_cast<std::size_t>(k)] / factorial * std::pow(split, k);
    }
    out.head *= inv_gamma;
    out.series_at_split *= std::exp(lambda * split);

    // (t*, inf): Omega = (4 pi t)^{1/2} sum e^{-t lambda_n}, so each level
    // gives (4 pi)^{1/2} nu^{q-1/2} Gamma(1/2 - q, nu t*), nu = lambda_n - lambda.
    check_trace_truncation(eigen, problem, split, 1e-16);
    double tail = 0, trace = 0;
    for (auto it = eigen.values.rbegin(); it != eigen.values.rend(); ++it) {
        const double nu = *it - lambda;
        tail += std::pow(nu, q - 0.5) * upper_gamma(0.5 - q, nu * split);
        trace += std::exp(-nu * split);
    }
    out.tail = inv_gamma * std::sqrt(4 * pi) * tail;
    out.trace_at_split = std::sqrt(4 * pi * split) * trace;
    return out;
}

double b_function(const EigenData& eigen, const SpectralProblem& problem, double q, double lambda,
                  const MellinPlan& plan) {
    if (q >= 0 && q == std::round(q)) {
        check_lambda(eigen, lambda);
        const int k = static_cast<int>(q);
        const std::vector<double> ak = mellin_invariants(problem, plan, k);
        double sum = 0;
        for (int j = 0; j <= k; ++j)
            sum += binomial(k, j) * std::pow(-lambda, j) * ak[static_cast<std::size_t>(k - j)];
        return sum;
    }
    const MellinSplit piece = b_function_split(eigen, problem, q, lambda, plan);
    const double mismatch =
        std::abs(piece.series_at_split - piece.trace_at_split) / std::abs(piece.trace_at_split);
    if (mismatch > plan.match_tolerance) {
        throw ResolutionError("small-t series and eigenvalue trace disagree at the split point (relative " +
                              std::to_string(mismatch) + "); lower t* or raise the series order");
    }
    return piece.head + piece.tail;
}

double log_det(const EigenData& eigen, const SpectralProblem& problem, double lambda,
               const MellinPlan& plan) {
    return b_function(eigen, problem, 0.5, lambda, plan);
}

double zeta_from_b(const EigenData& eigen, const SpectralProblem& problem, double s, double lambda,
                   const MellinPlan& plan) {
    return std::tgamma(s - 0.5) / (std::sqrt(4 * pi) * std::tgamma(s)) *
           b_function(eigen, problem, 0.5 - s, lambda, plan);
}

}  // namespace heatkern
