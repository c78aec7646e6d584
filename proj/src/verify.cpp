#include "heatkern/verify.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "heatkern/errors.hpp"
#include "heatkern/evaluate.hpp"
#include "heatkern/heat_coeffs.hpp"
#include "heatkern/kdv_flow.hpp"
#include "heatkern/perturb.hpp"
#include "heatkern/specfun.hpp"

namespace heatkern {

namespace {

constexpr double pi = std::numbers::pi;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string format_double_short(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string fixed(double x, int digits = 3) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> g;
    for (int i = 0; i < count; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
    return g;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1 -----------------------------------------------------------------

CheckResult symbolic_ground_truth() {
    const auto t0 = std::chrono::steady_clock::now();
    const DiffPoly q = DiffPoly::potential(0), q1 = DiffPoly::potential(1), q2 = DiffPoly::potential(2);
    const std::vector<DiffPoly> displayed = {
        q,
        q * q - Rational(1, 3) * q2,
        q * q * q - Rational(1, 2) * (q * q2 + q2 * q + q1 * q1) + Rational(1, 10) * DiffPoly::potential(4),
    };
    TaylorTable table(Algebra::matrix);
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 3; ++k) {
        const bool eq = table.diagonal(k) == displayed[static_cast<std::size_t>(k - 1)];
        ok = ok && eq;
        detail += "[a" + std::to_string(k) + "] " + (eq ? "equal" : "DIFFERS: " + table.diagonal(k).to_string()) +
                  (k < 3 ? "; " : "");
    }
    const double secs = seconds_since(t0);
    return {1, "symbolic-ground-truth", ok && secs < 1.0, true, detail + "; limit 1 s", secs};
}

// --- 2 -----------------------------------------------------------------

CheckResult recursion_cross_validation() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string bad;
    auto compare = [&](Algebra alg, int kmax, const char* tag) {
        TaylorTable table(alg);
        const auto rec = diagonal_coefficients_recursive(kmax, alg);
        for (int k = 0; k <= kmax; ++k) {
            if (!(table.diagonal(k) == rec[static_cast<std::size_t>(k)])) {
                ok = false;
                bad += std::string(" ") + tag + std::to_string(k);
            }
        }
    };
    compare(Algebra::scalar, 8, "scalar k=");
    compare(Algebra::matrix, 5, "matrix k=");
    const double secs = seconds_since(t0);
    return {2, "recursion-cross-validation", ok && secs < 60.0, true,
            ok ? "scalar k<=8 and matrix k<=5 identical; limit 60 s" : "mismatch:" + bad, secs};
}

// --- 3 -----------------------------------------------------------------

CheckResult free_trace_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (auto [a, n_dim] : {std::pair{1.0, 1}, std::pair{2.5, 2}}) {
        const SpectralProblem p = SpectralProblem::free(a, n_dim);
        const double t_min = 0.01 * a * a;
        const EigenData e = solve(p, n_max_for_trace(p, t_min, 1e-17));
        for (double tau : log_grid(0.01, 10.0, 61)) {
            const double t = tau * a * a;
            const double ref = 2 * pi * a * n_dim / std::sqrt(4 * pi * t) * theta(tau);
            worst = std::max(worst, std::abs(heat_trace(e, p, t, 1e-17) / ref - 1));
        }
    }
    return {3, "free-trace-identity", worst <= 1e-10, true, "max rel err " + sci(worst) + " (tol 1e-10)",
            seconds_since(t0)};
}

// --- 4 -----------------------------------------------------------------

CheckResult small_t_asymptotics() {
    const auto t0 = std::chrono::steady_clock::now();
    const SpectralProblem p = SpectralProblem::cosine(1.0, 1.0);
    constexpr int order = 6;
    const EigenData e = solve(p, n_max_for_trace(p, 1e-3, 1e-34), true);
    const std::vector<Quad> ak = heat_invariants_precise(order, p.potential);
    const auto ts = log_grid(1e-3, 1e-1, 9);
    std::vector<double> residuals;
    for (double t : ts) {
        const Quad tq = t;
        Quad series = 0, power = 1, fact = 1;
        for (int k = 0; k <= order; ++k) {
            if (k > 0) fact *= k;
            series += (k % 2 ? -1 : 1) * ak[static_cast<std::size_t>(k)] * power / fact;
            power *= tq;
        }
        residuals.push_back(static_cast<double>(boost::multiprecision::abs(omega_precise(e, p, tq) - series)));
    }
    const double slope = loglog_slope(ts, residuals);
    return {4, "small-t-asymptotics", std::abs(slope - 7) <= 0.3, true,
            "slope " + fixed(slope) + " (target 7 +- 0.3); residual " + sci(residuals.front()) + " at t=1e-3, " +
                sci(residuals.back()) + " at t=1e-1",
            seconds_since(t0)};
}

// --- 5 -----------------------------------------------------------------

CheckResult determinant_benchmark() {
    const auto t0 = std::chrono::steady_clock::now();
    const SpectralProblem p = SpectralProblem::constant(1.0, CMatrix::Constant(1, 1, 1.0));
    MellinPlan plan;
    plan.invariants = heat_invariants(plan.order, p.potential);
    const EigenData e = solve(p, n_max_for_mellin(p, plan));
    const double value = log_det(e, p, 0.0, plan);
    const double ref = 2 * std::log(2 * std::sinh(pi));
    const double err = std::abs(value - ref);
    const double secs = seconds_since(t0);
    return {5, "determinant-benchmark", err <= 1e-6 && secs < 30.0, true,
            "log Det " + format_double_short(value) + " vs 2 log(2 sinh pi); |err| " + sci(err) +
                " (tol 1e-6); limit 30 s",
            secs};
}

// --- 6 -----------------------------------------------------------------

CheckResult perturbative_scaling() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> eps = {0.1, 0.05, 0.025};
    std::vector<double> err_omega, err_gamma;
    constexpr double t = 1.0;
    constexpr double a_gamma = 30.0, lambda = -1.0;
    for (double e : eps) {
        const SpectralProblem p = SpectralProblem::cosine(1.0, 2 * e);
        const EigenData ed = solve(p, n_max_for_trace(p, t, 1e-17));
        err_omega.push_back(std::abs(omega(ed, p, t, 1e-17) - omega_exact2(p, t).value));

        const SpectralProblem pg = SpectralProblem::cosine(a_gamma, 2 * e);
        MellinPlan plan;
        plan.invariants = heat_invariants(plan.order, pg.potential);
        const EigenData eg = solve(pg, n_max_for_mellin(pg, plan));
        const double weyl = 2 * pi * a_gamma * std::sqrt(-lambda);
        err_gamma.push_back(std::abs(log_det(eg, pg, lambda, plan) - weyl - bq_gamma(pg, 0.5, lambda).gamma));
    }
    const double s_omega = loglog_slope(eps, err_omega);
    const double s_gamma = loglog_slope(eps, err_gamma);
    const bool ok = std::abs(s_omega - 3) <= 0.3 && std::abs(s_gamma - 3) <= 0.3;
    return {6, "perturbative-scaling", ok, true,
            "slopes Omega " + fixed(s_omega) + " (t=1, a=1), gamma " + fixed(s_gamma) +
                " (a sqrt(-lambda)=30); target 3 +- 0.3",
            seconds_since(t0)};
}

// --- 7 -----------------------------------------------------------------

// d alpha/dz by differentiating under the integral sign, adaptive Gauss-Kronrod.
double alpha_derivative_reference(double z) {
    auto f = [z](double xi) {
        const double w = (1 - xi) * (1 + xi) / 4;
        return -w * std::exp(-w * z);
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-15);
}

CheckResult special_function_identities() {
    const auto t0 = std::chrono::steady_clock::now();
    double f_err = 0;
    for (int i = 0; i <= 1000; ++i) {
        const double z = 0.1 * i;
        f_err = std::max(f_err, std::abs(f_q_quadrature(-1.5, z) - 4 / (z + 4)));
    }
    double ode = 0;
    for (double z : log_grid(1e-3, 1e3, 241)) {
        const double a = alpha(z);
        ode = std::max(ode, std::abs(4 * alpha_derivative_reference(z) + a + 2 * a / z - 2 / z));
    }
    double dual = 0;
    for (double t : log_grid(1e-2, 1e2, 161)) dual = std::max(dual, std::abs(theta_direct(t) - theta_dual(t)));
    const bool ok = f_err <= 1e-10 && ode <= 1e-10 && dual <= 1e-12;
    return {7, "special-function-identities", ok, true,
            "f_{-3/2} " + sci(f_err) + " (tol 1e-10); alpha ODE " + sci(ode) + " (tol 1e-10); theta duality " +
                sci(dual) + " (tol 1e-12)",
            seconds_since(t0)};
}

// --- 8 -----------------------------------------------------------------

PeriodicFunction random_real_function(std::mt19937_64& rng, int band, double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> modes(static_cast<std::size_t>(2 * band + 1));
    modes[static_cast<std::size_t>(band)] = scale * u(rng);
    for (int n = 1; n <= band; ++n) {
        const Complex c = scale * Complex(u(rng), u(rng)) / double(n);
        modes[static_cast<std::size_t>(band + n)] = c;
        modes[static_cast<std::size_t>(band - n)] = std::conj(c);
    }
    return PeriodicFunction::scalar(1.0, modes);
}

CheckResult variational_derivative_check() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240607);
    double worst = 0;
    TaylorTable table(Algebra::scalar);
    for (int trial = 0; trial < 3; ++trial) {
        const PeriodicFunction q = random_real_function(rng, 4, 0.5);
        const PeriodicFunction phi = random_real_function(rng, 3, 1.0);
        for (int k = 1; k <= 4; ++k) {
            const double h = 1e-5;
            const DiffPoly& density = table.diagonal(k);
            const double fd = (integrate_trace(density, q + h * phi) - integrate_trace(density, q + (-h) * phi)) / (2 * h);
            const double exact = integral_pairing(phi, variational_derivative(k, q));
            worst = std::max(worst, std::abs(fd - exact) / std::max(std::abs(exact), 1e-300));
        }
    }
    return {8, "variational-derivative", worst <= 1e-6, true,
            "max rel err " + sci(worst) + " over k=1..4, 3 random Q (tol 1e-6)", seconds_since(t0)};
}

// --- 9 -----------------------------------------------------------------

struct FlowSetup {
    int k;
    int steps;
    int cutoff;
};

// Flow 3 keeps |n| <= 16: the explicit nonlinear step resonates with the
// fifth-order dispersion at higher modes unless h shrinks like n^-4.
constexpr FlowSetup flow_setups[] = {{1, 1000, 0}, {2, 4000, 0}, {3, 800000, 16}};

CheckResult conservation_shadow() {
    const auto t0 = std::chrono::steady_clock::now();
    const PeriodicFunction q0 = SpectralProblem::cosine(1.0, 1.0).potential;
    std::string detail;
    bool ok = true;
    try {
        FlowOptions opt;
        const Trajectory tr = integrate_flow(2, q0, 1.0, flow_setups[1].steps, opt);
        const ConservationReport r = conservation_report(tr, {2, 3, 4, 5});
        const Trajectory tr_half = integrate_flow(2, q0, 1.0, 2 * flow_setups[1].steps, opt);
        const ConservationReport r_half = conservation_report(tr_half, {2, 3, 4, 5});
        const double ratio = r.max_drift() / r_half.max_drift();
        const bool conserved = r.max_drift() <= 1e-6;
        const bool order4 = ratio >= 12 && ratio <= 20;
        ok = conserved && order4;
        detail += "flow 2 A2..A5 drift " + sci(r.max_drift()) + ", halved " + sci(r_half.max_drift()) + ", ratio " +
                  fixed(ratio, 1) + " (target ~16)";

        double cross = 0;
        std::string worst_pair;
        for (const auto& s : flow_setups) {
            FlowOptions o;
            o.cutoff = s.cutoff;
            const Trajectory t = integrate_flow(s.k, q0, 1.0, s.steps, o);
            for (const auto& series : hamiltonian_report(t, {1, 2, 3}).series) {
                if (series.drift > cross) {
                    cross = series.drift;
                    worst_pair = "k=" + std::to_string(s.k) + "," + series.name;
                }
            }
        }
        ok = ok && cross <= 1e-6;
        detail += "; cross drift max " + sci(cross) + " at " + worst_pair + " (tol 1e-6)";
    } catch (const Error& e) {
        ok = false;
        detail += std::string(detail.empty() ? "" : "; ") + e.code() + ": " + e.what();
    }
    return {9, "conservation-shadow", ok, true, detail, seconds_since(t0)};
}

// --- 10 ----------------------------------------------------------------

CheckResult w_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    TaylorTable table(Algebra::matrix);
    bool ok = true;
    std::string bad;
    for (int k = 0; k <= 4; ++k) {
        const DiffPoly w = w_coefficient(k, table);
        if (!(differentiate(w) == commutator_with_potential(table.diagonal(k)))) {
            ok = false;
            bad += " DW_" + std::to_string(k);
        }
        if (!scalar_image(w).is_zero()) {
            ok = false;
            bad += " scalar W_" + std::to_string(k);
        }
    }
    return {10, "w-identity", ok, true,
            ok ? "D W_k = Ad_Q [a_k] exactly for k<=4; scalar W_k = 0" : "fails:" + bad, seconds_since(t0)};
}

using CheckFn = CheckResult (*)();
constexpr CheckFn checks[] = {symbolic_ground_truth,      recursion_cross_validation, free_trace_identity,
                              small_t_asymptotics,        determinant_benchmark,      perturbative_scaling,
                              special_function_identities, variational_derivative_check, conservation_shadow,
                              w_identity};
constexpr const char* check_names[] = {"symbolic-ground-truth", "recursion-cross-validation",
                                       "free-trace-identity",   "small-t-asymptotics",
                                       "determinant-benchmark", "perturbative-scaling",
                                       "special-function-identities", "variational-derivative",
                                       "conservation-shadow",   "w-identity"};

}  // namespace

std::vector<int> acceptance_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

CheckResult run_criterion(int id) {
    if (id < 1 || id > 10) throw InputError("no acceptance criterion " + std::to_string(id));
    try {
        return checks[id - 1]();
    } catch (const Error& e) {
        return {id, check_names[id - 1], false, true, e.code() + ": " + e.what(), 0};
    }
}

std::vector<CheckResult> run_acceptance(const std::vector<int>& ids) {
    std::vector<CheckResult> out;
    for (int id : ids) out.push_back(run_criterion(id));
    return out;
}

std::vector<CheckResult> run_problem_checks(const SpectralProblem& problem) {
    problem.validate();
    std::vector<CheckResult> out;
    MellinPlan plan;
    plan.invariants = heat_invariants(plan.order, problem.potential);
    const double t_star = plan.split_point(problem);

    // Small-t trace against the invariant series at a quarter of the split.
    {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r{0, "trace-vs-invariants", false, true, "", 0};
        try {
            const double t = t_star / 4;
            const EigenData e = solve(problem, n_max_for_trace(problem, t, 1e-16));
            const double oracle = omega(e, problem, t, 1e-16);
            const double series = resummed_omega(problem, t, plan.order, plan.invariants).value;
            const double rel = std::abs(oracle - series) / std::abs(oracle);
            r.passed = rel <= 1e-8;
            r.detail = "t=" + sci(t) + ": rel diff " + sci(rel) + " (tol 1e-8)";
        } catch (const Error& e) {
            r.detail = e.code() + ": " + e.what();
        }
        r.seconds = seconds_since(t0);
        out.push_back(r);
    }

    const EigenData eigen = solve(problem, n_max_for_mellin(problem, plan));
    const double lambda = std::min(0.0, eigen.lowest() - 1.0);

    {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r{0, "zeta-two-routes", false, true, "", 0};
        try {
            const double direct = zeta(eigen, problem, 1.0, lambda);
            const double mellin = zeta_from_b(eigen, problem, 1.0, lambda, plan);
            const double rel = std::abs(direct - mellin) / std::abs(direct);
            r.passed = rel <= 1e-6;
            r.detail = "zeta(1, " + format_double_short(lambda) + "): rel diff " + sci(rel) + " (tol 1e-6)";
        } catch (const Error& e) {
            r.detail = e.code() + ": " + e.what();
        }
        r.seconds = seconds_since(t0);
        out.push_back(r);
    }

    {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r{0, "determinant-benchmark", false, true, "", 0};
        if (problem.mode_cutoff() > 0) {
            r.applicable = false;
            r.passed = true;
            r.detail = "n/a (potential not constant)";
        } else {
            try {
                // L - lambda splits into -D^2 + (c_i - lambda) along the eigenvectors of q_0.
                Eigen::SelfAdjointEigenSolver<CMatrix> es(problem.potential.mode(0));
                const double a = problem.radius();
                const double lam = std::min(0.0, es.eigenvalues().minCoeff() - 1.0);
                double ref = 0;
                for (double c : es.eigenvalues()) ref += 2 * std::log(2 * std::sinh(pi * a * std::sqrt(c - lam)));
                const double value = log_det(eigen, problem, lam, plan);
                const double err = std::abs(value - ref);
                r.passed = err <= 1e-6;
                r.detail = "lambda=" + format_double_short(lam) + ": |err| " + sci(err) + " (tol 1e-6)";
            } catch (const Error& e) {
                r.detail = e.code() + ": " + e.what();
            }
        }
        r.seconds = seconds_since(t0);
        out.push_back(r);
    }
    return out;
}

std::string format_check(const CheckResult& r, bool with_time) {
    std::string s = r.passed ? (r.applicable ? "PASS" : "SKIP") : "FAIL";
    s += "  ";
    if (r.id > 0) s += std::to_string(r.id) + " ";
    s += r.name + "  " + r.detail;
    if (with_time) s += "  [" + fixed(r.seconds, 2) + " s]";
    return s;
}

}  // namespace heatkern
