#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatkern/errors.hpp"
#include "heatkern/heat_coeffs.hpp"
#include "heatkern/oracle.hpp"
#include "heatkern/specfun.hpp"

using namespace heatkern;

namespace {
constexpr double pi = std::numbers::pi;

// Lowest eigenvalues of -u'' + cos(x) u on [0, 2 pi) by periodic second-order
// finite differences, Richardson-extrapolated from m and 2m points.
std::vector<double> finite_difference_levels(int m, int count) {
    auto levels = [count](int pts) {
        const double h = 2 * pi / pts;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(pts, pts);
        for (int i = 0; i < pts; ++i) {
            a(i, i) = 2 / (h * h) + std::cos(i * h);
            a(i, (i + 1) % pts) = a(i, (i + pts - 1) % pts) = -1 / (h * h);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
        std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + count);
        return v;
    };
    const auto c = levels(m), f = levels(2 * m);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back((4 * f[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)]) / 3);
    return out;
}
}  // namespace

TEST_CASE("free spectrum") {
    const auto p = SpectralProblem::free(2.0, 2);
    const EigenData e = solve(p, 10);
    CHECK(e.values.size() == 42);
    CHECK(e.values[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(e.values[2] == doctest::Approx(0.25));
    CHECK(e.values.back() == doctest::Approx(25.0));
}

TEST_CASE("Mathieu-type levels against finite differences") {
    const auto p = SpectralProblem::cosine(1.0, 1.0);
    const EigenData e = solve(p, 40, true);
    const auto ref = finite_difference_levels(400, 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(e.values[static_cast<std::size_t>(i)] == doctest::Approx(ref[static_cast<std::size_t>(i)]).epsilon(1e-6));
        CHECK(static_cast<double>(e.precise[static_cast<std::size_t>(i)]) ==
              doctest::Approx(e.values[static_cast<std::size_t>(i)]).epsilon(1e-13));
    }
}

TEST_CASE("heat trace of the free operator") {
    const double a = 1.3;
    const auto p = SpectralProblem::free(a, 1);
    const EigenData e = solve(p, n_max_for_trace(p, 0.05, 1e-16));
    for (double t : {0.05, 0.4, 3.0}) {
        double direct = 0;
        for (int n = -400; n <= 400; ++n) direct += std::exp(-t * n * n / (a * a));
        CHECK(heat_trace(e, p, t) == doctest::Approx(direct).epsilon(1e-14));
        CHECK(omega(e, p, t) == doctest::Approx(2 * pi * a * theta(t / (a * a))).epsilon(1e-13));
    }
    CHECK_THROWS_AS(heat_trace(solve(p, 5), p, 0.01), ResolutionError);
    CHECK_THROWS_AS(heat_trace(e, p, -1.0), DomainError);
}

TEST_CASE("assembly refuses truncations below the mode cutoff") {
    const Complex m[] = {0.1, 0, 0, 0, 0.1};
    const SpectralProblem p{PeriodicFunction::scalar(1.0, m)};
    CHECK(p.mode_cutoff() == 2);
    CHECK_THROWS_AS(assemble(p, 1), ResolutionError);
    CHECK(assemble(p, 3).rows() == 7);
}

TEST_CASE("zeta of the free operator") {
    // sum_n 1/(n^2 + 1) = pi coth pi
    const auto p = SpectralProblem::free(1.0, 1);
    const EigenData e = solve(p, 60);
    CHECK(zeta(e, p, 1.0, -1.0) == doctest::Approx(pi / std::tanh(pi)).epsilon(1e-12));
    CHECK(zeta_from_b(e, p, 1.0, -1.0) == doctest::Approx(pi / std::tanh(pi)).epsilon(1e-8));
    CHECK_THROWS_AS(zeta(e, p, 0.4, -1.0), DomainError);
    CHECK_THROWS_AS(zeta(e, p, 1.0, 0.5), DomainError);
}

TEST_CASE("log Det of constant potentials") {
    for (double c : {1.0, 4.0}) {
        const auto p = SpectralProblem::constant(1.0, CMatrix::Constant(1, 1, c));
        MellinPlan plan;
        const EigenData e = solve(p, n_max_for_mellin(p, plan));
        for (double lambda : {0.0, -2.0}) {
            const double ref = 2 * std::log(2 * std::sinh(pi * std::sqrt(c - lambda)));
            CHECK(log_det(e, p, lambda, plan) == doctest::Approx(ref).epsilon(1e-8));
        }
    }
}

TEST_CASE("B_q at integer q uses the invariants") {
    // B_1(lambda) = A_1 - lambda A_0
    const auto p = SpectralProblem::cosine(1.0, 0.7);
    const EigenData e = solve(p, 30);
    const auto ak = heat_invariants(2, p.potential);
    CHECK(b_function(e, p, 1.0, -0.5) == doctest::Approx(ak[1] + 0.5 * ak[0]).epsilon(1e-13));
}

TEST_CASE("Mellin split is insensitive to the split point") {
    const auto p = SpectralProblem::cosine(1.0, 1.0);
    MellinPlan lo, hi;
    lo.split = 0.125;
    hi.split = 0.25;
    const EigenData e = solve(p, n_max_for_mellin(p, lo));
    CHECK(log_det(e, p, -1.0, lo) == doctest::Approx(log_det(e, p, -1.0, hi)).epsilon(1e-8));
}
