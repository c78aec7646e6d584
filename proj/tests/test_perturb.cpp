#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatkern/errors.hpp"
#include "heatkern/perturb.hpp"
#include "heatkern/specfun.hpp"

using namespace heatkern;

namespace {
constexpr double pi = std::numbers::pi;
}  // namespace

TEST_CASE("beta_0 is theta, beta_k reduces to alpha for small tau") {
    for (double tau : {0.01, 0.5, 3.0}) CHECK(beta_k(0, tau) == doctest::Approx(theta(tau)).epsilon(1e-14));
    CHECK(beta_k(3, 0.01) == doctest::Approx(alpha(0.09)).epsilon(1e-13));
    CHECK(beta_k(2, 1.0) == doctest::Approx(beta_k(-2, 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(beta_k(1, 0.0), DomainError);
}

TEST_CASE("beta_k from its defining sum") {
    for (int k : {1, 2, 5})
        for (double tau : {0.7, 2.5}) {
            // sqrt(tau/pi) int_0^1 sum_n exp(-tau [n^2 + (1+xi)/2 (k^2 - 2nk)]), midpoint in xi
            double acc = 0;
            const int m = 2000;
            for (int i = 0; i < m; ++i) {
                const double xi = (i + 0.5) / m;
                for (int n = -60; n <= 60; ++n) acc += std::exp(-tau * (n * n + (1 + xi) / 2 * (k * k - 2.0 * n * k)));
            }
            acc *= std::sqrt(tau / pi) / m;
            CHECK(beta_k(k, tau) == doctest::Approx(acc).epsilon(1e-6));
        }
}

TEST_CASE("second-order trace of a constant potential") {
    // exact: 2 pi a e^{-tc} theta(t/a^2); second order keeps 1 - tc + (tc)^2/2
    const double a = 1.0, c = 0.01, t = 0.5;
    const auto p = SpectralProblem::constant(a, CMatrix::Constant(1, 1, c));
    const double exact = 2 * pi * a * std::exp(-t * c) * theta(t / (a * a));
    const double second = 2 * pi * a * (1 - t * c + t * t * c * c / 2) * theta(t / (a * a));
    CHECK(omega_exact2(p, t).value == doctest::Approx(second).epsilon(1e-14));
    CHECK(std::abs(omega_exact2(p, t).value - exact) < 2 * pi * std::pow(t * c, 3));
}

TEST_CASE("spectral forms of a constant potential") {
    const double a = 2.0, c = 0.3, lambda = -1.5;
    const double mu = -lambda;
    const auto p = SpectralProblem::constant(a, CMatrix::Constant(1, 1, c));
    const auto f = bq_gamma(p, 0.5, lambda);
    CHECK(f.gamma == doctest::Approx(pi * a * c / std::sqrt(mu) - pi * a * c * c / (4 * std::pow(mu, 1.5))).epsilon(1e-14));
    CHECK(f.gamma == doctest::Approx(f.b_q).epsilon(1e-14));
    CHECK_THROWS_AS(bq_gamma(p, 0.5, 0.1), DomainError);
}

TEST_CASE("resummed trace of a constant potential") {
    const double a = 1.0, c = 0.4, t = 0.3;
    const auto p = SpectralProblem::constant(a, CMatrix::Constant(1, 1, c));
    double partial = 0, term = 1;
    for (int k = 0; k <= 5; ++k) {
        partial += term;
        term *= -t * c / (k + 1);
    }
    CHECK(resummed_omega(p, t, 5).value == doctest::Approx(2 * pi * a * partial).epsilon(1e-14));
}

TEST_CASE("trace and determinant tables") {
    const auto p = SpectralProblem::cosine(1.0, 0.1);
    const auto rows = trace_table(p, {0.01, 0.1, 1.0}, 6);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.omega_perturbative == doctest::Approx(r.omega_oracle).epsilon(1e-4));
    }
    CHECK(rows[0].omega_resummed == doctest::Approx(rows[0].omega_oracle).epsilon(1e-14));
    const auto det = det_table(p, {-1.0, -2.0});
    REQUIRE(det.size() == 2);
    CHECK(det[0].weyl == doctest::Approx(2 * pi));
    CHECK(det[1].log_det_oracle - det[1].weyl == doctest::Approx(det[1].gamma).epsilon(1e-2));
    CHECK_THROWS_AS(trace_table(p, {}, 6), InputError);
    CHECK_THROWS_AS(det_table(p, {0.5}), InputError);
}
