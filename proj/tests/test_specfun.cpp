#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "heatkern/errors.hpp"
#include "heatkern/quadrature.hpp"
#include "heatkern/specfun.hpp"

using namespace heatkern;

namespace {
constexpr double pi = std::numbers::pi;

double kronrod(auto f) { return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-15); }
}  // namespace

TEST_CASE("Gauss-Legendre rules") {
    const auto& r = gauss_legendre(8);
    double sum = 0;
    for (double w : r.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(integrate_gauss([](double x) { return std::pow(x, 15); }, 0, 1, 8) == doctest::Approx(1.0 / 16).epsilon(1e-14));
    // boundary layer of width 1e-3 at v = 0
    CHECK(integrate_graded([](double v) { return std::exp(-v / 1e-3); }, 1e-3, 1e-13) ==
          doctest::Approx(1e-3 * (1 - std::exp(-1e3))).epsilon(1e-12));
}

TEST_CASE("theta duality and crossover") {
    for (double t : {0.05, 1.0, pi, 7.0, 40.0}) {
        CHECK(theta_direct(t) == doctest::Approx(theta_dual(t)).epsilon(1e-13));
        CHECK(theta(t) == doctest::Approx(theta_dual(t)).epsilon(1e-13));
    }
    CHECK(theta(0.01) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(theta(0.0), DomainError);
}

TEST_CASE("alpha against direct integration") {
    for (double z : {1e-3, 0.5, 3.9, 4.1, 50.0, 2e3}) {
        const double ref = kronrod([z](double xi) { return std::exp(-(1 - xi * xi) * z / 4); });
        CHECK(alpha(z) == doctest::Approx(ref).epsilon(1e-13));
        const double dref = kronrod([z](double xi) {
            const double w = (1 - xi * xi) / 4;
            return -w * std::exp(-w * z);
        });
        CHECK(alpha_derivative(z) == doctest::Approx(dref).epsilon(1e-12));
    }
    CHECK(alpha_series(0.7) == doctest::Approx(alpha(0.7)).epsilon(1e-14));
    // large z: alpha ~ 2/z
    CHECK(1e6 * alpha(1e6) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("f_q closed forms") {
    for (double z : {0.0, 0.3, 5.0, 80.0}) {
        CHECK(f_q(-1.5, z) == doctest::Approx(4 / (z + 4)).epsilon(1e-14));
        CHECK(f_q_quadrature(-1.5, z) == doctest::Approx(4 / (z + 4)).epsilon(1e-12));
        CHECK(f_q_quadrature(-0.5, z) == doctest::Approx(f_minus_half_closed(z)).epsilon(1e-12));
        // q = 1: 1 + z/6
        CHECK(f_q(1, z) == doctest::Approx(1 + z / 6).epsilon(1e-14));
        const double ref = kronrod([z](double xi) { return std::pow(1 + (1 - xi * xi) * z / 4, 0.5); });
        CHECK(f_q(0.5, z) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK_THROWS_AS(f_q(0.5, -1.0), DomainError);
}

TEST_CASE("f_q large-z law") {
    for (double q : {0.5, 1.5, -0.25}) {
        const double z = 1e8;
        CHECK(f_q(q, z) / std::pow(z, q) == doctest::Approx(f_q_asymptotic_prefactor(q)).epsilon(1e-3));
        CHECK(f_q_asymptotic_prefactor(q) == doctest::Approx(std::pow(std::tgamma(q + 1), 2) / std::tgamma(2 * q + 2)));
    }
}

TEST_CASE("upper incomplete gamma against boost") {
    for (double s : {0.3, 1.0, 2.5, 9.0})
        for (double x : {0.01, 0.7, 1.0, 4.0, 30.0})
            CHECK(upper_gamma(s, x) == doctest::Approx(boost::math::tgamma(s, x)).epsilon(1e-13));
    for (int n : {0, 1, 3})
        for (double x : {0.05, 1.0, 6.0})
            CHECK(upper_gamma(-n, x) == doctest::Approx(boost::math::expint(n + 1, x) / std::pow(x, n)).epsilon(1e-13));
    // Gamma(-1/2, x) = 2 x^{-1/2} e^{-x} - 2 Gamma(1/2, x)
    for (double x : {0.2, 3.0})
        CHECK(upper_gamma(-0.5, x) ==
              doctest::Approx(2 * std::exp(-x) / std::sqrt(x) - 2 * boost::math::tgamma(0.5, x)).epsilon(1e-13));
}

TEST_CASE("partial Laplace integral of a power") {
    // int_0^T t^{s-1} e^{-mu t} dt = mu^{-s} gamma(s, mu T)
    CHECK(partial_laplace_power(1.5, 0.5, 10.0) ==
          doctest::Approx(std::pow(0.5, -1.5) * boost::math::tgamma_lower(1.5, 5.0)).epsilon(1e-13));
    CHECK(partial_laplace_power(2.0, 0.0, 3.0) == doctest::Approx(4.5).epsilon(1e-14));
    CHECK(lower_gamma_continued(-0.5, 2.0) == doctest::Approx(std::tgamma(-0.5) - upper_gamma(-0.5, 2.0)).epsilon(1e-13));
}
