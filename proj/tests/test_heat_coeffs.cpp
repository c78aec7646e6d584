#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatkern/errors.hpp"
#include "heatkern/evaluate.hpp"
#include "heatkern/heat_coeffs.hpp"

using namespace heatkern;

namespace {
DiffPoly q(int d = 0) { return DiffPoly::potential(d); }
constexpr double pi = std::numbers::pi;
}  // namespace

TEST_CASE("low-order diagonal coefficients") {
    TaylorTable t(Algebra::matrix);
    CHECK(t.diagonal(0) == DiffPoly::identity());
    CHECK(t.diagonal(1) == q());
    CHECK(t.diagonal(2) == q() * q() - Rational(1, 3) * q(2));
    CHECK(t.diagonal(3) == q() * q() * q() - Rational(1, 2) * (q() * q(2) + q(2) * q() + q(1) * q(1)) +
                              Rational(1, 10) * q(4));
}

TEST_CASE("Taylor and diagonal recursions agree") {
    for (int k = 0; k <= 6; ++k) CHECK(taylor_coefficient(k, 0, Algebra::scalar) == diagonal_coefficient_recursive(k, Algebra::scalar));
    for (int k = 0; k <= 4; ++k) CHECK(taylor_coefficient(k, 0) == diagonal_coefficient_recursive(k));
}

TEST_CASE("entries are homogeneous of weight 2k + n") {
    TaylorTable t(Algebra::matrix);
    for (int k = 1; k <= 3; ++k)
        for (int n = 0; n <= 3; ++n) CHECK(t.entry(k, n).homogeneous_weight() == 2 * k + n);
}

TEST_CASE("leading derivative term") {
    TaylorTable t(Algebra::scalar);
    for (int k = 2; k <= 6; ++k) {
        const Rational lead = t.diagonal(k).coeff({2 * k - 2});
        const Rational sign = (k - 1) % 2 == 0 ? 1 : -1;
        CHECK(lead == sign * leading_derivative_factor(k));
    }
    CHECK(leading_derivative_factor(3) == Rational(1, 10));
}

TEST_CASE("E on the identity") {
    CHECK(apply_E(DiffPoly::identity()) == Rational(-2) * q(1));
}

TEST_CASE("W identity and scalar vanishing") {
    TaylorTable t(Algebra::matrix);
    for (int k = 0; k <= 3; ++k) {
        const DiffPoly w = w_coefficient(k, t);
        CHECK(differentiate(w) == commutator_with_potential(t.diagonal(k)));
        CHECK(scalar_image(w).is_zero());
    }
}

TEST_CASE("global invariants of a constant potential") {
    // [a_k] = Q^k for constant Q, so A_k = 2 pi a tr c^k.
    CMatrix c(2, 2);
    c << 1.0, 0.5, 0.5, 2.0;
    const double a = 1.5;
    const PeriodicFunction f = PeriodicFunction::constant(a, c);
    const auto ak = heat_invariants(4, f);
    CMatrix power = CMatrix::Identity(2, 2);
    for (int k = 0; k <= 4; ++k) {
        CHECK(ak[static_cast<std::size_t>(k)] == doctest::Approx(2 * pi * a * power.trace().real()).epsilon(1e-13));
        power *= c;
    }
}

TEST_CASE("invariants of cos x against direct quadrature") {
    const Complex m[] = {0.5, 0, 0.5};
    const PeriodicFunction f = PeriodicFunction::scalar(1.0, m);
    // A_2 = int Q^2; A_3 = int (Q^3 - Q Q'' - 1/2 Q'^2) = int (Q^3 + 1/2 Q'^2).
    double a2 = 0, a3 = 0;
    const int n = 4096;
    for (int j = 0; j < n; ++j) {
        const double x = 2 * pi * j / n, qv = std::cos(x), dq = -std::sin(x);
        a2 += qv * qv;
        a3 += qv * qv * qv + 0.5 * dq * dq;
    }
    a2 *= 2 * pi / n;
    a3 *= 2 * pi / n;
    CHECK(global_invariant(2, f).value == doctest::Approx(a2).epsilon(1e-13));
    CHECK(global_invariant(3, f).value == doctest::Approx(a3).epsilon(1e-13));
    const auto precise = heat_invariants_precise(4, f);
    const auto plain = heat_invariants(4, f);
    for (int k = 0; k <= 4; ++k)
        CHECK(static_cast<double>(precise[static_cast<std::size_t>(k)]) == doctest::Approx(plain[static_cast<std::size_t>(k)]).epsilon(1e-12));
}

TEST_CASE("integrated quadratic coefficient") {
    TaylorTable t(Algebra::scalar);
    // [a_2]: Q^2 term only at length 2, h = 0.
    CHECK(integrated_quadratic_coefficient(t.diagonal(2), 2) == 1);
}
