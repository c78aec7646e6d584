#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatkern/errors.hpp"
#include "heatkern/evaluate.hpp"
#include "heatkern/periodic_function.hpp"

using namespace heatkern;

namespace {
constexpr double pi = std::numbers::pi;

PeriodicFunction sample_function(double a) {
    const Complex m[] = {Complex(0.1, -0.2), Complex(0.3, 0.4), 0.7, Complex(0.3, -0.4), Complex(0.1, 0.2)};
    return PeriodicFunction::scalar(a, m);
}

double direct_value(double a, double x) {
    // 0.7 + 2 Re[(0.3 - 0.4i) e^{ix/a} + (0.1 + 0.2i) e^{2ix/a}]
    const Complex e1 = std::exp(Complex(0, x / a)), e2 = e1 * e1;
    return 0.7 + 2 * (Complex(0.3, -0.4) * e1 + Complex(0.1, 0.2) * e2).real();
}
}  // namespace

TEST_CASE("point values and samples") {
    const double a = 1.7;
    const PeriodicFunction f = sample_function(a);
    CHECK(f.is_hermitian());
    for (double x : {0.0, 0.3, 2.0, 9.0}) CHECK(f(x)(0, 0).real() == doctest::Approx(direct_value(a, x)).epsilon(1e-14));
    const auto s = f.samples(16);
    const auto back = PeriodicFunction::from_samples(a, s, 2);
    for (int n = -2; n <= 2; ++n) CHECK(std::abs(back.mode(n)(0, 0) - f.mode(n)(0, 0)) < 1e-15);
    CHECK_THROWS_AS(PeriodicFunction::from_samples(a, s, 8), AliasingError);
}

TEST_CASE("spectral derivative") {
    const double a = 1.7;
    const PeriodicFunction f = sample_function(a);
    const double x = 0.9, h = 1e-4;
    const double fd = (direct_value(a, x + h) - direct_value(a, x - h)) / (2 * h);
    CHECK(f.derivative(1)(x)(0, 0).real() == doctest::Approx(fd).epsilon(1e-7));
    CHECK(f.integral_trace() == doctest::Approx(2 * pi * a * 0.7));
}

TEST_CASE("evaluate refuses aliasing grids") {
    const PeriodicFunction f = sample_function(1.0);
    const DiffPoly p = DiffPoly::potential() * DiffPoly::potential() * DiffPoly::potential();
    CHECK(required_grid(p, f) == 13);
    CHECK_THROWS_AS(evaluate(p, f, 12), AliasingError);
    const PeriodicFunction cube = evaluate(p, f);
    for (double x : {0.2, 1.4}) CHECK(cube(x)(0, 0).real() == doctest::Approx(std::pow(direct_value(1.0, x), 3)).epsilon(1e-13));
}

TEST_CASE("matrix evaluation keeps word order") {
    CMatrix c0(2, 2), c1(2, 2);
    c0 << 1, 0, 0, -1;
    c1 << 0, 1, 0, 0;  // not Hermitian on its own; pair with its adjoint
    PeriodicFunction f(1.0, 2, 1);
    f.set_mode(0, c0);
    f.set_mode(1, c1);
    f.set_mode(-1, c1.adjoint());
    CHECK(f.is_hermitian());
    const DiffPoly qdq = DiffPoly::potential(0) * DiffPoly::potential(1);
    const PeriodicFunction g = evaluate(qdq, f);
    const double x = 0.7;
    const CMatrix expect = f(x) * f.derivative(1)(x);
    CHECK((g(x) - expect).norm() < 1e-13);
    const double tr = integrate_trace(DiffPoly::potential(0) * DiffPoly::potential(0), f);
    CHECK(tr == doctest::Approx(2 * pi * (2 + 2 * 1)));
}
