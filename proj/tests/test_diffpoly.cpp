#include <doctest.h>

#include "heatkern/diffpoly.hpp"
#include "heatkern/errors.hpp"

using namespace heatkern;

namespace {
DiffPoly q(int d = 0) { return DiffPoly::potential(d); }
}  // namespace

TEST_CASE("weights and canonical form") {
    CHECK(weight({}) == 0);
    CHECK(weight({0, 2}) == 6);
    const DiffPoly p = q() * q() - Rational(1, 3) * q(2);
    CHECK(p.homogeneous_weight() == 4);
    CHECK(p.size() == 2);
    CHECK(p.to_string() == "Q^2 - 1/3 Q''");
    CHECK((p - p).is_zero());
    CHECK(DiffPoly::make(0, {1}).is_zero());
    CHECK_THROWS_AS(DiffPoly::make(1, {-1}), InputError);
}

TEST_CASE("noncommutative product keeps word order") {
    const DiffPoly a = q(0) * q(1);
    const DiffPoly b = q(1) * q(0);
    CHECK_FALSE(a == b);
    CHECK(scalar_image(a) == scalar_image(b));
    CHECK(reversed(a) == b);
    CHECK(commutator_with_potential(q(1)) == a - b);
}

TEST_CASE("Leibniz rule") {
    // D(Q Q') = Q' Q' + Q Q''
    CHECK(differentiate(q(0) * q(1)) == q(1) * q(1) + q(0) * q(2));
    CHECK(differentiate(q(0), 3) == q(3));
    CHECK(differentiate(DiffPoly::identity()).is_zero());
}

TEST_CASE("antiderivative inverts D and refuses non-derivatives") {
    const DiffPoly p = q(0) * q(0) * q(1) + Rational(2, 7) * q(2) * q(1);
    CHECK(antiderivative(differentiate(p)) == p);
    CHECK(antiderivative(scalar_image(differentiate(p)), Algebra::scalar) == scalar_image(p));
    CHECK_THROWS_AS(antiderivative(q(0) * q(0)), NotExactDerivative);
    CHECK_THROWS_AS(antiderivative(q(1) * q(1), Algebra::scalar), NotExactDerivative);
}

TEST_CASE("scalar image sorts words") {
    const DiffPoly p = q(2) * q(0) + q(0) * q(2);
    CHECK(scalar_image(p) == Rational(2) * q(0) * q(2));
    CHECK(project(p, Algebra::matrix) == p);
}
