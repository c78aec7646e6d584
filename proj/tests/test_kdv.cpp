#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatkern/errors.hpp"
#include "heatkern/kdv_flow.hpp"
#include "heatkern/oracle.hpp"

using namespace heatkern;

namespace {
const PeriodicFunction cosine = SpectralProblem::cosine(1.0, 1.0).potential;
}  // namespace

TEST_CASE("flow constants are signed Catalan numbers") {
    const double expect[] = {1, -1, 2, -5, 14, -42};
    for (int k = 0; k < 6; ++k) CHECK(flow_constant(k) == expect[k]);
}

TEST_CASE("Hamiltonian gradients") {
    CHECK(hamiltonian_density_gradient(1).to_string() == "-2 Q");
    CHECK(hamiltonian_density_gradient(2).to_string() == "6 Q^2 - 2 Q''");
    CHECK(hamiltonian_density_gradient(3).to_string() == "-20 Q^3 + 20 QQ'' + 10 Q'Q' - 2 Q^(4)");
}

TEST_CASE("right-hand side of the second flow on cos x") {
    // D(6 cos^2 x + 2 cos x) = -6 sin 2x - 2 sin x
    const PeriodicFunction r = kdv_rhs(2, cosine);
    for (double x : {0.1, 1.0, 2.5})
        CHECK(r(x)(0, 0).real() == doctest::Approx(-6 * std::sin(2 * x) - 2 * std::sin(x)).epsilon(1e-13));
    CHECK(std::abs(r.mode(0)(0, 0)) < 1e-15);
}

TEST_CASE("variational derivative pairs with directional derivatives") {
    // dA_2/dQ = 2 [a_1] = 2 Q, so <phi, dA_2/dQ> = 2 int phi Q
    const Complex m[] = {Complex(0.1, 0.2), 0.3, Complex(0.1, -0.2)};
    const PeriodicFunction phi = PeriodicFunction::scalar(1.0, m);
    const double pairing = integral_pairing(phi, variational_derivative(2, cosine));
    CHECK(pairing == doctest::Approx(2 * 2 * std::numbers::pi * 2 * 0.1 * 0.5).epsilon(1e-13));
}

TEST_CASE("first flow is a translation") {
    // dQ/ds = -2 Q', so Q(s, x) = cos(x - 2s)
    const Trajectory t = integrate_flow(1, cosine, 0.5, 200);
    const auto& q = t.states.back().q;
    for (double x : {0.0, 1.3}) CHECK(q(x)(0, 0).real() == doctest::Approx(std::cos(x - 1.0)).epsilon(1e-12));
}

TEST_CASE("second flow conserves the invariants") {
    const Trajectory t = integrate_flow(2, cosine, 0.2, 800);
    CHECK(t.cutoff == 85);
    CHECK(t.states.size() == 21);
    const auto r = conservation_report(t, {1, 2, 3, 4});
    CHECK(r.max_drift() < 1e-9);
    const auto h = hamiltonian_report(t, {1, 2});
    CHECK(h.series[0].name == "I1");
    CHECK(h.series[1].values[0] == doctest::Approx(2 * r.series[2].values[0]).epsilon(1e-14));  // I_2 = 2 A_3
}

TEST_CASE("integration refusals") {
    CHECK_THROWS_AS(integrate_flow(3, cosine, 1.0, 100), FlowBlowUp);
    FlowOptions o;
    o.cutoff = 200;
    CHECK_THROWS_AS(integrate_flow(2, cosine, 0.1, 10, o), ResolutionError);
    CHECK_THROWS_AS(integrate_flow(0, cosine, 0.1, 10), InputError);
    const PeriodicFunction m = SpectralProblem::free(1.0, 2).potential;
    CHECK_THROWS_AS(integrate_flow(2, m, 0.1, 10), InputError);
    try {
        integrate_flow(3, cosine, 1.0, 100);
    } catch (const FlowBlowUp& e) {
        CHECK(e.last_good.s >= 0);
    }
}
