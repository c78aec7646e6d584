#include <doctest.h>

#include "heatkern/verify.hpp"

using namespace heatkern;

TEST_CASE("problem checks on a constant potential") {
    CMatrix c(2, 2);
    c << 1.0, 0.5, 0.5, 2.0;
    const auto results = run_problem_checks(SpectralProblem::constant(2.0, c));
    REQUIRE(results.size() == 3);
    for (const auto& r : results) {
        CHECK(r.passed);
        CHECK(r.applicable);
    }
}

TEST_CASE("determinant check is skipped for varying potentials") {
    const auto results = run_problem_checks(SpectralProblem::cosine(1.0, 0.5));
    CHECK_FALSE(results.back().applicable);
    CHECK(format_check(results.back()).rfind("SKIP", 0) == 0);
}

TEST_CASE("fast criteria") {
    for (int id : {1, 2, 3, 10}) {
        const auto r = run_criterion(id);
        CHECK(r.id == id);
        CHECK(r.passed);
    }
}
