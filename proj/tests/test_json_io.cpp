#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "heatkern/errors.hpp"
#include "heatkern/json_io.hpp"

using namespace heatkern;

TEST_CASE("DiffPoly round trip") {
    TaylorTable t(Algebra::matrix);
    for (int k = 0; k <= 4; ++k) {
        const DiffPoly& p = t.diagonal(k);
        const Json j = to_json(p);
        CHECK(diffpoly_from_json(Json::parse(j.dump())) == p);
    }
    CHECK(to_json(t.diagonal(2)).dump() == R"([{"coeff":"-1/3","word":[2]},{"coeff":"1","word":[0,0]}])");
    CHECK_THROWS_AS(diffpoly_from_json(Json::parse(R"([{"coeff": "1/0", "word": [0]}])")), InputError);
    CHECK_THROWS_AS(diffpoly_from_json(Json::parse(R"([{"coeff": 1, "word": [0]}])")), InputError);
    CHECK_THROWS_AS(diffpoly_from_json(Json::parse(R"([{"coeff": "1", "word": [-1]}])")), InputError);
}

TEST_CASE("TaylorTable cache") {
    const auto path = std::filesystem::temp_directory_path() / "heatkern_test_cache.json";
    std::filesystem::remove(path);
    TaylorTable a = load_or_build_table(path.string(), Algebra::scalar, 3);
    CHECK(std::filesystem::exists(path));
    TaylorTable b = load_or_build_table(path.string(), Algebra::scalar, 5);
    CHECK(b.diagonal(3) == a.diagonal(3));
    CHECK(b.diagonal(5) == TaylorTable(Algebra::scalar).diagonal(5));
    const TaylorTable c = taylor_table_from_json(to_json(b));
    CHECK(c.max_order() == b.max_order());
    std::filesystem::remove(path);
}

TEST_CASE("problem files") {
    const auto p = problem_from_json(Json::parse(R"({"a": 2, "N": 1, "modes": [{"n": 1, "matrix": [[0.5, 0.25]]}]})"));
    CHECK(p.radius() == 2);
    CHECK(p.potential.mode(-1)(0, 0) == Complex(0.5, -0.25));
    CHECK(p.mode_cutoff() == 1);
    const auto back = problem_from_json(to_json(p));
    CHECK(back.potential.mode(1)(0, 0) == p.potential.mode(1)(0, 0));

    // explicit negative modes must match the adjoint
    CHECK_THROWS_AS(problem_from_json(Json::parse(
                        R"({"a": 1, "N": 1, "modes": [{"n": 1, "matrix": [[1, 0]]}, {"n": -1, "matrix": [[2, 0]]}]})")),
                    InputError);
    CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"a": 1, "N": 1, "modes": [{"n": 0, "matrix": [[1, 1]]}]})")),
                    InputError);
    CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"a": -1, "N": 1, "modes": []})")), InputError);
    CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"a": 1, "N": 2, "modes": [{"n": 0, "matrix": [[1, 0]]}]})")),
                    InputError);
    CHECK_THROWS_AS(load_problem("/nonexistent/problem.json"), InputError);
}

TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(6.283185307179586) == "6.2831853071795862");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(1.0 / 3) == "0.33333333333333331");
    CHECK(dump_json(Json{{"x", 0.5}, {"y", {1, 2.5}}}) == R"({"x":0.5,"y":[1,2.5]})");
    CHECK(dump_json(Json(std::nan(""))) == "null");
}

TEST_CASE("trajectory lines") {
    Trajectory t;
    const Complex m[] = {Complex(0.5, -0.1), 0.0, Complex(0.5, 0.1)};
    t.states.push_back({0.25, PeriodicFunction::scalar(1.0, m)});
    std::ostringstream out;
    write_trajectory(out, t);
    CHECK(out.str() == "{\"modes\":[[0,0],[0.5,0.10000000000000001]],\"s\":0.25}\n");
}
