#pragma once

// JSON forms of the library's inputs and outputs.
//
//   DiffPoly:        [{"coeff": "p/q", "word": [d1, ...]}, ...]
//   TaylorTable:     {"algebra": "matrix"|"scalar", "rows": [[DiffPoly, ...], ...]}
//   SpectralProblem: {"a": a, "N": N, "modes": [{"n": n, "matrix": [[re, im], ...]}, ...]}
//                    matrix entries row-major, N*N pairs. Modes with n < 0 may be
//                    omitted and are then filled in as q_n^dagger.
//   trajectory:      one {"s": s, "modes": [[re, im], ...]} per line, modes n = 0..B.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "heatkern/diffpoly.hpp"
#include "heatkern/heat_coeffs.hpp"
#include "heatkern/kdv_flow.hpp"
#include "heatkern/oracle.hpp"

namespace heatkern {

using Json = nlohmann::json;

Json to_json(const DiffPoly& p);
/// Throws InputError on malformed terms.
DiffPoly diffpoly_from_json(const Json& j);

Json to_json(const TaylorTable& table);
TaylorTable taylor_table_from_json(const Json& j);

/// Reads a table cached at `path` (if the file exists and matches the
/// algebra), extends it to order `k`, and writes it back when it grew.
TaylorTable load_or_build_table(const std::string& path, Algebra algebra, int k);

Json to_json(const SpectralProblem& problem);
/// Parses and validates (Hermitian modes, a > 0, N >= 1).
SpectralProblem problem_from_json(const Json& j);
SpectralProblem load_problem(const std::string& path);

Json state_to_json(const FlowState& state);
void write_trajectory(std::ostream& out, const Trajectory& trajectory);

/// 17 significant digits, locale independent.
std::string format_double(double x);

/// Serialises like Json::dump, printing floating-point numbers with
/// format_double (non-finite values become null).
std::string dump_json(const Json& j, int indent = -1);

}  // namespace heatkern
