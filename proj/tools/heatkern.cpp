// heatkern: command-line front end.
//
// Exit codes: 0 ok, 2 configuration/input error, 3 numerical resolution
// refusal, 4 verification failure. Errors are one line on stderr:
//   error <code>: <message>

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heatkern/errors.hpp"
#include "heatkern/heat_coeffs.hpp"
#include "heatkern/json_io.hpp"
#include "heatkern/kdv_flow.hpp"
#include "heatkern/oracle.hpp"
#include "heatkern/parallel.hpp"
#include "heatkern/perturb.hpp"
#include "heatkern/verify.hpp"

#ifndef HEATKERN_DATA_DIR
#define HEATKERN_DATA_DIR ""
#endif

using namespace heatkern;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_resolution = 3;
constexpr int exit_verify = 4;

struct Options {
    std::string output;
    std::string format;  // "", "csv" or "json"
    std::string problem;

    int k = 0;
    std::vector<int> ks;
    int kmax = -1;
    std::string algebra = "matrix";
    std::string cache;
    bool table = false;

    std::vector<double> ts;
    double t_min = 0, t_max = 0;
    int t_count = 0;
    int order = 6;

    std::vector<double> lambdas;
    double lambda_min = 0, lambda_max = 0;
    int lambda_count = 0;
    double lambda = -1;
    std::optional<double> split;
    double match_tolerance = 1e-6;

    std::vector<double> ss;
    int n_max = 0;

    int flow = 2;
    double s_end = 1;
    int steps = 4000;
    int grid = 256;
    int cutoff = 0;
    std::vector<int> ms = {1, 2, 3};
    std::string trajectory;

    std::vector<int> criteria;
    bool timings = false;
};

// Relative paths that do not exist are looked up among the bundled problems.
std::string resolve_problem(const std::string& path) {
    if (path.empty()) throw InputError("--problem is required");
    if (std::filesystem::exists(path)) return path;
    const std::filesystem::path bundled = std::filesystem::path(HEATKERN_DATA_DIR) / path;
    if (std::filesystem::path(path).is_relative() && std::filesystem::exists(bundled)) return bundled.string();
    throw InputError("problem file not found: " + path);
}

SpectralProblem problem_of(const Options& o) { return load_problem(resolve_problem(o.problem)); }

std::vector<double> grid_of(const std::vector<double>& list, double lo, double hi, int count, bool log_spaced,
                            const char* name) {
    if (!list.empty()) return list;
    if (count < 1) throw InputError(std::string("no ") + name + "-grid: give a list or min/max/count");
    if (count == 1) return {lo};
    std::vector<double> g;
    for (int i = 0; i < count; ++i) {
        const double f = double(i) / (count - 1);
        g.push_back(log_spaced ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
    return g;
}

void write_output(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw InputError("cannot write " + o.output);
    out << text;
}

// Rows of doubles as CSV or as a JSON array of objects.
std::string table_text(const Options& o, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows) {
    if (o.format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json obj = Json::object();
            for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = r[i];
            arr.push_back(std::move(obj));
        }
        return dump_json(arr, 2) + "\n";
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
        out << '\n';
    }
    return out.str();
}

Algebra algebra_of(const std::string& s) {
    if (s == "matrix") return Algebra::matrix;
    if (s == "scalar") return Algebra::scalar;
    throw InputError("algebra must be matrix or scalar");
}

std::string word_text(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
    return s;
}

int cmd_coeffs(const Options& o) {
    if (o.k < 0) throw InputError("--k must be non-negative");
    const Algebra alg = algebra_of(o.algebra);
    TaylorTable table = o.cache.empty() ? TaylorTable(alg) : load_or_build_table(o.cache, alg, o.k);
    const DiffPoly& p = table.diagonal(o.k);
    std::string text;
    if (o.format == "json") {
        text = dump_json(o.table ? to_json(table) : to_json(p), 2) + "\n";
    } else if (o.format == "csv") {
        text = "k,coeff,word\n";
        const int lo = o.table ? 0 : o.k;
        for (int k = lo; k <= o.k; ++k)
            for (const auto& [word, c] : table.diagonal(k).terms())
                text += std::to_string(k) + "," + c.get_str() + "," + word_text(word) + "\n";
    } else {
        const int lo = o.table ? 0 : o.k;
        for (int k = lo; k <= o.k; ++k) {
            if (o.table) text += "[a" + std::to_string(k) + "] = ";
            text += table.diagonal(k).to_string() + "\n";
        }
    }
    write_output(o, text);
    return exit_ok;
}

int cmd_invariants(const Options& o) {
    const SpectralProblem problem = problem_of(o);
    std::vector<int> ks = o.ks;
    if (o.kmax >= 0)
        for (int k = 0; k <= o.kmax; ++k) ks.push_back(k);
    if (ks.empty()) throw InputError("give --k or --kmax");
    TaylorTable table(problem.dim() == 1 ? Algebra::scalar : Algebra::matrix);
    std::vector<std::vector<double>> rows;
    for (int k : ks) {
        if (k < 0) throw InputError("invariant order must be non-negative");
        rows.push_back({double(k), global_invariant(k, problem.potential, table).value});
    }
    if (o.format.empty()) {
        std::string text;
        for (const auto& r : rows) text += (rows.size() > 1 ? std::to_string(int(r[0])) + " " : "") + format_double(r[1]) + "\n";
        write_output(o, text);
    } else {
        write_output(o, table_text(o, {"index", "value"}, rows));
    }
    return exit_ok;
}

int cmd_trace(const Options& o) {
    const SpectralProblem problem = problem_of(o);
    const auto ts = grid_of(o.ts, o.t_min, o.t_max, o.t_count, true, "t");
    for (double t : ts)
        if (!(t > 0)) throw InputError("t-grid must be strictly positive");
    std::vector<std::vector<double>> rows;
    for (const auto& r : trace_table(problem, ts, o.order))
        rows.push_back({r.t, r.omega_oracle, r.omega_perturbative, r.omega_resummed});
    write_output(o, table_text(o, {"t", "omega_oracle", "omega_perturbative", "omega_resummed"}, rows));
    return exit_ok;
}

MellinPlan plan_of(const Options& o) {
    MellinPlan plan;
    plan.split = o.split;
    plan.order = o.order;
    plan.match_tolerance = o.match_tolerance;
    return plan;
}

int cmd_det(const Options& o) {
    const SpectralProblem problem = problem_of(o);
    const auto lambdas = grid_of(o.lambdas, o.lambda_min, o.lambda_max, o.lambda_count, false, "lambda");
    std::vector<std::vector<double>> rows;
    for (const auto& r : det_table(problem, lambdas, plan_of(o)))
        rows.push_back({r.lambda, r.log_det_oracle, r.weyl, r.gamma});
    write_output(o, table_text(o, {"lambda", "log_det_oracle", "weyl", "gamma"}, rows));
    return exit_ok;
}

int cmd_zeta(const Options& o) {
    const SpectralProblem problem = problem_of(o);
    if (o.ss.empty()) throw InputError("give --s");
    MellinPlan plan = plan_of(o);
    plan.invariants = heat_invariants(plan.order, problem.potential);
    const int n_max = o.n_max > 0 ? o.n_max : n_max_for_mellin(problem, plan);
    const EigenData eigen = solve(problem, n_max);
    std::vector<std::vector<double>> rows(o.ss.size());
    parallel_for(o.ss.size(), [&](std::size_t i) {
        const double s = o.ss[i];
        rows[i] = {s, o.lambda, zeta(eigen, problem, s, o.lambda), zeta_from_b(eigen, problem, s, o.lambda, plan)};
    });
    write_output(o, table_text(o, {"s", "lambda", "zeta", "zeta_mellin"}, rows));
    return exit_ok;
}

int cmd_kdv(const Options& o) {
    const SpectralProblem problem = problem_of(o);
    FlowOptions fo;
    fo.grid = o.grid;
    fo.cutoff = o.cutoff;
    const Trajectory traj = integrate_flow(o.flow, problem.potential, o.s_end, o.steps, fo);
    if (!o.trajectory.empty()) {
        std::ofstream out(o.trajectory, std::ios::binary);
        if (!out) throw InputError("cannot write " + o.trajectory);
        write_trajectory(out, traj);
    }
    const ConservationReport report = hamiltonian_report(traj, o.ms);
    if (o.format == "json") {
        Json series = Json::array();
        for (const auto& s : report.series)
            series.push_back({{"m", s.order - 1}, {"name", s.name}, {"drift", s.drift}, {"relative", s.relative},
                              {"values", s.values}});
        Json j = {{"flow", report.flow}, {"step", report.step}, {"cutoff", traj.cutoff}, {"grid", traj.grid},
                  {"s", report.s}, {"series", std::move(series)}};
        write_output(o, dump_json(j, 2) + "\n");
    } else {
        std::string text = "k,m,drift\n";
        for (const auto& s : report.series)
            text += std::to_string(report.flow) + "," + std::to_string(s.order - 1) + "," + format_double(s.drift) + "\n";
        write_output(o, text);
    }
    return exit_ok;
}

int cmd_verify(const Options& o) {
    std::vector<CheckResult> results;
    if (!o.problem.empty()) {
        results = run_problem_checks(problem_of(o));
    } else {
        results = run_acceptance(o.criteria.empty() ? acceptance_ids() : o.criteria);
    }
    bool ok = true;
    std::string text;
    for (const auto& r : results) {
        text += format_check(r, o.timings) + "\n";
        ok = ok && r.passed;
    }
    write_output(o, text);
    return ok ? exit_ok : exit_verify;
}

int exit_code_for(const Error& e) {
    const std::string& c = e.code();
    if (c == "resolution" || c == "aliasing" || c == "integration" || c == "not_exact_derivative")
        return exit_resolution;
    return exit_config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heatkern: heat invariants, spectral functions and KdV flows of -D^2 + Q on a circle"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c, bool problem) {
        c->add_option("-o,--output", o.output, "output file (default stdout)");
        c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        if (problem) c->add_option("--problem", o.problem, "problem JSON file")->required();
    };

    auto* coeffs = app.add_subcommand("coeffs", "symbolic diagonal coefficient [a_k]");
    add_common(coeffs, false);
    coeffs->add_option("--k", o.k, "order")->required();
    coeffs->add_option("--algebra", o.algebra, "matrix or scalar")->check(CLI::IsMember({"matrix", "scalar"}));
    coeffs->add_option("--cache", o.cache, "TaylorTable cache file (read, extended, written)");
    coeffs->add_flag("--table", o.table, "all orders 0..k (json: the full Taylor table)");

    auto* inv = app.add_subcommand("invariants", "global heat invariants A_k");
    add_common(inv, true);
    inv->add_option("--k", o.ks, "orders");
    inv->add_option("--kmax", o.kmax, "orders 0..kmax");

    auto* trace = app.add_subcommand("trace", "Omega(t): oracle, perturbative, resummed");
    add_common(trace, true);
    trace->add_option("--t", o.ts, "t values");
    trace->add_option("--t-min", o.t_min);
    trace->add_option("--t-max", o.t_max);
    trace->add_option("--t-count", o.t_count, "log-spaced points");
    trace->add_option("--order", o.order, "resummation order K");

    auto* det = app.add_subcommand("det", "log Det(L - lambda): oracle vs Weyl + gamma");
    add_common(det, true);
    det->add_option("--lambda", o.lambdas, "lambda values (< 0)");
    det->add_option("--lambda-min", o.lambda_min);
    det->add_option("--lambda-max", o.lambda_max);
    det->add_option("--lambda-count", o.lambda_count, "linearly spaced points");
    det->add_option("--order", o.order, "small-t series order in the Mellin split");
    det->add_option("--split", o.split, "Mellin split point t*");
    det->add_option("--match-tolerance", o.match_tolerance, "allowed series/trace mismatch at t*");

    auto* zeta_cmd = app.add_subcommand("zeta", "zeta(s, lambda), direct and through B_{1/2-s}");
    add_common(zeta_cmd, true);
    zeta_cmd->add_option("--s", o.ss, "s values (> 1/2)")->required();
    zeta_cmd->add_option("--lambda", o.lambda, "spectral parameter below the spectrum");
    zeta_cmd->add_option("--n-max", o.n_max, "plane-wave cutoff (default: automatic)");
    zeta_cmd->add_option("--order", o.order, "small-t series order in the Mellin split");
    zeta_cmd->add_option("--split", o.split, "Mellin split point t*");
    zeta_cmd->add_option("--match-tolerance", o.match_tolerance);

    auto* kdv = app.add_subcommand("kdv", "KdV-hierarchy flow and conservation report");
    add_common(kdv, true);
    kdv->add_option("--k", o.flow, "flow index");
    kdv->add_option("--s-end", o.s_end, "flow time");
    kdv->add_option("--steps", o.steps, "time steps");
    kdv->add_option("--grid", o.grid, "collocation points");
    kdv->add_option("--cutoff", o.cutoff, "retained modes |n| <= cutoff (0: dealiasing limit)");
    kdv->add_option("--m", o.ms, "invariants I_m to report");
    kdv->add_option("--trajectory", o.trajectory, "write states as JSON lines");

    auto* verify = app.add_subcommand("verify", "acceptance suite, or checks for one problem");
    verify->add_option("-o,--output", o.output);
    verify->add_option("--problem", o.problem, "run the per-problem checks instead");
    verify->add_option("--criteria", o.criteria, "subset of criteria 1..10");
    verify->add_flag("--timings", o.timings, "append wall times (output no longer reproducible)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error config: " << e.what() << "\n";
        return exit_config;
    }

    try {
        if (*coeffs) return cmd_coeffs(o);
        if (*inv) return cmd_invariants(o);
        if (*trace) return cmd_trace(o);
        if (*det) return cmd_det(o);
        if (*zeta_cmd) return cmd_zeta(o);
        if (*kdv) return cmd_kdv(o);
        if (*verify) return cmd_verify(o);
    } catch (const Error& e) {
        std::cerr << "error " << e.code() << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error config: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}
